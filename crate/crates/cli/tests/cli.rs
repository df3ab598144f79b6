mod common;

use std::process::Command;

use common::{corpus, corpus_dir, script};
use csl_cli::document::{DocField, DocStep, Term};
use csl_cli::parser::Rational;
use csl_cli::{parse_script, run_script, CertificateDocument, RunOptions};
use num_bigint::BigInt;
use proptest::prelude::*;

fn csl(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    use std::io::Write;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_csl"));
    cmd.args(args).stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped()).stderr(std::process::Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let input = stdin.unwrap_or("").to_string();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn every_corpus_script_parses_and_succeeds() {
    for (name, text) in corpus("") {
        let out = run_script(&text, RunOptions::default());
        assert_eq!(out.exit_code, 0, "{name}: {}", out.notes);
    }
}

#[test]
fn exit_codes() {
    let cusp = corpus_dir().join("cusp.csl");
    let (code, out, _) = csl(&["--quiet", "--script", cusp.to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("csl-certificate 1\n"));

    let zn = corpus_dir().join("zn").join("cusp.csl");
    let (code, _, err) = csl(&["--script", zn.to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert!(err.contains("[elimination]"), "{err}");

    let (code, _, err) = csl(&[], Some("ideal N = x^2\n"));
    assert_eq!(code, 2);
    assert!(err.contains("1:1"), "{err}");

    let (code, _, _) = csl(&[], Some("ring F 100 [x] trunc 2\nideal N = x\npoint a = (0)\ncurvesel N N a order 2\n"));
    assert_eq!(code, 2, "composite modulus is an input error");

    let (code, _, _) = csl(&[], Some("ring Q[x,y] trunc 4\nideal N = x^2 - y^3\npoint a = (0)\ncurvesel N N a order 2\n"));
    assert_eq!(code, 2, "point of the wrong dimension");

    let (code, _, _) = csl(&[], Some("ring Q[x] trunc 2\nverify /nonexistent/cert.txt\n"));
    assert_eq!(code, 2);

    let (code, _, err) = csl(&[], Some("ring Q[x,y] trunc 4\nideal N = x^2 - y^3\npoint a = (1,0)\nideal Z = x\ncurvesel N Z a order 4\n"));
    assert_eq!(code, 1);
    assert!(err.contains("does not satisfy"), "{err}");
}

#[test]
fn out_flag_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cusp.cert");
    let cusp = corpus_dir().join("cusp.csl");
    let (code, out, _) = csl(&["--quiet", "--script", cusp.to_str().unwrap(), "--out", cert.to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let verify = format!("ring Q[x] trunc 1\nverify {}\n", cert.display());
    let (code, out, _) = csl(&[], Some(&verify));
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("certificate verified"));

    // a tampered arc is rejected
    let text = std::fs::read_to_string(&cert).unwrap();
    std::fs::write(&cert, text.replacen("  3 1 1", "  3 2 1", 1)).unwrap();
    let (code, out, _) = csl(&[], Some(&verify));
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));

    // as is an edited script echo
    std::fs::write(&cert, text.replace("| ideal Z = x, y", "| ideal Z = y")).unwrap();
    let (code, _, _) = csl(&[], Some(&verify));
    assert_eq!(code, 1);
}

#[test]
fn search_bound_and_max_steps_are_recorded() {
    let (code, out, _) = csl(&["--quiet", "--search-bound", "7", "--max-steps", "5"], Some(&script("cusp.csl")));
    assert_eq!(code, 0);
    assert!(out.contains("search-bound 7\nmax-steps 5\n"));
}

#[test]
fn reports_for_algebra_commands() {
    let out = run_script(&script("eliminate.csl"), RunOptions::default());
    assert!(out.output.contains("-x2^3"), "{}", out.output);
    let out = run_script(&script("jets_equations.csl"), RunOptions::default());
    assert_eq!(out.output.lines().count(), 4);
    assert!(out.output.contains("F0_1 = 2*x_0*x_1 - 3*y_0^2*y_1"), "{}", out.output);
    let out = run_script(&script("wdiv.csl"), RunOptions::default());
    assert!(out.output.contains("pass"));
}

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1..u64::MAX).prop_map(|(n, d)| Rational { num: BigInt::from(n), den: BigInt::from(d) })
}

fn term() -> impl Strategy<Value = Term> {
    (0..64usize, any::<i128>(), 1..u64::MAX).prop_map(|(exp, n, d)| Term { exp, num: BigInt::from(n), den: BigInt::from(d) })
}

fn document() -> impl Strategy<Value = CertificateDocument> {
    let header = (
        "[a-z][a-z0-9 ]{0,30}",
        prop_oneof![Just(DocField::Rational), (2u64..1 << 40).prop_map(DocField::Prime)],
        prop::collection::vec("[a-z][a-z0-9_]{0,5}", 0..5),
        (0..100usize, 0..100usize, prop::option::of(0..10usize), any::<u64>(), 0..64usize),
        prop::collection::vec("[^\n\r]{0,40}", 0..6),
    );
    let body = (
        prop::collection::vec(rational(), 0..5),
        1..6usize,
        prop::collection::vec(prop::collection::vec(term(), 0..6), 0..5),
        prop::collection::vec(prop::option::of(0..200usize), 0..5),
        (0..10usize, prop::collection::vec(term(), 0..6)),
        prop::collection::vec((0..8usize, 0..8usize, prop::collection::vec(rational(), 0..4)), 0..4),
        (prop::collection::vec(0..8usize, 0..4), prop::collection::vec(rational(), 0..4), 0..300usize),
    );
    (header, body).prop_map(|((command, field, vars, nums, script), (point, ramification, components, vanishing, w, steps, tail))| {
        CertificateDocument {
            version: 1,
            command,
            field,
            vars,
            trunc: nums.0,
            ts: nums.1,
            level: nums.2,
            search_bound: nums.3,
            max_steps: nums.4,
            script,
            point,
            ramification,
            components,
            vanishing,
            witness_index: w.0,
            witness: w.1,
            steps: steps.into_iter().map(|(var, degree, column)| DocStep { var, degree, column }).collect(),
            base_vars: tail.0,
            line: tail.1,
            working_trunc: tail.2,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn document_round_trip(doc in document()) {
        let text = doc.serialize();
        let back = CertificateDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_script(&text);
    }

    #[test]
    fn parser_survives_mutations(idx in 0usize..17, pos in any::<prop::sample::Index>(), junk in "[\\[\\](),=+*/^a-z0-9 \n-]{0,4}", cut in 0usize..6) {
        let scripts = corpus("");
        let text = &scripts[idx % scripts.len()].1;
        let mut at = pos.index(text.len() + 1);
        while !text.is_char_boundary(at) {
            at -= 1;
        }
        let end = (at + cut).min(text.len());
        let mutated = format!("{}{}{}", &text[..at], junk, &text[end..]);
        if let Err(e) = parse_script(&mutated) {
            prop_assert!(e.line >= 1 && e.col >= 1);
            prop_assert!(!e.expected.is_empty());
        }
    }

    #[test]
    fn documents_reject_garbage_without_panicking(text in "\\PC{0,200}") {
        let _ = CertificateDocument::parse(&text);
    }
}
