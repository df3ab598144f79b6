//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use csl_core::{Coeff, ExponentVector, Field, Ring, TruncatedSeries};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus(sub: &str) -> Vec<(String, String)> {
    let dir = corpus_dir().join(sub);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "csl"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub fn script(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).expect("corpus script")
}

/// Dense term map, for schoolbook arithmetic independent of the series type.
pub type Terms = BTreeMap<Vec<u32>, Coeff>;

pub fn dense(s: &TruncatedSeries) -> Terms {
    let n = s.num_vars();
    s.terms().map(|(e, c)| ((0..n).map(|v| e.exponent(v)).collect(), c.clone())).filter(|(_, c)| !c.is_zero()).collect()
}

/// Product of two series modulo `m^{trunc+1}`, term by term.
pub fn naive_mul(a: &Terms, b: &Terms, trunc: usize, field: Field) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().map(|x| *x as usize).sum::<usize>() > trunc {
                continue;
            }
            let slot = out.entry(e).or_insert_with(|| field.zero());
            *slot = &*slot + &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn naive_add(a: &Terms, b: &Terms, field: Field) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(|| field.zero());
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn truncate(a: &Terms, trunc: usize) -> Terms {
    a.iter().filter(|(e, _)| e.iter().map(|x| *x as usize).sum::<usize>() <= trunc).map(|(e, c)| (e.clone(), c.clone())).collect()
}

/// A random sparse polynomial with terms of degree in `min_deg..=trunc`.
pub fn random_series(rng: &mut ChaCha8Rng, ring: Ring, min_deg: usize, max_terms: usize) -> TruncatedSeries {
    let k = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..k {
        let deg = rng.gen_range(min_deg..=ring.trunc.max(min_deg));
        let mut e = vec![0u32; ring.num_vars];
        for _ in 0..deg {
            e[rng.gen_range(0..ring.num_vars)] += 1;
        }
        let c = rng.gen_range(-9i64..=9);
        terms.push((ExponentVector::from_dense(&e), ring.field.from_i64(c)));
    }
    TruncatedSeries::from_terms(ring, terms).expect("terms fit the ring")
}

/// Order of a univariate series in `s`.
pub fn s_order(s: &TruncatedSeries) -> Option<usize> {
    s.order()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm_upto(k: usize) -> usize {
    (2..=k).fold(1, |acc, j| acc / gcd(acc, j) * j)
}
