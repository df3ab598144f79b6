//! Command dispatch and reporting.

use std::fmt::Write as _;
use std::path::Path;

use csl_core::elimination::{eliminate_variable, IdealPresentation};
use csl_core::weierstrass::DEFAULT_SEARCH_BOUND;
use csl_core::{
    arc_curve_select, curve_select, jet_selection_problem, regular_order, verify_certificate, wdivide, wprepare, CurveSelOptions, Error,
    Field, JetRing, Point, Ring, TruncatedArcPoint, TruncatedSeries, VerificationReport,
};

use crate::build::{self, base_vars, eval, jet_vars, ring_for};
use crate::document::{CertificateDocument, Provenance};
use crate::parser::{parse_script, Command, DeclKind, Expr, Script};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub search_bound: u64,
    pub max_steps: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { search_bound: DEFAULT_SEARCH_BOUND, max_steps: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// The command's artifact: a certificate document or a textual report.
    pub output: String,
    /// Diagnostics for a human reader.
    pub notes: String,
    pub exit_code: i32,
    pub document: Option<CertificateDocument>,
}

impl Outcome {
    fn ok(output: String, notes: String) -> Self {
        Outcome { output, notes, exit_code: 0, document: None }
    }

    fn failure(e: &Error, command: &str) -> Self {
        let code = if e.is_input_error() { 2 } else { 1 };
        Outcome { output: String::new(), notes: format!("error [{}] in `{command}`: {e}\n", module_of(e)), exit_code: code, document: None }
    }
}

/// The module an error originates from, for reporting.
pub fn module_of(e: &Error) -> &'static str {
    match e {
        Error::ZIsEverything { .. } | Error::BudgetExhausted { .. } => "elimination",
        Error::NotRegular { .. } | Error::SearchExhausted { .. } | Error::ZeroSeries { .. } => "weierstrass",
        Error::PointNotOnN { .. }
        | Error::NoBranchAvoidsZ { .. }
        | Error::AlgebraicExtensionRequired { .. }
        | Error::TruncationTooCoarse(_)
        | Error::RootSearchLimit(_)
        | Error::NoBaseDirection => "curvesel",
        Error::GammaNotOnN { .. } | Error::NotAJet { .. } => "jets",
        Error::InvalidInput(_) => "cli-io",
        _ => "core-algebra",
    }
}

fn command_text(s: &Script) -> String {
    match &s.command {
        Command::CurveSel { n, z, a, order } => format!("curvesel {n} {z} {a} order {order}"),
        Command::ArcSel { x, n_extra, z_extra, gamma, level, order } => {
            format!("arcsel {x} {n_extra} {z_extra} {gamma} level {level} order {order}")
        }
        Command::WDiv { .. } => "wdiv".into(),
        Command::WPrep { .. } => "wprep".into(),
        Command::Eliminate { ideal, .. } => format!("eliminate {ideal}"),
        Command::Jets { ideal, order } => format!("jets {ideal} order {order}"),
        Command::Verify { path } => format!("verify {path}"),
    }
}

/// Parses and runs a script. Parse errors exit with status 2.
pub fn run_script(text: &str, opts: RunOptions) -> Outcome {
    match parse_script(text) {
        Ok(s) => run_command(&s, opts),
        Err(e) => Outcome { output: String::new(), notes: format!("parse error at {e}\n"), exit_code: 2, document: None },
    }
}

pub fn run_command(s: &Script, opts: RunOptions) -> Outcome {
    let cmd = command_text(s);
    let result = match &s.command {
        Command::CurveSel { .. } => curvesel(s, opts),
        Command::ArcSel { .. } => arcsel(s, opts),
        Command::WDiv { g, f, var } => wdiv(s, g, f, *var),
        Command::WPrep { f, var } => wprep(s, f, *var),
        Command::Eliminate { ideal, var } => eliminate(s, ideal, *var),
        Command::Jets { ideal, order } => jets(s, ideal, *order),
        Command::Verify { path } => return verify(Path::new(path)),
    };
    result.unwrap_or_else(|e| Outcome::failure(&e, &cmd))
}

fn ideal_exprs<'a>(s: &'a Script, name: &str) -> &'a [Expr] {
    s.ideal(name)
}

fn evals(exprs: &[Expr], ring: Ring, map: &build::VarMap) -> csl_core::Result<Vec<TruncatedSeries>> {
    exprs.iter().map(|e| eval(e, ring, map)).collect()
}

/// `N`, `Z` and the base point of a `curvesel` script, in a ring wide enough to hold every
/// generator exactly.
pub fn curvesel_problem(s: &Script) -> csl_core::Result<(IdealPresentation, IdealPresentation, Point)> {
    let Command::CurveSel { n, z, a, .. } = &s.command else { return Err(Error::InvalidInput("not a curvesel script".into())) };
    let field = build::field(&s.ring.field)?;
    let nv = s.ring.vars.len();
    let (ne, ze) = (ideal_exprs(s, n), ideal_exprs(s, z));
    let ring = ring_for(field, nv, s.ring.trunc, &ne.iter().chain(ze).collect::<Vec<_>>())?;
    let map = base_vars(nv);
    let n = IdealPresentation::new(ring, evals(ne, ring, &map)?)?;
    let z = IdealPresentation::new(ring, evals(ze, ring, &map)?)?;
    let Some(DeclKind::Point(coords)) = s.decl(a) else { unreachable!("parser checks declarations") };
    let a = build::point(field, coords)?;
    if a.dim() != nv {
        return Err(Error::DimensionMismatch { expected: nv, got: a.dim() });
    }
    Ok((n, z, a))
}

/// The jet ring, extra equations and `gamma` of an `arcsel` script.
pub fn arcsel_problem(s: &Script) -> csl_core::Result<(JetRing, Vec<TruncatedSeries>, Vec<TruncatedSeries>, TruncatedArcPoint)> {
    let Command::ArcSel { x, n_extra, z_extra, gamma, level, .. } = &s.command else {
        return Err(Error::InvalidInput("not an arcsel script".into()));
    };
    let field = build::field(&s.ring.field)?;
    let nv = s.ring.vars.len();
    let xe = ideal_exprs(s, x);
    let base_ring = ring_for(field, nv, s.ring.trunc, &xe.iter().collect::<Vec<_>>())?;
    let base = evals(xe, base_ring, &base_vars(nv))?;
    let jr = JetRing::new(&base, nv, *level)?;
    let (ne, ze) = (ideal_exprs(s, n_extra), ideal_exprs(s, z_extra));
    let ring = ring_for(field, jr.num_coordinates(), jr.ring.trunc, &ne.iter().chain(ze).collect::<Vec<_>>())?;
    let map = jet_vars(nv, *level);
    let nx = evals(ne, ring, &map)?.into_iter().filter(|g| !g.is_zero()).collect();
    let zx = evals(ze, ring, &map)?.into_iter().filter(|g| !g.is_zero()).collect();
    let Some(DeclKind::Arc(comps)) = s.decl(gamma) else { unreachable!("parser checks declarations") };
    if comps.len() != nv {
        return Err(Error::DimensionMismatch { expected: nv, got: comps.len() });
    }
    let tring = ring_for(field, 1, *level, &comps.iter().collect::<Vec<_>>())?;
    let mut jet = Vec::with_capacity(nv);
    for c in comps {
        let p = eval(c, tring, &|_, _| Ok(0))?;
        jet.push((0..=*level).map(|j| p.coeff(&csl_core::ExponentVector::var(0, j as u32))).collect());
    }
    let gamma = TruncatedArcPoint::new(&jr, jet)?;
    Ok((jr, nx, zx, gamma))
}

fn provenance(s: &Script, vars: Vec<String>, level: Option<usize>, opts: RunOptions) -> Provenance {
    Provenance {
        command: command_text(s),
        vars,
        level,
        search_bound: opts.search_bound,
        max_steps: opts.max_steps,
        script: s.source.lines().map(str::to_string).collect(),
    }
}

fn selection_options(order: usize, opts: RunOptions) -> CurveSelOptions {
    CurveSelOptions { ts: Some(order), search_bound: opts.search_bound, max_steps: opts.max_steps, ..CurveSelOptions::default() }
}

fn certified(doc: CertificateDocument, report: &VerificationReport, mut notes: String) -> Outcome {
    notes.push_str(&doc.describe_arc());
    let _ = writeln!(notes, "self-check: {}", if report.passed() { "pass" } else { "FAIL" });
    Outcome { output: doc.serialize(), notes, exit_code: if report.passed() { 0 } else { 1 }, document: Some(doc) }
}

fn curvesel(s: &Script, opts: RunOptions) -> csl_core::Result<Outcome> {
    let Command::CurveSel { order, .. } = s.command else { unreachable!() };
    let (n, z, a) = curvesel_problem(s)?;
    let (arc, cert) = curve_select(&n, &z, &a, selection_options(order, opts))?;
    let report = verify_certificate(&n, &z, &a, &arc, &cert);
    let doc = CertificateDocument::from_result(&arc, &cert, provenance(s, s.ring.vars.clone(), None, opts));
    let notes = format!("arc of order {} with ramification {}, witness Z[{}]\n", cert.ts, arc.ramification, cert.witness_index);
    Ok(certified(doc, &report, notes))
}

fn arcsel(s: &Script, opts: RunOptions) -> csl_core::Result<Outcome> {
    let Command::ArcSel { level, order, .. } = s.command else { unreachable!() };
    let (jr, nx, zx, gamma) = arcsel_problem(s)?;
    let (family, arc, cert) = arc_curve_select(&jr, &nx, &zx, &gamma, selection_options(order, opts))?;
    let (n, z, a) = jet_selection_problem(&jr, &nx, &zx, &gamma)?;
    let report = verify_certificate(&n, &z, &a, &arc, &cert);
    let names = jr.names(&s.ring.vars);
    let doc = CertificateDocument::from_result(&arc, &cert, provenance(s, names, Some(level), opts));
    let mut notes = format!("family of level-{level} jets, order {}, witness Z[{}]\n", cert.ts, cert.witness_index);
    let special = family.special();
    for (i, v) in s.ring.vars.iter().enumerate() {
        let coeffs: Vec<String> = special[i].iter().map(ToString::to_string).collect();
        let _ = writeln!(notes, "  {v}(t, 0) coefficients: {}", coeffs.join(" "));
    }
    Ok(certified(doc, &report, notes))
}

fn single(s: &Script, exprs: &[&Expr]) -> csl_core::Result<(Ring, Vec<TruncatedSeries>)> {
    let field = build::field(&s.ring.field)?;
    let nv = s.ring.vars.len();
    let wide = ring_for(field, nv, s.ring.trunc, exprs)?;
    let map = base_vars(nv);
    let out = exprs.iter().map(|e| eval(e, wide, &map).map(|p| p.retruncate(s.ring.trunc))).collect::<csl_core::Result<_>>()?;
    Ok((wide.with_trunc(s.ring.trunc), out))
}

fn field_of(s: &Script) -> Field {
    build::field(&s.ring.field).unwrap_or(Field::Rational)
}

fn wdiv(s: &Script, g: &Expr, f: &Expr, var: usize) -> csl_core::Result<Outcome> {
    let (_, p) = single(s, &[g, f])?;
    let names = &s.ring.vars;
    let div = wdivide(&p[0], &p[1], var)?;
    let recomposed = div.quotient.mul(&p[1])?.add(&div.remainder)?;
    let ok = recomposed.sub(&p[0])?.is_zero() && div.remainder.degree_in(var).is_none_or(|d| (d as usize) < div.k);
    let mut out = String::new();
    let _ = writeln!(out, "order {} in {}", div.k, names[var]);
    let _ = writeln!(out, "quotient  {}", div.quotient.render(names));
    let _ = writeln!(out, "remainder {}", div.remainder.render(names));
    let _ = writeln!(out, "check g = q f + r mod m^{}: {}", s.ring.trunc + 1, if ok { "pass" } else { "FAIL" });
    Ok(Outcome { exit_code: if ok { 0 } else { 1 }, ..Outcome::ok(out, String::new()) })
}

fn wprep(s: &Script, f: &Expr, var: usize) -> csl_core::Result<Outcome> {
    let (_, p) = single(s, &[f])?;
    let names = &s.ring.vars;
    let prep = wprepare(&p[0], var)?;
    let check = prep.check(&p[0]);
    let mut out = String::new();
    let _ = writeln!(out, "order {} in {}", prep.order_k, names[var]);
    let _ = writeln!(out, "unit  {}", prep.unit.render(names));
    let _ = writeln!(out, "wpoly {}", prep.wpoly_series().render(names));
    let _ = writeln!(out, "check f = u P: {}", check.as_ref().map_or_else(|e| format!("FAIL ({e})"), |_| "pass".into()));
    Ok(Outcome { exit_code: if check.is_ok() { 0 } else { 1 }, ..Outcome::ok(out, String::new()) })
}

fn eliminate(s: &Script, ideal: &str, var: usize) -> csl_core::Result<Outcome> {
    let exprs: Vec<&Expr> = s.ideal(ideal).iter().collect();
    let (ring, gens) = single(s, &exprs)?;
    let names = &s.ring.vars;
    let ideal = IdealPresentation::new(ring, gens)?;
    // the first generator regular in the variable serves as P
    let idx = ideal
        .generators()
        .iter()
        .position(|g| regular_order(g, var).is_ok())
        .ok_or(Error::NotRegular { var })?;
    let p = &ideal.generators()[idx];
    let prep = wprepare(p, var)?;
    let elim = eliminate_variable(&ideal, &prep, Some(idx))?;
    let wp = prep.wpoly_series();
    let all_ok = elim.certificates.iter().all(|c| c.check(&wp));
    let mut out = String::new();
    let _ = writeln!(out, "eliminating {} with generator {idx}: P = {}", names[var], wp.render(names));
    if elim.image.is_empty() {
        let _ = writeln!(out, "image: no generators (the whole base)");
    }
    for c in &elim.certificates {
        let _ = writeln!(out, "from generator {}: {}", c.source, c.resultant.render(names));
        let _ = writeln!(out, "  A = {}", c.cofactor_p.render(names));
        let _ = writeln!(out, "  B = {}", c.cofactor_r.render(names));
        let _ = writeln!(out, "  check Res = A P + B r: {}", if c.check(&wp) { "pass" } else { "FAIL" });
    }
    let notes = if elim.truncation_caveat { "some resultant vanished only modulo the truncation\n".to_string() } else { String::new() };
    Ok(Outcome { exit_code: if all_ok { 0 } else { 1 }, ..Outcome::ok(out, notes) })
}

fn jets(s: &Script, ideal: &str, order: usize) -> csl_core::Result<Outcome> {
    let field = field_of(s);
    let nv = s.ring.vars.len();
    let xe = s.ideal(ideal);
    let ring = ring_for(field, nv, s.ring.trunc, &xe.iter().collect::<Vec<_>>())?;
    let base = evals(xe, ring, &base_vars(nv))?;
    let jr = JetRing::new(&base, nv, order)?;
    let names = jr.names(&s.ring.vars);
    let mut out = String::new();
    let h = base.len().max(1);
    for (k, e) in jr.equations()?.iter().enumerate() {
        let _ = writeln!(out, "F{}_{} = {}", k % h, k / h, e.render(&names));
    }
    Ok(Outcome::ok(out, String::new()))
}

/// Re-checks a certificate document against the script echoed inside it.
pub fn verify_document(doc: &CertificateDocument) -> csl_core::Result<VerificationReport> {
    let script = parse_script(&doc.script.join("\n")).map_err(|e| Error::InvalidInput(format!("echoed script: {e}")))?;
    let (n, z, a) = match &script.command {
        Command::CurveSel { .. } => curvesel_problem(&script)?,
        Command::ArcSel { .. } => {
            let (jr, nx, zx, gamma) = arcsel_problem(&script)?;
            jet_selection_problem(&jr, &nx, &zx, &gamma)?
        }
        _ => return Err(Error::InvalidInput("echoed script does not select a curve".into())),
    };
    let (arc, cert) = doc.to_result().map_err(Error::InvalidInput)?;
    let mut report = verify_certificate(&n, &z, &a, &arc, &cert);
    let header_ok = doc.command == command_text(&script)
        && doc.field.to_field().ok() == Some(n.ring().field)
        && cert.trunc == n.ring().trunc
        && arc.ring().field == n.ring().field;
    report.checks.insert(
        0,
        csl_core::curvesel::Check { name: "header".into(), passed: header_ok, detail: format!("command `{}`", doc.command) },
    );
    Ok(report)
}

fn verify(path: &Path) -> Outcome {
    let cmd = format!("verify {}", path.display());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::failure(&Error::InvalidInput(format!("cannot read {}: {e}", path.display())), &cmd),
    };
    let doc = match CertificateDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => return Outcome::failure(&Error::InvalidInput(e.to_string()), &cmd),
    };
    match verify_document(&doc) {
        Ok(report) => {
            let mut out = String::new();
            for c in &report.checks {
                let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(out, "{}", if report.passed() { "certificate verified" } else { "certificate REJECTED" });
            Outcome { exit_code: if report.passed() { 0 } else { 1 }, ..Outcome::ok(out, String::new()) }
        }
        Err(e) => Outcome::failure(&e, &cmd),
    }
}
