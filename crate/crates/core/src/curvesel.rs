//! Curve selection: an arc through a point of `N` whose generic point avoids `Z`.
//!
//! The point is moved to the origin and `N` is projected along a chain of Weierstrass
//! polynomials. A line in the base avoiding the image of `Z` is lifted back up the chain
//! one variable at a time by Newton-Puiseux, branching over roots depth-first.
//!
//! The chain is computed at a working truncation `W`. Every series carries the precision to
//! which it is actually known, so when the lift runs out of precision the whole search is
//! restarted at `2W`; the selected branch does not depend on `W`.

use crate::coeff::Coeff;
use crate::elimination::{project_chain, ChainOptions, IdealPresentation, ProjectionChain};
use crate::error::{Error, Result};
use crate::linear::{translate_point, Point};
use crate::puiseux::{positive_valuation_roots, PuiseuxRoot};
use crate::series::{Ring, TruncatedSeries};
use crate::useries::{USeries, EXACT};
use crate::weierstrass::{search_vectors, DEFAULT_SEARCH_BOUND};

/// Upper bound for the default arc truncation order.
pub const DEFAULT_TS_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSelOptions {
    /// Arc truncation order; `None` picks `2 T (product of Weierstrass degrees)`, capped.
    pub ts: Option<usize>,
    pub search_bound: u64,
    pub max_steps: usize,
    /// How many base lines are tried before giving up.
    pub line_attempts: usize,
    /// Largest working truncation; `None` means `4 (T_s + 1)`.
    pub max_working_trunc: Option<usize>,
}

impl Default for CurveSelOptions {
    fn default() -> Self {
        CurveSelOptions { ts: None, search_bound: DEFAULT_SEARCH_BOUND, max_steps: 32, line_attempts: 4, max_working_trunc: None }
    }
}

/// `s -> alpha(s)`, each component known modulo `s^{T_s+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub components: Vec<TruncatedSeries>,
    /// The parameter `s` relates to the base line's parameter `u` by `u = s^e`.
    pub ramification: usize,
}

impl Arc {
    pub fn new(components: Vec<TruncatedSeries>, ramification: usize) -> Result<Self> {
        let ring = components.first().map(TruncatedSeries::ring).ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        if ring.num_vars != 1 {
            return Err(Error::MismatchedRing("arc components must be univariate".into()));
        }
        for c in &components {
            ring.check(&c.ring())?;
        }
        Ok(Arc { components, ramification: ramification.max(1) })
    }

    pub fn ring(&self) -> Ring {
        self.components[0].ring()
    }

    pub fn ts(&self) -> usize {
        self.ring().trunc
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn origin(&self) -> Vec<Coeff> {
        self.components.iter().map(TruncatedSeries::constant_term).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.components.iter().all(|c| c.order().is_none_or(|_| c.degree() == Some(0)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDigest {
    pub var: usize,
    pub degree: usize,
    /// Column of the regularizing change for `var`; the unit vector when none was needed.
    pub column: Vec<Coeff>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDigest {
    pub steps: Vec<StepDigest>,
    pub base_vars: Vec<usize>,
    pub line: Vec<Coeff>,
    pub working_trunc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub base_point: Point,
    /// Order of each `N`-generator along the arc; `None` when it exceeds `T_s`.
    pub vanishing_orders: Vec<Option<usize>>,
    pub witness_index: usize,
    pub witness: TruncatedSeries,
    pub chain: ChainDigest,
    pub trunc: usize,
    pub ts: usize,
}

fn digest(chain: &ProjectionChain, line: &[Coeff], working_trunc: usize) -> ChainDigest {
    ChainDigest {
        steps: chain
            .steps
            .iter()
            .map(|s| StepDigest { var: s.var, degree: s.factorization.order_k, column: s.change.column(s.var) })
            .collect(),
        base_vars: chain.final_base_vars.clone(),
        line: line.to_vec(),
        working_trunc,
    }
}

/// Integer directions `v` over the base variables with `g_{k0}(v) != 0`, where `g` is the
/// generator of least order in `zr` and `g_{k0}` its initial form, in search order.
pub fn line_candidates(zr: &IdealPresentation, base_vars: &[usize], bound: u64, limit: usize) -> Result<Vec<Vec<Coeff>>> {
    let ring = zr.ring();
    let gi = zr.min_order_generator().ok_or(Error::ZIsEverything { trunc: ring.trunc })?;
    if base_vars.is_empty() {
        return Err(Error::NoBaseDirection);
    }
    let form = zr.generators()[gi].initial_form().expect("nonzero generator");
    let field = ring.field;
    let mut out = Vec::new();
    search_vectors(base_vars.len(), bound, |v| {
        let mut point = vec![field.zero(); ring.num_vars];
        for (slot, x) in base_vars.iter().zip(v) {
            point[*slot] = field.from_i64(*x);
        }
        // the form is a polynomial: its terms all have degree k0 <= T
        let value = form.retruncate(ring.trunc).evaluate(&point).or_else(|_| exact_value(&form, &point));
        if value.is_ok_and(|c| !c.is_zero()) {
            out.push(v.iter().map(|x| field.from_i64(*x)).collect());
        }
        out.len() >= limit
    });
    if out.is_empty() {
        return Err(Error::SearchExhausted { bound });
    }
    Ok(out)
}

/// Evaluates the stored terms of a series, ignoring whether it was truncated.
fn exact_value(f: &TruncatedSeries, point: &[Coeff]) -> Result<Coeff> {
    let mut total = f.field().zero();
    for (e, c) in f.terms() {
        let mut term = c.clone();
        for (v, k) in e.pairs() {
            term = &term * &point[*v].pow(*k);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// First direction from [`line_candidates`].
pub fn select_line(zr: &IdealPresentation, base_vars: &[usize], bound: u64) -> Result<Vec<Coeff>> {
    Ok(line_candidates(zr, base_vars, bound, 1)?.remove(0))
}

/// Roots of positive valuation of a monic `P(y) = sum coeffs[i] y^i` whose coefficients are
/// series in `s`, each known to at least `T_s + 1` terms after reparametrization.
pub fn puiseux_lift(coeffs: &[USeries], ts: usize) -> Result<Vec<PuiseuxRoot>> {
    let cap = 4 * (ts + 1);
    let out = positive_valuation_roots(coeffs, cap)?;
    if out.roots.is_empty() {
        if let Some(poly) = out.irrational.first() {
            return Err(Error::AlgebraicExtensionRequired { poly: poly.clone() });
        }
    }
    if out.roots.iter().any(|r| r.series.prec() < ts + 1) {
        return Err(Error::TruncationTooCoarse(format!("cannot separate the branches to order {ts}")));
    }
    Ok(out.roots)
}

enum Outcome {
    Found { arc: Vec<USeries>, ramification: usize, witness: usize },
    Shortfall,
    Failed,
}

struct Lift<'a> {
    chain: &'a ProjectionChain,
    n: &'a [TruncatedSeries],
    z: &'a [TruncatedSeries],
    ts: usize,
    cap: usize,
    deepest: (usize, String),
    irrational: Vec<String>,
}

impl Lift<'_> {
    fn fail(&mut self, level: usize, detail: String) -> Result<Outcome> {
        if level >= self.deepest.0 {
            self.deepest = (level, detail);
        }
        Ok(Outcome::Failed)
    }

    /// Lifts through steps `< step`, the arc being in the coordinates after step `step - 1`.
    fn run(&mut self, step: usize, arc: Vec<USeries>, ram: usize) -> Result<Outcome> {
        let level = self.chain.steps.len() - step;
        if step == 0 {
            return self.leaf(arc, ram, level);
        }
        let st = &self.chain.steps[step - 1];
        let k = st.factorization.order_k;
        let mut q: Vec<USeries> = st.factorization.wpoly[..k].iter().map(|c| USeries::pullback(c, &arc, self.cap)).collect();
        q.push(USeries::constant(arc[0].field().one()));
        let roots = positive_valuation_roots(&q, self.cap)?;
        self.irrational.extend(roots.irrational);
        if roots.roots.is_empty() {
            return self.fail(level, format!("no root in the coefficient field at step {}", step - 1));
        }
        for root in roots.roots {
            let e = root.ramification;
            let mut next: Vec<USeries> = arc.iter().map(|c| c.ramify(e).truncate(self.cap)).collect();
            next[st.var] = root.series.truncate(self.cap);
            // branches of P off the image of N are discarded
            let off = st.n_ideal.generators().iter().any(|g| !USeries::pullback(g, &next, self.cap).is_zero_at_prec());
            if off {
                self.fail(level, format!("branch leaves N at step {}", step - 1))?;
                continue;
            }
            let moved = apply(st.change.matrix(), &next);
            match self.run(step - 1, moved, ram * e)? {
                Outcome::Failed => continue,
                other => return Ok(other),
            }
        }
        Ok(Outcome::Failed)
    }

    /// Takes the known coefficients of every component as exact and checks the result
    /// against the exact generators; a failure with too little precision asks for more.
    fn leaf(&mut self, arc: Vec<USeries>, ram: usize, level: usize) -> Result<Outcome> {
        let need = self.ts + 1;
        let precise = arc.iter().all(|c| c.prec() >= need);
        let guess: Vec<USeries> = arc.iter().map(|c| USeries::from_coeffs(c.field(), c.coeffs().to_vec(), EXACT)).collect();
        for g in self.n {
            let p = USeries::pullback(g, &guess, self.cap);
            if p.valuation().is_some_and(|v| v < need) {
                return if precise { self.fail(level, "lifted arc does not satisfy N".into()) } else { Ok(Outcome::Shortfall) };
            }
        }
        for (j, g) in self.z.iter().enumerate() {
            if USeries::pullback(g, &guess, self.cap).valuation().is_some_and(|v| v < need) {
                return Ok(Outcome::Found { arc: guess, ramification: ram, witness: j });
            }
        }
        if !precise {
            return Ok(Outcome::Shortfall);
        }
        self.fail(level, format!("every generator of Z vanishes to order {}", self.ts))
    }
}

fn apply(matrix: &[Vec<Coeff>], arc: &[USeries]) -> Vec<USeries> {
    matrix
        .iter()
        .map(|row| row.iter().zip(arc).fold(USeries::zero(arc[0].field()), |acc, (a, c)| acc.add(&c.scale(a))))
        .collect()
}

fn exact_generators(ideal: &IdealPresentation) -> Result<()> {
    if ideal.generators().iter().all(TruncatedSeries::is_exact) {
        Ok(())
    } else {
        Err(Error::NotPolynomial)
    }
}

/// Moves `a` to the origin, keeping the generators exact.
fn translated_exact(ideal: &IdealPresentation, a: &Point) -> Result<Vec<TruncatedSeries>> {
    let deg = ideal.generators().iter().filter_map(TruncatedSeries::degree).max().unwrap_or(0);
    let trunc = deg.max(ideal.ring().trunc);
    ideal.generators().iter().map(|g| translate_point(&g.retruncate(trunc), a)).collect()
}

/// Moves `a` to the origin and re-expresses the generators at truncation `w`.
fn translated(ideal: &IdealPresentation, a: &Point, w: usize) -> Result<IdealPresentation> {
    let gens = translated_exact(ideal, a)?.iter().map(|t| t.retruncate(w)).collect();
    IdealPresentation::new(ideal.ring().with_trunc(w), gens)
}

/// An arc through `a` on `N` with some `Z`-generator nonvanishing along it, with a
/// certificate of both facts at truncation order `T_s`.
pub fn curve_select(n: &IdealPresentation, z: &IdealPresentation, a: &Point, opts: CurveSelOptions) -> Result<(Arc, Certificate)> {
    let ring = n.ring();
    ring.check(&z.ring())?;
    if a.dim() != ring.num_vars {
        return Err(Error::DimensionMismatch { expected: ring.num_vars, got: a.dim() });
    }
    exact_generators(n)?;
    exact_generators(z)?;
    for (i, g) in n.generators().iter().enumerate() {
        if !g.evaluate(&a.coordinates)?.is_zero() {
            return Err(Error::PointNotOnN { index: i });
        }
    }
    let chain_opts = ChainOptions { budget: opts.max_steps, search_bound: opts.search_bound };
    let ts = match opts.ts {
        Some(ts) => ts,
        None => {
            // only the Weierstrass degrees matter here; the unit ideal keeps the Z side trivial
            let unit = IdealPresentation::new(ring, vec![TruncatedSeries::one(ring)])?;
            let chain = project_chain(&translated(n, a, ring.trunc)?, &unit, chain_opts)?;
            let prod: usize = chain.weierstrass_degrees().iter().product();
            (2 * ring.trunc.max(1) * prod).min(DEFAULT_TS_CAP)
        }
    };
    let max_w = opts.max_working_trunc.unwrap_or(4 * (ts + 1)).max(ts + 1);
    let mut w = (ts + 1).max(ring.trunc);
    loop {
        match attempt(n, z, a, ts, w, chain_opts, &opts)? {
            Some(found) => return Ok(found),
            None if w >= max_w => {
                return Err(Error::TruncationTooCoarse(format!("working truncation {w} does not determine the arc to order {ts}")))
            }
            None => w = (2 * w).min(max_w),
        }
    }
}

/// One search at working truncation `w`; `None` asks for more precision.
fn attempt(
    n: &IdealPresentation,
    z: &IdealPresentation,
    a: &Point,
    ts: usize,
    w: usize,
    chain_opts: ChainOptions,
    opts: &CurveSelOptions,
) -> Result<Option<(Arc, Certificate)>> {
    let field = n.ring().field;
    let nt = translated(n, a, w)?;
    let zt = translated(z, a, w)?;
    let n_exact = translated_exact(n, a)?;
    let z_exact = translated_exact(z, a)?;
    let chain = match project_chain(&nt, &zt, chain_opts) {
        Err(Error::TruncationTooCoarse(_)) => return Ok(None),
        other => other?,
    };
    let lines = line_candidates(&chain.image_z, &chain.final_base_vars, opts.search_bound, opts.line_attempts.max(1))?;
    let mut first_failure: Option<Error> = None;
    for line in &lines {
        let mut arc = vec![USeries::zero(field); n.ring().num_vars];
        for (slot, c) in chain.final_base_vars.iter().zip(line) {
            arc[*slot] = USeries::monomial(c.clone(), 1);
        }
        let mut lift = Lift {
            chain: &chain,
            n: &n_exact,
            z: &z_exact,
            ts,
            cap: 2 * (w + 1),
            deepest: (0, "no branch".into()),
            irrational: Vec::new(),
        };
        match lift.run(chain.steps.len(), arc, 1)? {
            Outcome::Shortfall => return Ok(None),
            Outcome::Found { arc, ramification, witness } => {
                return Ok(Some(package(n, z, a, &chain, line, w, ts, &arc, ramification, witness)?));
            }
            // a chain cut short by the truncation may have led the lift astray
            Outcome::Failed if chain.truncation_caveat => return Ok(None),
            Outcome::Failed => {
                if first_failure.is_none() {
                    first_failure = Some(match lift.irrational.first() {
                        Some(poly) => Error::AlgebraicExtensionRequired { poly: poly.clone() },
                        None => Error::NoBranchAvoidsZ { order: ts, detail: lift.deepest.1.clone() },
                    });
                }
            }
        }
    }
    Err(first_failure.expect("at least one line"))
}

#[allow(clippy::too_many_arguments)]
fn package(
    n: &IdealPresentation,
    z: &IdealPresentation,
    a: &Point,
    chain: &ProjectionChain,
    line: &[Coeff],
    w: usize,
    ts: usize,
    arc: &[USeries],
    ramification: usize,
    witness: usize,
) -> Result<(Arc, Certificate)> {
    let field = n.ring().field;
    let sring = Ring::new(1, ts, field);
    let components: Vec<TruncatedSeries> = arc
        .iter()
        .zip(&a.coordinates)
        .map(|(c, ai)| {
            let terms = c.coeffs().iter().take(ts + 1).enumerate().map(|(i, x)| (crate::monomial::ExponentVector::var(0, i as u32), x.clone()));
            TruncatedSeries::from_terms(sring, terms).and_then(|s| s.add(&TruncatedSeries::constant(sring, ai.clone())))
        })
        .collect::<Result<_>>()?;
    let arc = Arc::new(components, ramification)?;
    let pull = |g: &TruncatedSeries| g.retruncate(g.degree().unwrap_or(0).max(n.ring().trunc)).substitute_with(&arc.components, false);
    let vanishing_orders = n.generators().iter().map(|g| pull(g).map(|p| p.order())).collect::<Result<Vec<_>>>()?;
    let witness_series = pull(&z.generators()[witness])?;
    let cert = Certificate {
        base_point: a.clone(),
        vanishing_orders,
        witness_index: witness,
        witness: witness_series,
        chain: digest(chain, line, w),
        trunc: n.ring().trunc,
        ts,
    };
    Ok((arc, cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

/// Re-derives every claim of a certificate from the generators and the arc, using only
/// substitution of the arc into the generators.
pub fn verify_certificate(n: &IdealPresentation, z: &IdealPresentation, a: &Point, arc: &Arc, cert: &Certificate) -> VerificationReport {
    let mut report = VerificationReport::default();
    let ts = arc.ts();
    report.push("truncation", cert.ts == ts, format!("certificate order {}, arc order {ts}", cert.ts));
    let dims_ok = arc.dim() == n.ring().num_vars && a.dim() == arc.dim();
    report.push("dimension", dims_ok, format!("arc has {} components", arc.dim()));
    if !dims_ok {
        return report;
    }
    report.push("base point", arc.origin() == a.coordinates && cert.base_point == *a, "alpha(0) = a");
    report.push("non-constant", !arc.is_constant(), "some component moves");
    let pull = |g: &TruncatedSeries| -> Result<TruncatedSeries> {
        let wide = g.retruncate(g.degree().unwrap_or(0).max(g.trunc()));
        if !wide.is_exact() {
            return Err(Error::NotPolynomial);
        }
        wide.substitute_with(&arc.components, false)
    };
    for (i, g) in n.generators().iter().enumerate() {
        match pull(g) {
            Ok(p) => {
                let claimed = cert.vanishing_orders.get(i).cloned().flatten();
                report.push(format!("N[{i}] vanishes"), p.is_zero() && claimed.is_none() && cert.vanishing_orders.len() == n.len(), format!("order {:?}", p.order()));
            }
            Err(e) => report.push(format!("N[{i}] vanishes"), false, e.to_string()),
        }
    }
    match z.generators().get(cert.witness_index).map(pull) {
        Some(Ok(p)) => {
            report.push("witness", !p.is_zero() && p == cert.witness, format!("Z[{}] along the arc: {p}", cert.witness_index));
        }
        Some(Err(e)) => report.push("witness", false, e.to_string()),
        None => report.push("witness", false, format!("no generator {} in Z", cert.witness_index)),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::monomial::ExponentVector;

    fn poly(ring: Ring, terms: &[(&[u32], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(ring, terms.iter().map(|(e, c)| (ExponentVector::from_dense(e), ring.field.from_i64(*c))))
            .unwrap()
    }

    fn s_poly(ts: usize, terms: &[(u32, i64)]) -> TruncatedSeries {
        let r = Ring::new(1, ts, Field::Rational);
        TruncatedSeries::from_terms(r, terms.iter().map(|(e, c)| (ExponentVector::var(0, *e), r.field.from_i64(*c)))).unwrap()
    }

    fn cusp() -> (IdealPresentation, IdealPresentation) {
        let r = Ring::new(2, 10, Field::Rational);
        let n = IdealPresentation::new(r, vec![poly(r, &[(&[2, 0], 1), (&[0, 3], -1)])]).unwrap();
        let z = IdealPresentation::new(r, vec![TruncatedSeries::var(r, 0), TruncatedSeries::var(r, 1)]).unwrap();
        (n, z)
    }

    #[test]
    fn line_selection() {
        let r = Ring::new(3, 6, Field::Rational);
        let q = Field::Rational;
        let zr = IdealPresentation::new(r, vec![poly(r, &[(&[0, 1, 1], 1)])]).unwrap();
        assert_eq!(select_line(&zr, &[1, 2], 8).unwrap(), vec![q.one(), q.one()]);
        let zr = IdealPresentation::new(r, vec![poly(r, &[(&[0, 3, 0], 1)])]).unwrap();
        assert_eq!(select_line(&zr, &[1], 8).unwrap(), vec![q.one()]);
        let empty = IdealPresentation::new(r, vec![]).unwrap();
        assert!(matches!(select_line(&empty, &[1], 8), Err(Error::ZIsEverything { .. })));
    }

    #[test]
    fn lift_examples() {
        let q = Field::Rational;
        let s = |c: &[i64]| USeries::from_coeffs(q, c.iter().map(|x| q.from_i64(*x)).collect(), crate::useries::EXACT);
        let roots = puiseux_lift(&[s(&[0, 0, 0, -1]), s(&[]), s(&[1])], 10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.ramification == 2 && r.series.valuation() == Some(3)));
        let roots = puiseux_lift(&[s(&[0, 0, -1]), s(&[1])], 10).unwrap();
        assert_eq!(roots[0].series.coeffs(), s(&[0, 0, 1]).coeffs());
        let roots = puiseux_lift(&[s(&[0, 0, 0, 0, 0, 0, -1]), s(&[]), s(&[1])], 10).unwrap();
        assert!(roots.iter().all(|r| r.ramification == 1 && r.series.valuation() == Some(3)));
    }

    #[test]
    fn cusp_arc() {
        let (n, z) = cusp();
        let a = Point::origin(2, Field::Rational);
        let opts = CurveSelOptions { ts: Some(12), ..Default::default() };
        let (arc, cert) = curve_select(&n, &z, &a, opts).unwrap();
        assert_eq!(arc.components[0], s_poly(12, &[(3, 1)]));
        assert_eq!(arc.components[1], s_poly(12, &[(2, 1)]));
        assert_eq!(arc.ramification, 2);
        assert!(verify_certificate(&n, &z, &a, &arc, &cert).passed());
    }

    #[test]
    fn corrupted_arcs_are_rejected() {
        let (n, z) = cusp();
        let a = Point::origin(2, Field::Rational);
        let (arc, cert) = curve_select(&n, &z, &a, CurveSelOptions { ts: Some(8), ..Default::default() }).unwrap();
        let mut bad = arc.clone();
        bad.components[1] = s_poly(8, &[]);
        assert!(!verify_certificate(&n, &z, &a, &bad, &cert).passed());
        let zero = Arc::new(vec![s_poly(8, &[]), s_poly(8, &[])], 1).unwrap();
        assert!(!verify_certificate(&n, &z, &a, &zero, &cert).passed());
    }

    #[test]
    fn point_off_n_and_improper_z() {
        let (n, _) = cusp();
        let q = Field::Rational;
        let off = Point::new(vec![q.one(), q.zero()]);
        assert_eq!(curve_select(&n, &n, &off, CurveSelOptions::default()).unwrap_err(), Error::PointNotOnN { index: 0 });
        let a = Point::origin(2, q);
        assert!(matches!(curve_select(&n, &n, &a, CurveSelOptions::default()), Err(Error::ZIsEverything { .. })));
    }

    #[test]
    fn translated_base_point() {
        // N = y - x^2 through (1, 1); Z = x - 1
        let r = Ring::new(2, 6, Field::Rational);
        let n = IdealPresentation::new(r, vec![poly(r, &[(&[0, 1], 1), (&[2, 0], -1)])]).unwrap();
        let z = IdealPresentation::new(r, vec![poly(r, &[(&[1, 0], 1), (&[0, 0], -1)])]).unwrap();
        let a = Point::new(vec![Field::Rational.one(), Field::Rational.one()]);
        let (arc, cert) = curve_select(&n, &z, &a, CurveSelOptions { ts: Some(6), ..Default::default() }).unwrap();
        assert!(verify_certificate(&n, &z, &a, &arc, &cert).passed());
        assert_eq!(arc.origin(), a.coordinates);
    }
}
