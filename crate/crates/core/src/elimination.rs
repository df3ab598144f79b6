//! Finite projections: eliminating a distinguished variable through resultants with a
//! Weierstrass polynomial, and iterating until the image of `N` is the whole base.

use crate::error::{Error, Result};
use crate::linear::{apply_linear_change, LinearChange};
use crate::matrix::{adjugate_times, determinant};
use crate::series::{Ring, TruncatedSeries};
use crate::weierstrass::{regular_order, regularize_over, wdivide, wprepare, WeierstrassFactorization, DEFAULT_SEARCH_BOUND};

/// Finitely many generators in a common ring. Generators that are zero modulo
/// `m^{T+1}` are dropped; an empty list presents the unit ideal's opposite, the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Ring,
    generators: Vec<TruncatedSeries>,
}

impl IdealPresentation {
    pub fn new(ring: Ring, generators: Vec<TruncatedSeries>) -> Result<Self> {
        for g in &generators {
            ring.check(&g.ring())?;
        }
        Ok(IdealPresentation { ring, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Applies `f -> f(A x)` to every generator.
    pub fn apply_change(&self, change: &LinearChange) -> Result<Self> {
        if change.is_identity() {
            return Ok(self.clone());
        }
        let gens = self.generators.iter().map(|g| apply_linear_change(g, change)).collect::<Result<_>>()?;
        Self::new(self.ring, gens)
    }

    /// Same generators in a ring with a different truncation order.
    pub fn retruncate(&self, trunc: usize) -> Self {
        let ring = self.ring.with_trunc(trunc);
        IdealPresentation { ring, generators: self.generators.iter().map(|g| g.retruncate(trunc)).filter(|g| !g.is_zero()).collect() }
    }

    /// Index of the generator of least order, ties broken by position.
    pub fn min_order_generator(&self) -> Option<usize> {
        self.generators.iter().enumerate().min_by_key(|(i, g)| (g.order().unwrap_or(usize::MAX), *i)).map(|(i, _)| i)
    }
}

/// `Res = A * P + B * r`, with `P` the Weierstrass polynomial and `r` the remainder of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultantCertificate {
    pub source: usize,
    /// `Some(c)`: the eliminated element is the combination `sum_i c^i g_i` of all generators
    /// rather than generator `source` alone.
    pub multiplier: Option<u64>,
    pub remainder: TruncatedSeries,
    pub resultant: TruncatedSeries,
    pub cofactor_p: TruncatedSeries,
    pub cofactor_r: TruncatedSeries,
}

impl ResultantCertificate {
    /// Re-expands `A * P + B * r` and compares with the resultant.
    pub fn check(&self, p: &TruncatedSeries) -> bool {
        let lhs = self.cofactor_p.mul(p).and_then(|ap| ap.add(&self.cofactor_r.mul(&self.remainder)?));
        matches!(lhs, Ok(v) if v == self.resultant)
    }
}

fn poly_mul(a: &[TruncatedSeries], b: &[TruncatedSeries], ring: Ring) -> Vec<TruncatedSeries> {
    let mut out = vec![TruncatedSeries::zero(ring); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y).expect("same ring")).expect("same ring");
        }
    }
    out
}

/// Remainder and quotient of `a` by a monic `p` (coefficient lists, low degree first).
fn poly_divrem_monic(a: &[TruncatedSeries], p: &[TruncatedSeries], ring: Ring) -> (Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
    let k = p.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= k {
        rem.resize(k, TruncatedSeries::zero(ring));
        return (vec![TruncatedSeries::zero(ring)], rem);
    }
    let mut quot = vec![TruncatedSeries::zero(ring); rem.len() - k];
    for top in (k..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quot[top - k] = c.clone();
        for (i, pi) in p.iter().enumerate() {
            let idx = top - k + i;
            rem[idx] = rem[idx].sub(&c.mul(pi).expect("same ring")).expect("same ring");
        }
    }
    rem.truncate(k);
    (quot, rem)
}

/// Resultant of a monic `p` of degree `k` and `r` of degree `< k` in `x_var`, with cofactors.
///
/// `Res(p, r) = det(mult_r)` on the free module `A[x]/(p)`; the cofactor `B` is the first
/// column of the adjugate, so `r B = Res mod p`, and `A = (Res - r B) / p` exactly.
pub fn resultant_with_cofactors(
    p: &[TruncatedSeries],
    r: &[TruncatedSeries],
    var: usize,
    ring: Ring,
) -> Result<(TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    let k = p.len() - 1;
    let zero = TruncatedSeries::zero(ring);
    if k == 0 {
        return Ok((TruncatedSeries::one(ring), zero.clone(), zero));
    }
    if r.iter().all(TruncatedSeries::is_zero) {
        return Ok((zero.clone(), zero.clone(), zero));
    }
    // columns: r * x^j mod p
    let mut cols: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(k);
    let mut cur: Vec<TruncatedSeries> = r.to_vec();
    cur.resize(k, zero.clone());
    for j in 0..k {
        if j > 0 {
            let mut shifted = vec![zero.clone()];
            shifted.extend(cur.iter().cloned());
            cur = poly_divrem_monic(&shifted, p, ring).1;
        }
        cols.push(cur.clone());
    }
    let m: Vec<Vec<TruncatedSeries>> = (0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect();
    let res = determinant(&m);
    let mut e0 = vec![zero.clone(); k];
    e0[0] = TruncatedSeries::one(ring);
    let b = adjugate_times(&m, &e0);
    // res - r*b is divisible by p
    let rb = poly_mul(r, &b, ring);
    let mut diff: Vec<TruncatedSeries> = rb.iter().map(|c| c.neg()).collect();
    diff[0] = diff[0].add(&res)?;
    let (a, rem) = poly_divrem_monic(&diff, p, ring);
    debug_assert!(rem.iter().all(TruncatedSeries::is_zero), "adjugate cofactor left a remainder");
    let a_series = TruncatedSeries::from_coefficients_in(ring, var, &a)?;
    let b_series = TruncatedSeries::from_coefficients_in(ring, var, &b)?;
    Ok((res, a_series, b_series))
}

/// Image of an ideal under the projection forgetting `x_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub image: IdealPresentation,
    pub certificates: Vec<ResultantCertificate>,
    /// Some resultant vanished only modulo the truncation of inexact data.
    pub truncation_caveat: bool,
}

/// Reduces each generator (other than `skip`) modulo the Weierstrass polynomial and emits its
/// resultant with it: an element of the ideal not involving `x_d`. Generators that do not
/// involve `x_d` are kept as they are.
pub fn eliminate_variable(ideal: &IdealPresentation, prep: &WeierstrassFactorization, skip: Option<usize>) -> Result<Elimination> {
    let ring = ideal.ring();
    let d = prep.distinguished_var;
    let p_series = prep.wpoly_series();
    let mut certificates = Vec::new();
    let mut image = Vec::new();
    let mut caveat = false;
    for (i, g) in ideal.generators().iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        if !g.involves(d) {
            // already free of x_d, hence in the elimination ideal: g = 0 * P + 1 * g
            image.push(g.clone());
            certificates.push(ResultantCertificate {
                source: i,
                multiplier: None,
                remainder: g.clone(),
                resultant: g.clone(),
                cofactor_p: TruncatedSeries::zero(ring),
                cofactor_r: TruncatedSeries::one(ring),
            });
            continue;
        }
        let div = wdivide(g, &p_series, d)?;
        let r_coeffs = div.remainder_coefficients();
        let (res, a, b) = resultant_with_cofactors(&prep.wpoly, &r_coeffs, d, ring)?;
        if res.is_zero() && !res.is_exact() {
            caveat = true;
        }
        if !res.is_zero() {
            image.push(res.clone());
        }
        certificates.push(ResultantCertificate { source: i, multiplier: None, remainder: div.remainder, resultant: res, cofactor_p: a, cofactor_r: b });
    }
    Ok(Elimination { image: IdealPresentation::new(ring, image)?, certificates, truncation_caveat: caveat })
}

/// `f` with every variable in `vars` set to zero. The result stays in the ambient ring and
/// simply does not involve those variables.
pub fn evaluate_at_zero(f: &TruncatedSeries, vars: &[usize]) -> TruncatedSeries {
    f.evaluate_at_zero(vars)
}

/// One projection: the change applied, the generator used and its preparation.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub change: LinearChange,
    pub var: usize,
    pub generator: usize,
    pub factorization: WeierstrassFactorization,
    /// `N`'s image before this step, in the coordinates after `change`.
    pub n_ideal: IdealPresentation,
    pub n_certificates: Vec<ResultantCertificate>,
    pub z_certificates: Vec<ResultantCertificate>,
}

#[derive(Debug, Clone)]
pub struct ProjectionChain {
    pub steps: Vec<ChainStep>,
    pub final_base_vars: Vec<usize>,
    pub image_z: IdealPresentation,
    pub truncation_caveat: bool,
}

impl ProjectionChain {
    pub fn weierstrass_degrees(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.factorization.order_k).collect()
    }

    /// Every emitted resultant satisfies its cofactor identity.
    pub fn check_memberships(&self) -> bool {
        self.steps.iter().all(|s| {
            let p = s.factorization.wpoly_series();
            s.n_certificates.iter().chain(&s.z_certificates).all(|c| c.check(&p))
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ChainOptions {
    pub budget: usize,
    pub search_bound: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { budget: 32, search_bound: DEFAULT_SEARCH_BOUND }
    }
}

/// Number of multipliers tried by [`eliminate_combination`].
const COMBINATION_TRIES: u64 = 8;

/// When every generator of `Z` shares a root with `P` (as happens when `N` is reducible and
/// each generator vanishes on some component), the resultant of a combination
/// `sum_i c^i g_i` can still be nonzero: it vanishes only over common roots of all `g_i`.
fn eliminate_combination(z: &IdealPresentation, prep: &WeierstrassFactorization) -> Result<Option<Elimination>> {
    let ring = z.ring();
    let mut caveat = false;
    for c in 1..=COMBINATION_TRIES {
        let mult = ring.field.from_i64(c as i64);
        let mut combo = TruncatedSeries::zero(ring);
        let mut power = ring.field.one();
        for g in z.generators() {
            combo = combo.add(&g.scale(&power))?;
            power = &power * &mult;
        }
        if combo.is_zero() {
            continue;
        }
        let mut e = eliminate_variable(&IdealPresentation::new(ring, vec![combo])?, prep, None)?;
        caveat |= e.truncation_caveat;
        if !e.image.is_empty() {
            for cert in &mut e.certificates {
                cert.multiplier = Some(c);
            }
            e.truncation_caveat = caveat;
            return Ok(Some(e));
        }
    }
    Ok(caveat.then(|| Elimination { image: IdealPresentation { ring, generators: Vec::new() }, certificates: Vec::new(), truncation_caveat: true }))
}

/// Iterates regularize / prepare / eliminate on `N` (and carries `Z` along) until the image
/// of `N` has no generator left.
pub fn project_chain(n: &IdealPresentation, z: &IdealPresentation, opts: ChainOptions) -> Result<ProjectionChain> {
    n.ring().check(&z.ring())?;
    let mut remaining: Vec<usize> = (0..n.ring().num_vars).collect();
    let mut cur_n = n.clone();
    let mut cur_z = z.clone();
    let mut steps = Vec::new();
    let mut caveat = false;
    while !cur_n.is_empty() {
        if steps.len() >= opts.budget {
            return Err(Error::BudgetExhausted { budget: opts.budget });
        }
        let gi = cur_n.min_order_generator().expect("nonempty");
        let f = &cur_n.generators()[gi];
        let ord = f.order().expect("nonzero");
        if ord == 0 {
            return Err(Error::InvalidInput("generator does not vanish at the base point".into()));
        }
        let d = remaining.iter().copied().find(|&v| regular_order(f, v).ok() == Some(ord)).unwrap_or(remaining[0]);
        let change = regularize_over(f, d, &remaining, opts.search_bound)?;
        let n_changed = cur_n.apply_change(&change)?;
        let z_changed = cur_z.apply_change(&change)?;
        let f_changed = &n_changed.generators()[gi];
        let factorization = wprepare(f_changed, d)?;
        let n_elim = eliminate_variable(&n_changed, &factorization, Some(gi))?;
        let mut z_elim = eliminate_variable(&z_changed, &factorization, None)?;
        if z_elim.image.is_empty() && z_changed.len() > 1 {
            z_elim = eliminate_combination(&z_changed, &factorization)?.unwrap_or(z_elim);
        }
        caveat |= n_elim.truncation_caveat || z_elim.truncation_caveat;
        remaining.retain(|v| *v != d);
        steps.push(ChainStep {
            change,
            var: d,
            generator: gi,
            factorization,
            n_ideal: n_changed,
            n_certificates: n_elim.certificates,
            z_certificates: z_elim.certificates,
        });
        cur_n = n_elim.image;
        cur_z = z_elim.image;
    }
    if cur_z.is_empty() {
        if caveat {
            return Err(Error::TruncationTooCoarse(format!(
                "the image of Z vanishes modulo the truncation order {}",
                n.ring().trunc
            )));
        }
        return Err(Error::ZIsEverything { trunc: n.ring().trunc });
    }
    Ok(ProjectionChain { steps, final_base_vars: remaining, image_z: cur_z, truncation_caveat: caveat })
}
