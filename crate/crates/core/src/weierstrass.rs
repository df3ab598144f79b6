//! Regularity, regularizing changes of coordinates, Weierstrass division and preparation.
//!
//! Everything happens in `A = K[[x]] / m^{T+1}`. Division uses the classical fixed point
//! `w = Q(g - w * e^{-1} * h)` where `f = h + x_d^k * e` splits `f` by `x_d`-degree; the
//! map `w -> Q(w * e^{-1} * h)` raises the degree in the non-distinguished variables, so
//! it is nilpotent on `A` and the iteration stabilizes after at most `T + 1` rounds.

use crate::error::{Error, Result};
use crate::linear::{apply_linear_change, LinearChange};
use crate::monomial::ExponentVector;
use crate::series::{Ring, TruncatedSeries};

/// Default cap on the max-norm of integer vectors tried by the regularizing search.
pub const DEFAULT_SEARCH_BOUND: u64 = 64;

/// Order of the restriction `f(0, .., x_d, .., 0)`.
pub fn regular_order(f: &TruncatedSeries, d: usize) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroSeries { trunc: f.trunc() });
    }
    f.terms()
        .filter(|(e, _)| e.pairs().iter().all(|(v, _)| *v == d))
        .map(|(e, _)| e.degree())
        .min()
        .ok_or(Error::NotRegular { var: d })
}

/// Values in search order `0, 1, -1, 2, -2, ...`.
fn ordered_values(r: u64) -> Vec<i64> {
    let mut v = vec![0i64];
    for i in 1..=r as i64 {
        v.push(i);
        v.push(-i);
    }
    v
}

/// Visits integer vectors of length `m` by increasing max-norm (1..=bound), lexicographic in
/// the order `0, 1, -1, 2, -2, ...` within a norm, until `visit` returns true.
pub(crate) fn search_vectors(m: usize, bound: u64, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    if m == 0 {
        return false;
    }
    for r in 1..=bound {
        let values = ordered_values(r);
        let mut idx = vec![0usize; m];
        loop {
            let v: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
            if v.iter().any(|x| x.unsigned_abs() == r) && visit(&v) {
                return true;
            }
            // odometer, last position fastest
            let mut pos = m;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < values.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    false
}

/// A change `A` with `regular_order(f∘A, d) == order(f)`, searching only over `vars`
/// (which must contain `d`); other coordinates are left untouched.
pub fn regularize_over(f: &TruncatedSeries, d: usize, vars: &[usize], bound: u64) -> Result<LinearChange> {
    let k = f.order().ok_or(Error::ZeroSeries { trunc: f.trunc() })?;
    let n = f.num_vars();
    let field = f.field();
    if regular_order(f, d).ok() == Some(k) {
        return Ok(LinearChange::identity(n, field));
    }
    let pos_d = vars.iter().position(|v| *v == d).ok_or(Error::InvalidInput(format!("variable {d} not searchable")))?;
    let form = f.homogeneous_component(k);
    let mut found = None;
    search_vectors(vars.len(), bound, |v| {
        if v[pos_d] == 0 {
            return false;
        }
        let mut point = vec![field.zero(); n];
        for (slot, val) in vars.iter().zip(v) {
            point[*slot] = field.from_i64(*val);
        }
        if point[d].is_zero() {
            return false;
        }
        if form.evaluate(&point).map(|c| !c.is_zero()).unwrap_or(false) {
            found = Some(point);
            return true;
        }
        false
    });
    let v = found.ok_or(Error::SearchExhausted { bound })?;
    LinearChange::column_replacement(d, &v)
}

/// Regularizing change over all variables.
pub fn regularize(f: &TruncatedSeries, d: usize, bound: u64) -> Result<LinearChange> {
    let vars: Vec<usize> = (0..f.num_vars()).collect();
    regularize_over(f, d, &vars, bound)
}

/// `g = q f + r` in `A`, with `deg_{x_d} r < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: TruncatedSeries,
    pub remainder: TruncatedSeries,
    pub var: usize,
    pub k: usize,
}

impl Division {
    /// Remainder as coefficients of `1, x_d, .., x_d^{k-1}`.
    pub fn remainder_coefficients(&self) -> Vec<TruncatedSeries> {
        let mut cs = self.remainder.coefficients_in(self.var);
        cs.resize(self.k.max(1), TruncatedSeries::zero(self.remainder.ring()));
        cs
    }
}

/// Terms with `x_d`-exponent `>= k` divided by `x_d^k`, and the rest.
fn split(h: &TruncatedSeries, d: usize, k: usize) -> (TruncatedSeries, TruncatedSeries) {
    let ring = h.ring();
    let mut high = Vec::new();
    let mut low = Vec::new();
    for (e, c) in h.terms() {
        let ed = e.exponent(d) as usize;
        if ed >= k {
            high.push((e.with_exponent(d, (ed - k) as u32), c.clone()));
        } else {
            low.push((e.clone(), c.clone()));
        }
    }
    let q = TruncatedSeries::from_terms(ring, high).expect("same ring");
    let r = TruncatedSeries::from_terms(ring, low).expect("same ring");
    if h.is_exact() {
        (q, r)
    } else {
        (q.mark_inexact(), r.mark_inexact())
    }
}

/// Weierstrass division of `g` by `f`, regular in `x_d`.
pub fn wdivide(g: &TruncatedSeries, f: &TruncatedSeries, d: usize) -> Result<Division> {
    g.ring().check(&f.ring())?;
    let k = regular_order(f, d)?;
    let (e, h) = split(f, d, k);
    let e_inv = e.inverse().ok_or(Error::NotRegular { var: d })?;
    let hh = h.mul(&e_inv)?;
    let mut w = TruncatedSeries::zero(g.ring());
    for _ in 0..=g.trunc() + 1 {
        let (next, _) = split(&g.sub(&w.mul(&hh)?)?, d, k);
        if next == w {
            break;
        }
        w = next;
    }
    let (_, remainder) = split(&g.sub(&w.mul(&hh)?)?, d, k);
    let quotient = w.mul(&e_inv)?;
    Ok(Division { quotient, remainder, var: d, k })
}

/// Degree-by-degree division: solves `q_{D-k} f_k + r_D = g_D - sum q_a f_{D-a}` for each
/// total degree `D` by polynomial long division by the initial form `f_k`.
///
/// Requires `regular_order(f, d) == order(f)`. Produces `q` modulo `m^{T+1-k}` and `r`
/// modulo `m^{T+1}`, which is where Weierstrass division in `A` is unique.
pub fn wdivide_graded(g: &TruncatedSeries, f: &TruncatedSeries, d: usize) -> Result<Division> {
    g.ring().check(&f.ring())?;
    let k = regular_order(f, d)?;
    if f.order() != Some(k) {
        return Err(Error::InvalidInput("graded division needs order(f) == regular order".into()));
    }
    let ring = g.ring();
    let t = ring.trunc;
    let fk = f.homogeneous_component(k);
    let lead = fk.coeff(&ExponentVector::var(d, k as u32));
    let lead_inv = lead.inv().ok_or(Error::NotRegular { var: d })?;
    let mut q_parts: Vec<TruncatedSeries> = Vec::new();
    let mut remainder = TruncatedSeries::zero(ring);
    for deg in 0..=t {
        let mut rhs = g.homogeneous_component(deg);
        for (a, qa) in q_parts.iter().enumerate() {
            if deg > a + k {
                rhs = rhs.sub(&qa.mul(&f.homogeneous_component(deg - a))?)?;
            }
        }
        let mut qd = TruncatedSeries::zero(ring);
        loop {
            let top = rhs
                .terms()
                .filter(|(e, _)| e.exponent(d) as usize >= k)
                .max_by_key(|(e, _)| e.exponent(d))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = top else { break };
            let ed = e.exponent(d) as usize;
            let t_mon = TruncatedSeries::monomial(ring, e.with_exponent(d, (ed - k) as u32), &c * &lead_inv);
            qd = qd.add(&t_mon)?;
            rhs = rhs.sub(&t_mon.mul(&fk)?)?;
        }
        remainder = remainder.add(&rhs)?;
        if deg >= k {
            q_parts.push(qd);
        }
    }
    let mut quotient = TruncatedSeries::zero(ring);
    for q in &q_parts {
        quotient = quotient.add(q)?;
    }
    // only the truncations are computed here
    Ok(Division { quotient: quotient.mark_inexact(), remainder: remainder.mark_inexact(), var: d, k })
}

/// `f = unit * wpoly` with `wpoly` monic of degree `k` in `x_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassFactorization {
    pub unit: TruncatedSeries,
    /// Coefficients of `1, x_d, .., x_d^k`; the last is one and none involves `x_d`.
    pub wpoly: Vec<TruncatedSeries>,
    pub distinguished_var: usize,
    pub order_k: usize,
}

impl WeierstrassFactorization {
    pub fn ring(&self) -> Ring {
        self.unit.ring()
    }

    pub fn wpoly_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_coefficients_in(self.ring(), self.distinguished_var, &self.wpoly).expect("same ring")
    }

    /// Checks every structural invariant against the series it came from.
    pub fn check(&self, f: &TruncatedSeries) -> std::result::Result<(), String> {
        if self.unit.constant_term().is_zero() {
            return Err("unit vanishes at the origin".into());
        }
        if self.wpoly.len() != self.order_k + 1 || !self.wpoly[self.order_k].constant_term().is_one() || self.wpoly[self.order_k].num_terms() != 1 {
            return Err("wpoly is not monic of degree k".into());
        }
        for (i, c) in self.wpoly.iter().enumerate() {
            if c.involves(self.distinguished_var) {
                return Err(format!("coefficient {i} involves the distinguished variable"));
            }
            if i < self.order_k && !c.constant_term().is_zero() {
                return Err(format!("coefficient {i} does not vanish at the origin"));
            }
        }
        let prod = self.unit.mul(&self.wpoly_series()).map_err(|e| e.to_string())?;
        if &prod != f {
            return Err("unit * wpoly differs from f".into());
        }
        Ok(())
    }
}

/// Weierstrass preparation via division of `x_d^k` by `f`.
pub fn wprepare(f: &TruncatedSeries, d: usize) -> Result<WeierstrassFactorization> {
    let k = regular_order(f, d)?;
    let ring = f.ring();
    let xdk = TruncatedSeries::monomial(ring, ExponentVector::var(d, k as u32), ring.field.one());
    let div = wdivide(&xdk, f, d)?;
    let unit = div.quotient.inverse().ok_or(Error::NotRegular { var: d })?;
    let mut wpoly: Vec<TruncatedSeries> = div.remainder_coefficients().into_iter().map(|c| c.neg()).collect();
    wpoly.truncate(k);
    wpoly.resize(k, TruncatedSeries::zero(ring));
    wpoly.push(TruncatedSeries::one(ring));
    Ok(WeierstrassFactorization { unit, wpoly, distinguished_var: d, order_k: k })
}

/// Regularizes `f` (if needed) in `x_d`, returning the change and the transformed series.
pub fn regularized(f: &TruncatedSeries, d: usize, vars: &[usize], bound: u64) -> Result<(LinearChange, TruncatedSeries)> {
    let change = regularize_over(f, d, vars, bound)?;
    let g = if change.is_identity() { f.clone() } else { apply_linear_change(f, &change)? };
    Ok((change, g))
}
