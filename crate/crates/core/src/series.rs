//! Multivariate formal power series over an exact field, modulo total degree `T + 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::monomial::ExponentVector;

/// The ambient ring `K[[x_0..x_{n-1}]] / m^{T+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub num_vars: usize,
    pub trunc: usize,
    pub field: Field,
}

impl Ring {
    pub fn new(num_vars: usize, trunc: usize, field: Field) -> Ring {
        Ring { num_vars, trunc, field }
    }

    pub fn with_trunc(self, trunc: usize) -> Ring {
        Ring { trunc, ..self }
    }

    pub fn with_vars(self, num_vars: usize) -> Ring {
        Ring { num_vars, ..self }
    }

    pub(crate) fn check(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::MismatchedRing(format!(
                "{} vars/T={}/{} vs {} vars/T={}/{}",
                self.num_vars, self.trunc, self.field, other.num_vars, other.trunc, other.field
            )));
        }
        Ok(())
    }
}

/// A truncated series. `exact` records that no term has ever been discarded,
/// i.e. the stored terms are an honest polynomial rather than a truncation.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    ring: Ring,
    terms: BTreeMap<ExponentVector, Coeff>,
    exact: bool,
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for TruncatedSeries {}

impl TruncatedSeries {
    pub fn zero(ring: Ring) -> Self {
        TruncatedSeries { ring, terms: BTreeMap::new(), exact: true }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: Ring, c: Coeff) -> Self {
        Self::monomial(ring, ExponentVector::one(), c)
    }

    pub fn var(ring: Ring, v: usize) -> Self {
        assert!(v < ring.num_vars, "variable {v} out of range");
        Self::monomial(ring, ExponentVector::var(v, 1), ring.field.one())
    }

    pub fn monomial(ring: Ring, exp: ExponentVector, c: Coeff) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(exp, c);
        s
    }

    /// Builds a series from terms, summing duplicates and truncating.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (ExponentVector, Coeff)>) -> Result<Self> {
        let mut s = Self::zero(ring);
        for (e, c) in terms {
            if let Some(v) = e.max_var() {
                if v >= ring.num_vars {
                    return Err(Error::DimensionMismatch { expected: ring.num_vars, got: v + 1 });
                }
            }
            if c.field() != ring.field {
                return Err(Error::MismatchedRing(format!("coefficient in {}, ring over {}", c.field(), ring.field)));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, e: ExponentVector, c: Coeff) {
        if c.is_zero() {
            return;
        }
        if e.degree() > self.ring.trunc {
            self.exact = false;
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn trunc(&self) -> usize {
        self.ring.trunc
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars
    }

    /// True when the stored terms are the whole series (nothing was truncated away).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub(crate) fn mark_inexact(mut self) -> Self {
        self.exact = false;
        self
    }

    /// Zero modulo `m^{T+1}`; not a claim that the untruncated series vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&ExponentVector::one())
    }

    /// Lowest total degree present, `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|e| e.degree())
    }

    /// Highest total degree present.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|e| e.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.exponent(var)).max()
    }

    /// Whether any term involves `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.exponent(var) > 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.check(&other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out.exact = self.exact && other.exact;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            exact: self.exact,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return TruncatedSeries { exact: self.exact, ..Self::zero(self.ring) };
        }
        TruncatedSeries {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            exact: self.exact,
        }
    }

    /// Product modulo `m^{T+1}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.check(&other.ring)?;
        let t = self.ring.trunc;
        let mut acc: HashMap<ExponentVector, Coeff> = HashMap::new();
        let mut dropped = false;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if ea.degree() + eb.degree() > t {
                    // terms are sorted by degree, so the rest of `other` overflows too
                    dropped = true;
                    break;
                }
                let e = ea.mul(eb);
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(c) => *c = &*c + &p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TruncatedSeries { ring: self.ring, terms, exact: self.exact && other.exact && !dropped })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiplicative inverse of a unit (nonzero constant term) modulo `m^{T+1}`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term().inv()?;
        // u = c0 * (1 - h) with h in m; u^{-1} = c0^{-1} * sum h^j, and h^{T+1} = 0.
        let normalized = self.scale(&c0);
        let h = Self::one(self.ring).sub(&normalized).expect("same ring");
        let mut sum = Self::one(self.ring);
        let mut power = Self::one(self.ring);
        for _ in 0..self.ring.trunc {
            power = power.mul(&h).expect("same ring");
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power).expect("same ring");
        }
        let inv = sum.scale(&c0);
        // exact only when the geometric sum terminated honestly, i.e. self is constant
        Some(if self.exact && h.is_zero() { inv } else { inv.mark_inexact() })
    }

    /// Sum of terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: usize) -> Self {
        TruncatedSeries {
            ring: self.ring,
            terms: self.terms.iter().filter(|(e, _)| e.degree() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
            exact: true,
        }
    }

    /// Lowest nonzero homogeneous form.
    pub fn initial_form(&self) -> Option<Self> {
        self.order().map(|d| self.homogeneous_component(d))
    }

    /// Substitutes 0 for every variable in `vars`.
    pub fn evaluate_at_zero(&self, vars: &[usize]) -> Self {
        TruncatedSeries {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|v| e.exponent(*v) == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            exact: self.exact,
        }
    }

    /// Changes the truncation order. Lowering may discard terms; raising treats the
    /// stored terms as a representative and keeps them unchanged.
    pub fn retruncate(&self, trunc: usize) -> Self {
        let ring = self.ring.with_trunc(trunc);
        let mut out = TruncatedSeries { exact: self.exact, ..Self::zero(ring) };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Reinterprets the series in a ring with at least as many variables.
    pub fn embed(&self, ring: Ring) -> Result<Self> {
        if ring.field != self.ring.field || ring.num_vars < self.ring.num_vars {
            return Err(Error::MismatchedRing(format!("cannot embed {:?} into {:?}", self.ring, ring)));
        }
        let mut out = TruncatedSeries { exact: self.exact, ..Self::zero(ring) };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Evaluates a polynomial at a point. Only exact series have a value.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        if !self.exact {
            return Err(Error::NotPolynomial);
        }
        if point.len() != self.ring.num_vars {
            return Err(Error::DimensionMismatch { expected: self.ring.num_vars, got: point.len() });
        }
        let mut total = self.ring.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, k) in e.pairs() {
                term = &term * &point[*v].pow(*k);
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// `f(images)`, each image of order >= 1 in a common target ring.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Result<Self> {
        self.substitute_with(images, true)
    }

    /// Like [`substitute`](Self::substitute); with `strict == false` images may have
    /// constant terms as long as `self` is an exact polynomial.
    pub fn substitute_with(&self, images: &[TruncatedSeries], strict: bool) -> Result<Self> {
        if images.len() != self.ring.num_vars {
            return Err(Error::DimensionMismatch { expected: self.ring.num_vars, got: images.len() });
        }
        let target = match images.first() {
            Some(img) => img.ring,
            None => return Ok(self.clone()),
        };
        for (v, img) in images.iter().enumerate() {
            target.check(&img.ring)?;
            if !img.constant_term().is_zero() && (strict || !self.exact) && self.involves(v) {
                return Err(Error::SubstitutionNotFinite { var: v });
            }
        }
        let mut powers: HashMap<(usize, u32), TruncatedSeries> = HashMap::new();
        let mut out = Self::zero(target);
        let mut exact = self.exact && images.iter().all(|i| i.exact);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for &(v, k) in e.pairs() {
                let p = powers.entry((v, k)).or_insert_with(|| images[v].pow(k));
                term = term.mul(p)?;
                if term.is_zero() {
                    break;
                }
            }
            exact &= term.exact;
            out = out.add(&term)?;
        }
        out.exact = exact && out.exact;
        Ok(out)
    }

    /// Splits by powers of `var`: `self = sum_i coeffs[i] * var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<TruncatedSeries> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![TruncatedSeries { exact: self.exact, ..Self::zero(self.ring) }; deg + 1];
        for (e, c) in &self.terms {
            let k = e.exponent(var) as usize;
            out[k].terms.insert(e.with_exponent(var, 0), c.clone());
        }
        if self.terms.is_empty() {
            out.truncate(1);
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(ring: Ring, var: usize, coeffs: &[TruncatedSeries]) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            ring.check(&c.ring)?;
            for (e, a) in &c.terms {
                let shifted = e.mul(&ExponentVector::var(var, k as u32));
                out.add_term(shifted, a.clone());
            }
            out.exact &= c.exact;
        }
        Ok(out)
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, var: usize, k: u32) -> Self {
        let mut out = TruncatedSeries { exact: self.exact, ..Self::zero(self.ring) };
        let m = ExponentVector::var(var, k);
        for (e, c) in &self.terms {
            out.add_term(e.mul(&m), c.clone());
        }
        out
    }

    /// Renders with the given variable names in the script grammar.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (num, _) = c.to_ratio();
            let negative = matches!(c, Coeff::Q(_)) && num < 0.into();
            let mag = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_one() {
                factors.push(mag.to_string());
            }
            for (v, k) in e.pairs() {
                let name = names.get(*v).cloned().unwrap_or_else(|| format!("x{v}"));
                factors.push(if *k == 1 { name } else { format!("{name}^{k}") });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.ring.num_vars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.render(&names))
    }
}
