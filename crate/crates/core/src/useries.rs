//! Univariate power series in one parameter with a known precision: the value is
//! determined modulo `s^prec`. Used for arcs and for pulling generators back along them.

use std::fmt;

use crate::coeff::{Coeff, Field};
use crate::series::TruncatedSeries;

/// Precision of a series known exactly (a polynomial in `s`).
pub const EXACT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct USeries {
    field: Field,
    coeffs: Vec<Coeff>,
    prec: usize,
}

impl USeries {
    pub fn zero(field: Field) -> Self {
        USeries { field, coeffs: Vec::new(), prec: EXACT }
    }

    /// Nothing is known: zero modulo `s^0`.
    pub fn unknown(field: Field) -> Self {
        USeries { field, coeffs: Vec::new(), prec: 0 }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_coeffs(c.field(), vec![c], EXACT)
    }

    pub fn monomial(c: Coeff, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs, EXACT)
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Coeff>, prec: usize) -> Self {
        coeffs.truncate(prec);
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        USeries { field, coeffs, prec }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Index of the first known nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// A lower bound for the true valuation.
    pub fn val_lower(&self) -> usize {
        self.valuation().unwrap_or(self.prec)
    }

    /// Zero as far as it is known.
    pub fn is_zero_at_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self::from_coeffs(self.field, self.coeffs.clone(), self.prec.min(cap))
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let len = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        Self::from_coeffs(self.field, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        USeries { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        USeries { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect(), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.saturating_add(o.val_lower()).min(o.prec.saturating_add(self.val_lower()));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::from_coeffs(self.field, Vec::new(), prec);
        }
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(prec);
        let mut out = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(self.field, out, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.field.one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Inverse of a series with nonzero constant term, to its precision (capped at `cap`).
    pub fn inverse(&self, cap: usize) -> Option<Self> {
        let c0 = self.coeffs.first().filter(|c| !c.is_zero())?.inv()?;
        let prec = self.prec.min(cap);
        let mut out: Vec<Coeff> = Vec::with_capacity(prec.min(cap));
        for k in 0..prec {
            if k == 0 {
                out.push(c0.clone());
                continue;
            }
            let mut acc = self.field.zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-&(&acc * &c0));
        }
        Some(Self::from_coeffs(self.field, out, prec))
    }

    /// `s -> s^e`.
    pub fn ramify(&self, e: usize) -> Self {
        if e == 1 {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len().saturating_sub(1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        Self::from_coeffs(self.field, coeffs, self.prec.saturating_mul(e))
    }

    /// Multiplication by `s^l`.
    pub fn shift_up(&self, l: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::from_coeffs(self.field, Vec::new(), self.prec.saturating_add(l));
        }
        let mut coeffs = vec![self.field.zero(); l];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(self.field, coeffs, self.prec.saturating_add(l))
    }

    /// Division by `s^l`; the known coefficients below `l` must vanish.
    pub fn shift_down(&self, l: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(l).all(Coeff::is_zero), "shift_down of a series of lower order");
        let prec = if self.prec == EXACT { EXACT } else { self.prec.saturating_sub(l) };
        Self::from_coeffs(self.field, self.coeffs.iter().skip(l).cloned().collect(), prec)
    }

    /// Pulls a multivariate series back along the arc `x_i = arc[i](s)`.
    ///
    /// All arc components must vanish at `s = 0`. When `g` is only known modulo `m^{T+1}`
    /// the result is only known modulo `s^{(T+1) v}`, `v` the least arc valuation; exactly
    /// zero components do not count, so coordinates `g` cannot depend on may be set to zero.
    pub fn pullback(g: &TruncatedSeries, arc: &[USeries], cap: usize) -> USeries {
        let field = g.field();
        let n = g.num_vars();
        assert_eq!(arc.len(), n, "arc dimension");
        let mut powers: Vec<Vec<USeries>> = vec![vec![USeries::constant(field.one())]; n];
        let mut acc = USeries::zero(field).truncate(cap);
        for (exp, c) in g.terms() {
            let mut term = USeries::constant(c.clone()).truncate(cap);
            for &(v, e) in exp.pairs() {
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().expect("nonempty").mul(&arc[v]).truncate(cap);
                    powers[v].push(next);
                }
                term = term.mul(&powers[v][e as usize]).truncate(cap);
            }
            acc = acc.add(&term);
        }
        if !g.is_exact() {
            let minval = arc.iter().map(USeries::val_lower).min().unwrap_or(EXACT);
            let bound = (g.trunc() + 1).saturating_mul(minval.max(1));
            acc = acc.truncate(bound);
        }
        acc
    }

    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{i}"),
            });
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.prec == EXACT {
            body
        } else {
            format!("{body} + O({var}^{})", self.prec)
        }
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("s"))
    }
}
