//! Linear changes of coordinates and base points.

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::series::{Ring, TruncatedSeries};

/// An invertible linear substitution `x -> A x`. Applying it to `f` yields `f(A x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Vec<Vec<Coeff>>,
    inverse: Vec<Vec<Coeff>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Coeff>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.iter().map(Vec::len).find(|l| *l != n).unwrap() });
        }
        let inverse = invert(&matrix).ok_or(Error::SingularChange)?;
        Ok(LinearChange { matrix, inverse })
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let m: Vec<Vec<Coeff>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        LinearChange { matrix: m.clone(), inverse: m }
    }

    /// Identity with column `d` replaced by `v`, so `e_d -> v`. Needs `v[d] != 0`.
    pub fn column_replacement(d: usize, v: &[Coeff]) -> Result<Self> {
        let n = v.len();
        let field = v.first().map(|c| c.field()).ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let mut m = Self::identity(n, field).matrix;
        for i in 0..n {
            m[i][d] = v[i].clone();
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Coeff>] {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &[Vec<Coeff>] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() }))
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// Column `d` of the matrix: the image of the `d`-th basis vector.
    pub fn column(&self, d: usize) -> Vec<Coeff> {
        self.matrix.iter().map(|row| row[d].clone()).collect()
    }

    /// `A y` for a vector of values in any ring where coefficients act by scaling.
    pub fn apply_to_vector(&self, y: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: y.len() });
        }
        let ring = y[0].ring();
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(y).try_fold(TruncatedSeries::zero(ring), |acc, (a, yi)| acc.add(&yi.scale(a)))
            })
            .collect()
    }
}

/// `f(A x)`.
pub fn apply_linear_change(f: &TruncatedSeries, change: &LinearChange) -> Result<TruncatedSeries> {
    if change.dim() != f.num_vars() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), got: change.dim() });
    }
    let ring = f.ring();
    let vars: Vec<TruncatedSeries> = (0..ring.num_vars).map(|i| TruncatedSeries::var(ring, i)).collect();
    let images = change.apply_to_vector(&vars)?;
    let out = f.substitute(&images)?;
    // a linear substitution preserves degrees, so nothing new is lost
    Ok(if f.is_exact() { out } else { out.mark_inexact() })
}

fn invert(m: &[Vec<Coeff>]) -> Option<Vec<Vec<Coeff>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = m[0][0].field();
    let mut a: Vec<Vec<Coeff>> = m.to_vec();
    let mut inv: Vec<Vec<Coeff>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&factor * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
                }
            }
        }
    }
    Some(inv)
}

/// A K-valued point of affine space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coordinates: Vec<Coeff>,
}

impl Point {
    pub fn new(coordinates: Vec<Coeff>) -> Self {
        Point { coordinates }
    }

    pub fn origin(n: usize, field: Field) -> Self {
        Point { coordinates: vec![field.zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coordinates.iter().all(Coeff::is_zero)
    }
}

/// `f(x + a)`: moves the point `a` to the origin. `f` must be an exact polynomial.
pub fn translate_point(f: &TruncatedSeries, a: &Point) -> Result<TruncatedSeries> {
    if a.dim() != f.num_vars() {
        return Err(Error::DimensionMismatch { expected: f.num_vars(), got: a.dim() });
    }
    if a.is_origin() {
        return Ok(f.clone());
    }
    if !f.is_exact() {
        return Err(Error::NotPolynomial);
    }
    let ring: Ring = f.ring();
    let images: Vec<TruncatedSeries> = (0..ring.num_vars)
        .map(|i| TruncatedSeries::var(ring, i).add(&TruncatedSeries::constant(ring, a.coordinates[i].clone())))
        .collect::<Result<_>>()?;
    f.substitute_with(&images, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ExponentVector;

    fn poly(ring: Ring, terms: &[(&[u32], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(ring, terms.iter().map(|(e, c)| (ExponentVector::from_dense(e), ring.field.from_i64(*c))))
            .unwrap()
    }

    #[test]
    fn shear_of_product() {
        let f = Field::Rational;
        let r = Ring::new(2, 6, f);
        let xy = poly(r, &[(&[1, 1], 1)]);
        // x2 -> x2 + x1
        let a = LinearChange::new(vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]]).unwrap();
        let g = apply_linear_change(&xy, &a).unwrap();
        assert_eq!(g, poly(r, &[(&[2, 0], 1), (&[1, 1], 1)]));
        assert_eq!(apply_linear_change(&g, &a.inverse()).unwrap(), xy);
    }

    #[test]
    fn singular_and_mismatched_changes() {
        let f = Field::Rational;
        assert_eq!(LinearChange::new(vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]), Err(Error::SingularChange));
        let r = Ring::new(3, 4, f);
        let err = apply_linear_change(&TruncatedSeries::var(r, 0), &LinearChange::identity(2, f));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn translations() {
        let f = Field::Rational;
        let r = Ring::new(2, 6, f);
        let cusp = poly(r, &[(&[2, 0], 1), (&[0, 3], -1)]);
        assert_eq!(translate_point(&cusp, &Point::origin(2, f)).unwrap(), cusp);
        let x = TruncatedSeries::var(r, 0);
        let a = Point::new(vec![f.one(), f.zero()]);
        assert_eq!(translate_point(&x, &a).unwrap(), poly(r, &[(&[0, 0], 1), (&[1, 0], 1)]));
        let x2 = poly(r, &[(&[2, 0], 1)]);
        let c = Point::new(vec![f.from_i64(5), f.zero()]);
        assert_eq!(translate_point(&x2, &c).unwrap(), poly(r, &[(&[2, 0], 1), (&[1, 0], 10), (&[0, 0], 25)]));
        let truncated = x.add(&TruncatedSeries::one(r)).unwrap().inverse().unwrap();
        assert_eq!(translate_point(&truncated, &a), Err(Error::NotPolynomial));
    }
}
