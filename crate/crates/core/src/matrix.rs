//! Division-free linear algebra over commutative rings with nilpotents.
//!
//! Truncated series rings are not domains, so fraction-free elimination (Bareiss) is
//! unavailable. The characteristic polynomial is computed with Berkowitz's algorithm,
//! which uses only ring operations; determinant and adjugate follow from Cayley-Hamilton.

use crate::coeff::Coeff;
use crate::series::TruncatedSeries;

pub trait RingElem: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for TruncatedSeries {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.ring())
    }
    fn add(&self, o: &Self) -> Self {
        TruncatedSeries::add(self, o).expect("matrix entries share a ring")
    }
    fn sub(&self, o: &Self) -> Self {
        TruncatedSeries::sub(self, o).expect("matrix entries share a ring")
    }
    fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::mul(self, o).expect("matrix entries share a ring")
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
}

impl RingElem for Coeff {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn mat_vec<R: RingElem>(m: &[Vec<R>], v: &[R], zero: &R) -> Vec<R> {
    m.iter().map(|row| row.iter().zip(v).fold(zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

/// Coefficients `[1, c_1, .., c_n]` of `det(t I - M) = t^n + c_1 t^{n-1} + .. + c_n`.
pub fn charpoly<R: RingElem>(m: &[Vec<R>]) -> Vec<R> {
    let n = m.len();
    assert!(n > 0, "charpoly of an empty matrix");
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut p = vec![one.clone(), m[0][0].neg()];
    for r in 1..n {
        // M_{r+1} = [[A, s], [row, a]] with A = M_r
        let a = &m[r][r];
        let s: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        let row: Vec<R> = (0..r).map(|j| m[r][j].clone()).collect();
        let block: Vec<Vec<R>> = (0..r).map(|i| m[i][..r].to_vec()).collect();
        // first column of the Toeplitz matrix: 1, -a, -row*s, -row*A*s, ..
        let mut col = vec![one.clone(), a.neg()];
        let mut v = s.clone();
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)));
            col.push(dot.neg());
            v = mat_vec(&block, &v, &zero);
        }
        // (r+2) x (r+1) lower-triangular Toeplitz times p (length r+1)
        let mut next = vec![zero.clone(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j {
                    *slot = slot.add(&col[i - j].mul(pj));
                }
            }
        }
        p = next;
    }
    p
}

pub fn determinant<R: RingElem>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let p = charpoly(m);
    if n.is_multiple_of(2) {
        p[n].clone()
    } else {
        p[n].neg()
    }
}

/// `adj(M) * v` via `adj(M) = (-1)^{n-1} (M^{n-1} + c_1 M^{n-2} + .. + c_{n-1} I)`.
pub fn adjugate_times<R: RingElem>(m: &[Vec<R>], v: &[R]) -> Vec<R> {
    let n = m.len();
    let p = charpoly(m);
    let zero = m[0][0].zero_like();
    // Horner: w = M w + c_j v
    let mut w = v.to_vec();
    for c in p.iter().take(n).skip(1) {
        let mw = mat_vec(m, &w, &zero);
        w = mw.iter().zip(v).map(|(a, b)| a.add(&c.mul(b))).collect();
    }
    if n.is_multiple_of(2) {
        w.iter().map(RingElem::neg).collect()
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        rows.iter().map(|r| r.iter().map(|x| Field::Rational.from_i64(*x)).collect()).collect()
    }

    /// Independent oracle: Gaussian elimination over Q.
    fn gauss_det(m: &[Vec<Coeff>]) -> Coeff {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = Field::Rational.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Field::Rational.zero() };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv().unwrap();
            let pivot = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                let f = &row[c] * &inv;
                for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        det
    }

    #[test]
    fn determinant_matches_elimination() {
        let cases = [
            mat(&[&[2]]),
            mat(&[&[1, 2], &[3, 4]]),
            mat(&[&[0, 1, 2], &[3, 0, 5], &[7, 8, 0]]),
            mat(&[&[1, -2, 3, 0], &[4, 0, 6, -1], &[7, 8, 9, 2], &[0, 1, 0, 5]]),
            mat(&[&[0, 0, 1, 0, 2], &[1, 0, 0, 3, 0], &[0, 4, 0, 0, 1], &[2, 0, 1, 0, 0], &[0, 1, 0, 1, 1]]),
        ];
        for m in &cases {
            assert_eq!(determinant(m), gauss_det(m));
        }
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let m = mat(&[&[1, -2, 3, 0], &[4, 0, 6, -1], &[7, 8, 9, 2], &[0, 1, 0, 5]]);
        let e0: Vec<Coeff> = (0..4).map(|i| Field::Rational.from_i64((i == 0) as i64)).collect();
        let b = adjugate_times(&m, &e0);
        let mb = mat_vec(&m, &b, &Field::Rational.zero());
        let det = determinant(&m);
        assert_eq!(mb[0], det);
        assert!(mb[1..].iter().all(Coeff::is_zero));
    }
}
