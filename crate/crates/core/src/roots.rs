//! Roots in the base field of univariate polynomials, as needed by Newton-Puiseux.
//!
//! Polynomials are coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};

/// Largest |integer| whose divisors are enumerated when searching rational roots.
pub const RATIONAL_ROOT_LIMIT: u64 = 1 << 48;
const BRUTE_FORCE_PRIME: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct roots with multiplicity, in canonical order.
    pub roots: Vec<(Coeff, usize)>,
    /// What is left after dividing out the roots; degree 0 when the polynomial splits.
    pub residual: Vec<Coeff>,
}

impl RootSet {
    pub fn splits(&self) -> bool {
        degree(&self.residual) == Some(0)
    }
}

pub fn trim(p: &mut Vec<Coeff>) {
    while p.last().is_some_and(Coeff::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[Coeff]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Coeff], x: &Coeff) -> Coeff {
    let field = x.field();
    p.iter().rev().fold(field.zero(), |acc, c| &(&acc * x) + c)
}

/// Quotient and remainder; `b` must be nonzero.
fn divrem(a: &[Coeff], b: &[Coeff]) -> (Vec<Coeff>, Vec<Coeff>) {
    let db = degree(b).expect("division by zero polynomial");
    let field = b[db].field();
    let lead_inv = b[db].inv().expect("nonzero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    for top in (db..r.len()).rev() {
        let c = &r[top] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b[..=db].iter().enumerate() {
            r[top - db + i] = &r[top - db + i] - &(&c * bi);
        }
        q[top - db] = c;
    }
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

fn monic(p: &[Coeff]) -> Vec<Coeff> {
    let d = degree(p).expect("nonzero");
    let inv = p[d].inv().expect("nonzero");
    p[..=d].iter().map(|c| c * &inv).collect()
}

fn gcd(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = divrem(&a, &b).1;
        a = b;
        b = r;
    }
    monic(&a)
}

fn mulmod(a: &[Coeff], b: &[Coeff], m: &[Coeff]) -> Vec<Coeff> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let field = m[0].field();
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    divrem(&out, m).1
}

fn powmod(base: &[Coeff], mut e: u64, m: &[Coeff]) -> Vec<Coeff> {
    let field = m[0].field();
    let mut result = divrem(&[field.one()], m).1;
    let mut b = divrem(base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m);
        }
        b = mulmod(&b, &b, m);
        e >>= 1;
    }
    result
}

/// Divides out `x - r` as often as it divides; returns the multiplicity.
fn strip_root(p: &mut Vec<Coeff>, r: &Coeff) -> usize {
    let field = r.field();
    let lin = vec![-r, field.one()];
    let mut mult = 0;
    while degree(p).is_some_and(|d| d > 0) && eval(p, r).is_zero() {
        *p = divrem(p, &lin).0;
        mult += 1;
    }
    mult
}

/// All roots of a nonzero polynomial in its coefficient field.
pub fn roots(p: &[Coeff]) -> Result<RootSet> {
    let d = degree(p).ok_or_else(|| Error::InvalidInput("roots of the zero polynomial".into()))?;
    let field = p[d].field();
    let candidates = match field {
        Field::Rational => rational_candidates(&p[..=d])?,
        Field::Prime(q) => prime_field_roots(&p[..=d], q),
    };
    let mut residual = p[..=d].to_vec();
    let mut found = Vec::new();
    for c in candidates {
        let m = strip_root(&mut residual, &c);
        if m > 0 {
            found.push((c, m));
        }
    }
    found.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(RootSet { roots: found, residual })
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let v = n.to_u64().filter(|v| *v <= RATIONAL_ROOT_LIMIT).ok_or_else(|| {
        Error::RootSearchLimit(format!("coefficient {n} too large to enumerate rational root candidates"))
    })?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            small.push(BigInt::from(i));
            if i * i != v {
                large.push(BigInt::from(v / i));
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn rational_candidates(p: &[Coeff]) -> Result<Vec<Coeff>> {
    // clear denominators
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.to_ratio().1));
    let ints: Vec<BigInt> = p.iter().map(|c| {
        let (n, d) = c.to_ratio();
        n * (&lcm / d)
    }).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        out.push(Field::Rational.zero());
    }
    if low == ints.len() - 1 {
        return Ok(out);
    }
    let nums = divisors(&ints[low])?;
    let dens = divisors(ints.last().expect("nonempty"))?;
    for num in &nums {
        for den in &dens {
            if num.gcd(den).is_one() {
                for sign in [1, -1] {
                    out.push(Field::Rational.from_ratio(&(num * sign), den).expect("nonzero denominator"));
                }
            }
        }
    }
    Ok(out)
}

fn prime_field_roots(p: &[Coeff], q: u64) -> Vec<Coeff> {
    let field = Field::Prime(q);
    if q <= BRUTE_FORCE_PRIME {
        return (0..q as i64).map(|v| field.from_i64(v)).filter(|c| eval(p, c).is_zero()).collect();
    }
    let m = monic(p);
    let x = vec![field.zero(), field.one()];
    // product of the distinct linear factors: gcd(p, x^q - x)
    let mut xq = powmod(&x, q, &m);
    xq.resize(xq.len().max(2), field.zero());
    xq[1] = &xq[1] - &field.one();
    trim(&mut xq);
    let g = gcd(&m, &xq);
    let mut out = Vec::new();
    split_linear(&g, q, &mut out);
    out
}

/// Equal-degree splitting of a squarefree product of linear factors, with the shifts
/// `x + delta` for delta = 0, 1, 2, .. so that the result is deterministic.
fn split_linear(g: &[Coeff], q: u64, out: &mut Vec<Coeff>) {
    let field = Field::Prime(q);
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(-&(&g[0] * &g[1].inv().expect("nonzero"))),
        Some(_) => {
            for delta in 0.. {
                let shifted = vec![field.from_i64(delta), field.one()];
                let mut h = powmod(&shifted, (q - 1) / 2, g);
                h.resize(h.len().max(1), field.zero());
                h[0] = &h[0] - &field.one();
                trim(&mut h);
                if h.is_empty() {
                    continue;
                }
                let f = gcd(g, &h);
                let df = degree(&f).unwrap_or(0);
                if df > 0 && Some(df) < degree(g) {
                    let rest = divrem(g, &f).0;
                    split_linear(&f, q, out);
                    split_linear(&rest, q, out);
                    return;
                }
            }
        }
    }
}

/// Human-readable rendering in the variable `c`.
pub fn render(p: &[Coeff]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        parts.push(match i {
            0 => format!("{c}"),
            1 => format!("({c})*c"),
            _ => format!("({c})*c^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: Field, c: &[i64]) -> Vec<Coeff> {
        c.iter().map(|x| field.from_i64(*x)).collect()
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let q = Field::Rational;
        // (c - 1)^2 (2c + 3) (c^2 + 1)
        let mut p = poly(q, &[1]);
        for f in [poly(q, &[-1, 1]), poly(q, &[-1, 1]), poly(q, &[3, 2]), poly(q, &[1, 0, 1])] {
            let mut out = vec![q.zero(); p.len() + f.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
            p = out;
        }
        let rs = roots(&p).unwrap();
        let three_halves = q.from_ratio(&BigInt::from(-3), &BigInt::from(2)).unwrap();
        assert_eq!(rs.roots, vec![(q.one(), 2), (three_halves, 1)]);
        assert!(!rs.splits());
        assert_eq!(degree(&rs.residual), Some(2));
    }

    #[test]
    fn irrational_square_root() {
        let rs = roots(&poly(Field::Rational, &[-3, 0, 1])).unwrap();
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn canonical_order_prefers_positive() {
        let rs = roots(&poly(Field::Rational, &[-1, 0, 1])).unwrap();
        let q = Field::Rational;
        assert_eq!(rs.roots, vec![(q.one(), 1), (q.from_i64(-1), 1)]);
    }

    #[test]
    fn prime_field_small_and_large() {
        let small = Field::prime(7).unwrap();
        // c^2 - 2 = (c - 3)(c - 4) mod 7
        let rs = roots(&poly(small, &[-2, 0, 1])).unwrap();
        assert_eq!(rs.roots, vec![(small.from_i64(3), 1), (small.from_i64(4), 1)]);
        let big = Field::prime(1_000_000_007).unwrap();
        // (c - 5)(c + 11)(c - 123456)^2
        let factors = [poly(big, &[-5, 1]), poly(big, &[11, 1]), poly(big, &[-123456, 1]), poly(big, &[-123456, 1])];
        let mut p = poly(big, &[1]);
        for f in factors {
            let mut out = vec![big.zero(); p.len() + f.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
            p = out;
        }
        let rs = roots(&p).unwrap();
        assert_eq!(rs.roots, vec![(big.from_i64(5), 1), (big.from_i64(123456), 2), (big.from_i64(-11), 1)]);
        assert!(rs.splits());
    }

    #[test]
    fn huge_coefficients_hit_the_limit() {
        let q = Field::Rational;
        let p = vec![q.from_bigint(&(BigInt::from(1u64 << 60) + 1)), q.zero(), q.one()];
        assert!(matches!(roots(&p), Err(Error::RootSearchLimit(_))));
    }
}
