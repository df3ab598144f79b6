//! Exact coefficient fields: the rationals and prime fields F_p.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest prime modulus accepted. Products are reduced through `u128`.
pub const MAX_PRIME: u64 = (1 << 62) - 57;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, String> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(format!("{p} is not a supported prime"));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Fp { v: (n as i128).rem_euclid(p as i128) as u64, p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Coeff::Fp { v: r.to_u64().unwrap(), p }
            }
        }
    }

    /// `num/den` in this field; `None` when `den` vanishes in it.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.from_bigint(num) * &d.inv()?)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// An element of Q or of F_p. F_p elements carry their modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Q(_) => Field::Rational,
            Coeff::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        match self {
            Coeff::Q(q) if !q.is_zero() => Some(Coeff::Q(q.recip())),
            Coeff::Fp { v, p } if *v != 0 => Some(Coeff::Fp { v: pow_mod(*v, p - 2, *p), p: *p }),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerator and denominator: lowest terms with positive denominator over Q,
    /// the canonical representative in `[0, p)` over F_p.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Coeff::Q(q) => (q.numer().clone(), q.denom().clone()),
            Coeff::Fp { v, .. } => (BigInt::from(*v), BigInt::one()),
        }
    }

    /// Sort key used wherever a deterministic choice among field elements is made:
    /// over Q by height `max(|num|, den)`, then absolute value, positives first;
    /// over F_p by representative.
    pub fn canonical_cmp(&self, other: &Coeff) -> Ordering {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => {
                let ha = a.numer().abs().max(a.denom().clone());
                let hb = b.numer().abs().max(b.denom().clone());
                ha.cmp(&hb)
                    .then_with(|| a.abs().cmp(&b.abs()))
                    .then_with(|| b.is_positive().cmp(&a.is_positive()))
            }
            (Coeff::Fp { v: a, .. }, Coeff::Fp { v: b, .. }) => a.cmp(b),
            _ => panic!("comparing coefficients from different fields"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $q:expr, $fp:expr) => {
        impl<'a> $trait<&'a Coeff> for &'a Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &'a Coeff) -> Coeff {
                match (self, rhs) {
                    (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q($q(a, b)),
                    (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, p: p2 }) => {
                        debug_assert_eq!(p, p2);
                        Coeff::Fp { v: $fp(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixing coefficients from different fields"),
                }
            }
        }
        impl $trait<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| {
    ((a as u128 + b as u128) % p as u128) as u64
});
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: u64, b: u64, p: u64| {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
});
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp { v, p } => Coeff::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Coeff::Fp { v: 100, p: 101 });
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!((&a + &f.one()).is_zero());
        assert_eq!(f.from_i64(7).inv().unwrap(), f.from_i64(29));
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(10007).is_ok());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        let (n, d) = q.to_ratio();
        assert_eq!((n, d), (BigInt::from(-3), BigInt::from(2)));
        assert!(Field::Rational.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
    }

    #[test]
    fn canonical_order_prefers_small_positive() {
        let f = Field::Rational;
        let mut v = vec![f.from_i64(-1), f.from_i64(2), f.from_i64(1), f.from_i64(-2)];
        v.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(v, vec![f.from_i64(1), f.from_i64(-1), f.from_i64(2), f.from_i64(-2)]);
    }
}
