//! Turns parsed expressions into exact series.

use csl_core::{Coeff, Error, Field, Point, Result, Ring, TruncatedSeries};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::parser::{Expr, FieldSpec, Rational};

/// Largest total degree a script polynomial may have.
pub const MAX_DEGREE: usize = 4096;

pub fn field(spec: &FieldSpec) -> Result<Field> {
    match spec {
        FieldSpec::Rational => Ok(Field::Rational),
        FieldSpec::Prime(p) => {
            let p = p.to_u64().ok_or_else(|| Error::InvalidInput(format!("modulus {p} does not fit in 64 bits")))?;
            Field::prime(p).map_err(Error::InvalidInput)
        }
    }
}

pub fn coeff(field: Field, r: &Rational) -> Result<Coeff> {
    field.from_ratio(&r.num, &r.den).ok_or_else(|| Error::InvalidInput(format!("{}/{} is not defined in {field}", r.num, r.den)))
}

pub fn point(field: Field, coords: &[Rational]) -> Result<Point> {
    Ok(Point::new(coords.iter().map(|r| coeff(field, r)).collect::<Result<_>>()?))
}

/// Maps `(var, level)` to a variable index of the target ring.
pub type VarMap<'a> = dyn Fn(usize, Option<usize>) -> Result<usize> + 'a;

fn degree(e: &Expr) -> Result<usize> {
    e.degree_bound()
        .to_usize()
        .filter(|d| *d <= MAX_DEGREE)
        .ok_or_else(|| Error::InvalidInput(format!("polynomial degree exceeds {MAX_DEGREE}")))
}

/// The ring for a family of expressions: truncation at least `min_trunc` and large enough
/// that every polynomial is represented exactly.
pub fn ring_for(field: Field, num_vars: usize, min_trunc: usize, exprs: &[&Expr]) -> Result<Ring> {
    let mut t = min_trunc;
    for e in exprs {
        t = t.max(degree(e)?);
    }
    Ok(Ring::new(num_vars, t, field))
}

pub fn eval(e: &Expr, ring: Ring, map: &VarMap) -> Result<TruncatedSeries> {
    let f = ring.field;
    Ok(match e {
        Expr::Int(n) => TruncatedSeries::constant(ring, f.from_bigint(n)),
        Expr::Var { var, level } => TruncatedSeries::var(ring, map(*var, *level)?),
        Expr::Neg(a) => eval(a, ring, map)?.neg(),
        Expr::Add(a, b) => eval(a, ring, map)?.add(&eval(b, ring, map)?)?,
        Expr::Sub(a, b) => eval(a, ring, map)?.sub(&eval(b, ring, map)?)?,
        Expr::Mul(a, b) => eval(a, ring, map)?.mul(&eval(b, ring, map)?)?,
        Expr::Div(a, d) => {
            let inv = f
                .from_ratio(&BigInt::one(), d)
                .ok_or_else(|| Error::InvalidInput(format!("division by {d}, which is zero in {f}")))?;
            eval(a, ring, map)?.scale(&inv)
        }
        Expr::Pow(a, k) => {
            let k = k.to_u32().filter(|k| *k as usize <= MAX_DEGREE).ok_or_else(|| Error::InvalidInput(format!("exponent {k} too large")))?;
            eval(a, ring, map)?.pow(k)
        }
    })
}

/// Plain ring variables only.
pub fn base_vars(num_vars: usize) -> impl Fn(usize, Option<usize>) -> Result<usize> {
    move |v, level| match level {
        None if v < num_vars => Ok(v),
        None => Err(Error::InvalidInput(format!("variable index {v} out of range"))),
        Some(_) => Err(Error::InvalidInput("jet coordinates are only allowed in `arcsel` extra equations".into())),
    }
}

/// Jet coordinates `x_j` at index `j n + i`; a bare variable means its level-0 coordinate.
pub fn jet_vars(num_vars: usize, order: usize) -> impl Fn(usize, Option<usize>) -> Result<usize> {
    move |v, level| {
        let j = level.unwrap_or(0);
        if j > order {
            return Err(Error::InvalidInput(format!("jet coordinate of level {j} exceeds the level {order}")));
        }
        Ok(j * num_vars + v)
    }
}
