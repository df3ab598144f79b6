//! Newton-Puiseux: roots of positive valuation of `Q(y) = sum q_i(s) y^i`, with every
//! coefficient known only to a finite precision in `s`.
//!
//! A root is returned as a series `y(t)` together with a ramification index `e`, meaning
//! `Q(t^e, y(t)) = 0` to the precision recorded on `y`. A root whose precision is zero is a
//! placeholder for roots the available precision cannot resolve.

use num_integer::Integer;

use crate::coeff::{Coeff, Field};
use crate::error::Result;
use crate::roots::{degree, render, roots};
use crate::useries::USeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxRoot {
    pub ramification: usize,
    pub series: USeries,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PuiseuxRoots {
    pub roots: Vec<PuiseuxRoot>,
    /// Edge polynomials with roots outside the coefficient field.
    pub irrational: Vec<String>,
}

/// Roots of positive valuation of `sum q[i] y^i`. Series lengths are capped at `cap`.
pub fn positive_valuation_roots(q: &[USeries], cap: usize) -> Result<PuiseuxRoots> {
    let q: Vec<USeries> = q.iter().map(|c| c.truncate(cap)).collect();
    let mut out = PuiseuxRoots::default();
    let field = q.first().map(USeries::field).unwrap_or(Field::Rational);
    for (e, y) in solve(&q, cap, 0, field, &mut out.irrational)? {
        out.roots.push(PuiseuxRoot { ramification: e, series: y });
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

fn solve(q: &[USeries], cap: usize, depth: usize, field: Field, irrational: &mut Vec<String>) -> Result<Vec<(usize, USeries)>> {
    let unknown = || vec![(1, USeries::unknown(field))];
    if depth > 4 * cap + 8 {
        return Ok(unknown());
    }
    // number of roots of positive valuation
    let Some(m) = q.iter().position(|c| !c.coeff(0).is_zero()) else { return Ok(unknown()) };
    if m == 0 {
        return Ok(Vec::new());
    }
    if q[..m].iter().any(|c| c.prec() == 0) {
        return Ok(unknown());
    }
    if m == 1 {
        return Ok(vec![(1, hensel(q, cap, field))]);
    }
    let mut found = Vec::new();
    let i0 = q.iter().position(|c| !c.is_zero_at_prec()).expect("q[m] is nonzero");
    let v = |i: usize| q[i].valuation().expect("known nonzero");
    if i0 > 0 {
        // roots of valuation at least min (prec_i - v_i0) / (i0 - i): zero to that precision
        let vi0 = v(i0) as i64;
        let bound = (0..i0).map(|i| (q[i].prec() as i64 - vi0).div_euclid((i0 - i) as i64)).min().expect("i0 > 0");
        found.push((1, USeries::from_coeffs(field, Vec::new(), bound.max(0) as usize)));
    }
    // lower convex hull of the known points between i0 and m
    let pts: Vec<(usize, usize)> = (i0..=m).filter(|&i| !q[i].is_zero_at_prec()).map(|i| (i, v(i))).collect();
    let mut hull: Vec<(usize, usize)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a-p
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64) - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    for w in hull.windows(2) {
        let ((ia, va), (ib, vb)) = (w[0], w[1]);
        let (dv, di) = (va - vb, ib - ia);
        let g = dv.gcd(&di);
        let (p, qd) = (dv / g, di / g);
        let lambda = qd * va + p * ia;
        // every coefficient of unknown value must sit strictly above the edge's line
        let uncertain = q.iter().enumerate().any(|(i, c)| c.is_zero_at_prec() && qd * c.prec() + p * i <= lambda);
        if uncertain {
            found.extend(unknown());
            continue;
        }
        let edge: Vec<Coeff> = (ia..=ib)
            .map(|i| if !q[i].is_zero_at_prec() && qd * v(i) + p * i == lambda { q[i].coeff(v(i)) } else { field.zero() })
            .collect();
        let rs = roots(&edge)?;
        if degree(&rs.residual).is_some_and(|d| d > 0) {
            irrational.push(render(&rs.residual));
        }
        for (c, _) in rs.roots {
            let next = substitute(q, &c, p, qd, lambda, cap, field);
            for (e, z) in solve(&next, cap, depth + 1, field, irrational)? {
                let y = USeries::constant(c.clone()).add(&z).shift_up(p * e).truncate(cap);
                found.push((qd * e, y));
            }
        }
    }
    Ok(found)
}

/// Coefficients of `t^{-lambda} Q(t^qd, t^p (c + z))` as a polynomial in `z`.
fn substitute(q: &[USeries], c: &Coeff, p: usize, qd: usize, lambda: usize, cap: usize, field: Field) -> Vec<USeries> {
    let k = q.len() - 1;
    let scaled: Vec<USeries> = q.iter().enumerate().map(|(i, qi)| qi.ramify(qd).shift_up(p * i)).collect();
    (0..=k)
        .map(|j| {
            let mut acc = USeries::zero(field);
            for (i, si) in scaled.iter().enumerate().skip(j) {
                let factor = &field.from_i64(binomial(i, j)) * &c.pow((i - j) as u32);
                acc = acc.add(&si.scale(&factor));
            }
            acc.shift_down(lambda).truncate(cap)
        })
        .collect()
}

/// The unique root of positive valuation when `q_1` is a unit and `q_0(0) = 0`, by the
/// fixed point `z = -(q_0 + sum_{j>=2} q_j z^j) / q_1`.
fn hensel(q: &[USeries], cap: usize, field: Field) -> USeries {
    let vz = q[0].val_lower().max(1);
    let mut len = q[0].prec().min(q[1].prec().saturating_add(vz)).min(cap);
    for (j, qj) in q.iter().enumerate().skip(2) {
        len = len.min(qj.prec().saturating_add(j * vz));
    }
    let exact = |s: &USeries| USeries::from_coeffs(field, s.coeffs().to_vec(), len);
    let reps: Vec<USeries> = q.iter().map(exact).collect();
    let inv = reps[1].inverse(len).expect("unit");
    let mut z = USeries::from_coeffs(field, Vec::new(), len);
    for _ in 0..=len {
        let mut rhs = reps[0].clone();
        let mut zp = z.clone();
        for qj in reps.iter().skip(2) {
            zp = zp.mul(&z);
            rhs = rhs.add(&qj.mul(&zp));
        }
        let next = USeries::from_coeffs(field, rhs.mul(&inv).neg().coeffs().to_vec(), len);
        if next == z {
            break;
        }
        z = next;
    }
    z
}
