//! Selects a certified arc on the cusp `x^2 = y^3` leaving the origin.

use csl_core::{curve_select, verify_certificate, CurveSelOptions, ExponentVector, Field, IdealPresentation, Point, Ring, TruncatedSeries};

fn main() -> Result<(), csl_core::Error> {
    let q = Field::Rational;
    let ring = Ring::new(2, 8, q);
    let cusp = TruncatedSeries::from_terms(
        ring,
        [(ExponentVector::from_dense(&[2, 0]), q.one()), (ExponentVector::from_dense(&[0, 3]), q.from_i64(-1))],
    )?;
    let n = IdealPresentation::new(ring, vec![cusp])?;
    let z = IdealPresentation::new(ring, vec![TruncatedSeries::var(ring, 0), TruncatedSeries::var(ring, 1)])?;
    let a = Point::origin(2, q);
    let (arc, cert) = curve_select(&n, &z, &a, CurveSelOptions { ts: Some(12), ..Default::default() })?;
    for (name, c) in ["x", "y"].iter().zip(&arc.components) {
        println!("{name}(s) = {}", c.render(&["s".to_string()]));
    }
    println!("ramification {}, witness Z[{}]", arc.ramification, cert.witness_index);
    println!("verified: {}", verify_certificate(&n, &z, &a, &arc, &cert).passed());
    Ok(())
}
