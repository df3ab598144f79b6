//! Constructive curve selection over truncated formal power series.
//!
//! The crate is organised bottom-up:
//!
//! * [`coeff`], [`monomial`], [`series`], [`linear`]: exact coefficients and the ring
//!   `K[[x_1..x_n]] / m^{T+1}` with substitution and linear changes of variables.
//! * [`weierstrass`]: regularity, regularizing changes, division and preparation.
//! * [`elimination`]: resultant-based projection of ideals and projection chains.
//! * [`puiseux`], [`curvesel`]: Newton-Puiseux lifting and the certified arc search.
//! * [`jets`]: jet-scheme equations and curve selection on jet coordinates.

pub mod coeff;
pub mod curvesel;
pub mod elimination;
pub mod error;
pub mod jets;
pub mod linear;
pub mod matrix;
pub mod monomial;
pub mod puiseux;
pub mod roots;
pub mod series;
pub mod useries;
pub mod weierstrass;

pub use coeff::{Coeff, Field};
pub use curvesel::{curve_select, select_line, verify_certificate, Arc, Certificate, CurveSelOptions, VerificationReport};
pub use elimination::{eliminate_variable, evaluate_at_zero, project_chain, IdealPresentation, ProjectionChain};
pub use error::{Error, Result};
pub use jets::{arc_curve_select, check_generically_stable_presentation, jet_equations, jet_selection_problem, ArcFamily, JetRing, TruncatedArcPoint};
pub use linear::{apply_linear_change, translate_point, LinearChange, Point};
pub use monomial::ExponentVector;
pub use series::{Ring, TruncatedSeries};
pub use weierstrass::{regular_order, regularize, wdivide, wprepare, WeierstrassFactorization};
