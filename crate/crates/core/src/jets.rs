//! Jet schemes at finite level and curve selection in them.
//!
//! A level-`M` jet of an arc in `n`-space is the coefficient vector `a_{i,j}`,
//! `x_i(t) = sum_{j <= M} a_{i,j} t^j`. Jet coordinates are ordered by `j` first, so
//! coordinate `j n + i` is `a_{i,j}` and the level-`M'` coordinates are a prefix of the
//! level-`M` ones. Equations are ordered the same way: coefficient of `t^0` for every base
//! equation, then of `t^1`, and so on.

use crate::coeff::Coeff;
use crate::curvesel::{curve_select, Arc, Certificate, CurveSelOptions};
use crate::elimination::IdealPresentation;
use crate::error::{Error, Result};
use crate::linear::Point;
use crate::monomial::ExponentVector;
use crate::series::{Ring, TruncatedSeries};

/// Jet coordinates of level `order` for `n`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetRing {
    pub base: Vec<TruncatedSeries>,
    pub n: usize,
    pub order: usize,
    pub ring: Ring,
}

impl JetRing {
    /// Jet ring of the variety cut out by `base`, which must be exact polynomials.
    pub fn new(base: &[TruncatedSeries], n: usize, order: usize) -> Result<Self> {
        let field = base.first().map(TruncatedSeries::field).unwrap_or(crate::coeff::Field::Rational);
        let mut trunc = 1;
        for h in base {
            if h.num_vars() != n {
                return Err(Error::DimensionMismatch { expected: n, got: h.num_vars() });
            }
            if !h.is_exact() {
                return Err(Error::NotPolynomial);
            }
            trunc = trunc.max(h.trunc()).max(h.degree().unwrap_or(0));
        }
        Ok(JetRing { base: base.to_vec(), n, order, ring: Ring::new(n * (order + 1), trunc, field) })
    }

    pub fn num_coordinates(&self) -> usize {
        self.n * (self.order + 1)
    }

    /// Index of `a_{i,j}`.
    pub fn coordinate(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    /// `name_j` for every jet coordinate, given names of the base variables.
    pub fn names(&self, base_names: &[String]) -> Vec<String> {
        (0..=self.order).flat_map(|j| base_names.iter().map(move |x| format!("{x}_{j}"))).collect()
    }

    /// Coefficients of `t^0 .. t^M` in `h(sum_j a_{.,j} t^j)` for each base equation `h`,
    /// zeros included.
    pub fn equations(&self) -> Result<Vec<TruncatedSeries>> {
        let nc = self.num_coordinates();
        let mut per_h = Vec::new();
        for h in &self.base {
            let deg = h.degree().unwrap_or(0);
            // a_{i,j} t^j has degree j + 1; keep every product of deg such factors
            let big = Ring::new(nc + 1, deg * (self.order + 1), self.ring.field);
            let images: Vec<TruncatedSeries> = (0..self.n)
                .map(|i| {
                    let terms = (0..=self.order).map(|j| {
                        let e = ExponentVector::from_pairs(vec![(self.coordinate(i, j), 1), (nc, j as u32)].into_iter().filter(|p| p.1 > 0).collect());
                        (e, self.ring.field.one())
                    });
                    TruncatedSeries::from_terms(big, terms)
                })
                .collect::<Result<_>>()?;
            let wide = h.retruncate(deg.max(h.trunc()));
            let sub = wide.substitute_with(&images, false)?;
            let coeffs = sub.coefficients_in(nc);
            let eqs: Vec<TruncatedSeries> = (0..=self.order)
                .map(|j| {
                    let c = coeffs.get(j).cloned().unwrap_or_else(|| TruncatedSeries::zero(big));
                    let terms: Vec<(ExponentVector, Coeff)> = c.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
                    TruncatedSeries::from_terms(self.ring, terms)
                })
                .collect::<Result<_>>()?;
            per_h.push(eqs);
        }
        Ok((0..=self.order).flat_map(|j| per_h.iter().map(move |eqs| eqs[j].clone())).collect())
    }
}

/// The jet equations of `V(base)` at level `order` over the jet coordinates.
pub fn jet_equations(base: &[TruncatedSeries], order: usize) -> Result<IdealPresentation> {
    let n = base.first().map(TruncatedSeries::num_vars).ok_or(Error::InvalidInput("no equations".into()))?;
    let jr = JetRing::new(base, n, order)?;
    IdealPresentation::new(jr.ring, jr.equations()?)
}

/// A jet `x_i(t) = sum_j c_{i,j} t^j` on the jet scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedArcPoint {
    /// `components[i][j]` is the coefficient of `t^j` in `x_i`.
    pub components: Vec<Vec<Coeff>>,
}

impl TruncatedArcPoint {
    /// Pads every component to `M + 1` coefficients and checks the jet equations.
    pub fn new(jr: &JetRing, mut components: Vec<Vec<Coeff>>) -> Result<Self> {
        if components.len() != jr.n {
            return Err(Error::DimensionMismatch { expected: jr.n, got: components.len() });
        }
        for (i, c) in components.iter_mut().enumerate() {
            while c.len() > jr.order + 1 && c.last().is_some_and(Coeff::is_zero) {
                c.pop();
            }
            if c.len() > jr.order + 1 {
                return Err(Error::NotAJet { index: i });
            }
            c.resize(jr.order + 1, jr.ring.field.zero());
        }
        let pt = TruncatedArcPoint { components };
        let coords = pt.coordinates(jr);
        for (k, e) in jr.equations()?.iter().enumerate() {
            if !e.evaluate(&coords)?.is_zero() {
                return Err(Error::GammaNotOnN { index: k });
            }
        }
        Ok(pt)
    }

    /// The coefficient vector in jet-coordinate order.
    pub fn coordinates(&self, jr: &JetRing) -> Vec<Coeff> {
        let mut out = vec![jr.ring.field.zero(); jr.num_coordinates()];
        for (i, c) in self.components.iter().enumerate() {
            for (j, x) in c.iter().enumerate() {
                out[jr.coordinate(i, j)] = x.clone();
            }
        }
        out
    }
}

/// `x_i(t, s) = sum_j a_{i,j}(s) t^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFamily {
    /// `coefficients[i][j]` is `a_{i,j}(s)`.
    pub coefficients: Vec<Vec<TruncatedSeries>>,
}

impl ArcFamily {
    /// `x_i(t, 0)`.
    pub fn special(&self) -> Vec<Vec<Coeff>> {
        self.coefficients.iter().map(|c| c.iter().map(TruncatedSeries::constant_term).collect()).collect()
    }
}

/// The selection problem on jet coordinates: `N` is the jet scheme cut by `n_extra`, `Z` the
/// jet scheme cut by `z_extra`, and the base point is `gamma`, checked to lie on `N`.
pub fn jet_selection_problem(
    jr: &JetRing,
    n_extra: &[TruncatedSeries],
    z_extra: &[TruncatedSeries],
    gamma: &TruncatedArcPoint,
) -> Result<(IdealPresentation, IdealPresentation, Point)> {
    let eqs = jr.equations()?;
    let coords = gamma.coordinates(jr);
    let ring = jr.ring.with_trunc(
        eqs.iter().chain(n_extra).chain(z_extra).filter_map(TruncatedSeries::degree).max().unwrap_or(1).max(jr.ring.trunc),
    );
    let lift = |g: &TruncatedSeries| -> Result<TruncatedSeries> {
        if g.num_vars() != jr.num_coordinates() {
            return Err(Error::DimensionMismatch { expected: jr.num_coordinates(), got: g.num_vars() });
        }
        Ok(g.retruncate(ring.trunc))
    };
    let n_gens: Vec<TruncatedSeries> = eqs.iter().chain(n_extra).map(lift).collect::<Result<_>>()?;
    for (k, g) in n_gens.iter().enumerate() {
        if !g.evaluate(&coords)?.is_zero() {
            return Err(Error::GammaNotOnN { index: k });
        }
    }
    let z_gens: Vec<TruncatedSeries> = eqs.iter().chain(z_extra).map(lift).collect::<Result<_>>()?;
    Ok((IdealPresentation::new(ring, n_gens)?, IdealPresentation::new(ring, z_gens)?, Point::new(coords)))
}

/// Curve selection in the level-`M` jet scheme of `V(base)`, through the jet `gamma`; see
/// [`jet_selection_problem`].
pub fn arc_curve_select(
    jr: &JetRing,
    n_extra: &[TruncatedSeries],
    z_extra: &[TruncatedSeries],
    gamma: &TruncatedArcPoint,
    opts: CurveSelOptions,
) -> Result<(ArcFamily, Arc, Certificate)> {
    let (n, z, a) = jet_selection_problem(jr, n_extra, z_extra, gamma)?;
    let (arc, cert) = curve_select(&n, &z, &a, opts)?;
    let coefficients =
        (0..jr.n).map(|i| (0..=jr.order).map(|j| arc.components[jr.coordinate(i, j)].clone()).collect()).collect();
    Ok((ArcFamily { coefficients }, arc, cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub valid: bool,
    pub generators: usize,
    /// Jet coordinates that occur in some equation.
    pub support: Vec<usize>,
    pub problems: Vec<String>,
}

/// Checks that `n_extra` is a finite list of polynomials in the level-`order` jet
/// coordinates of `n`-space and reports its support.
pub fn check_generically_stable_presentation(n_extra: &[TruncatedSeries], n: usize, order: usize) -> StabilityReport {
    let limit = n * (order + 1);
    let mut support = std::collections::BTreeSet::new();
    let mut problems = Vec::new();
    for (k, g) in n_extra.iter().enumerate() {
        if !g.is_exact() {
            problems.push(format!("equation {k} is not a polynomial"));
        }
        for v in 0..g.num_vars() {
            if g.involves(v) {
                if v >= limit {
                    problems.push(format!("equation {k} uses coordinate {v}, beyond level {order}"));
                }
                support.insert(v);
            }
        }
    }
    StabilityReport { valid: problems.is_empty(), generators: n_extra.len(), support: support.into_iter().collect(), problems }
}
