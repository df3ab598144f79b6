use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series live in different rings ({0})")]
    MismatchedRing(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("linear change is not invertible")]
    SingularChange,

    #[error("substitution image for variable {var} has a nonzero constant term")]
    SubstitutionNotFinite { var: usize },

    #[error("series has been truncated and cannot be translated exactly")]
    NotPolynomial,

    #[error("series is zero modulo m^{}", .trunc + 1)]
    ZeroSeries { trunc: usize },

    #[error("series is not regular in variable {var}")]
    NotRegular { var: usize },

    #[error("no admissible integer vector with max-norm <= {bound}")]
    SearchExhausted { bound: u64 },

    #[error("projection did not terminate within {budget} steps")]
    BudgetExhausted { budget: usize },

    #[error("Z contains N at truncation order {trunc}: the projected Z has no nonzero generator")]
    ZIsEverything { trunc: usize },

    #[error("base point does not satisfy generator {index} of N")]
    PointNotOnN { index: usize },

    #[error("arc point does not satisfy generator {index} of N")]
    GammaNotOnN { index: usize },

    #[error("root lies outside the coefficient field; minimal polynomial {poly}")]
    AlgebraicExtensionRequired { poly: String },

    #[error("rational root search gave up on coefficient {0}")]
    RootSearchLimit(String),

    #[error("truncation order too coarse: {0}")]
    TruncationTooCoarse(String),

    #[error("no lifted branch avoids Z at order {order}: {detail}")]
    NoBranchAvoidsZ { order: usize, detail: String },

    #[error("N is zero-dimensional at the base point: no base direction to move along")]
    NoBaseDirection,

    #[error("arc point is not a jet of X: equation {index} fails")]
    NotAJet { index: usize },

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Input errors are the caller's fault; everything else is a mathematical outcome.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::MismatchedRing(_)
                | Error::DimensionMismatch { .. }
                | Error::SingularChange
                | Error::NotPolynomial
                | Error::InvalidInput(_)
                | Error::NotAJet { .. }
        )
    }
}
