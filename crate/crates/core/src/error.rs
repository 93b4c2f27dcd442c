use crate::quadrature::QuadratureResult;

/// Everything that can go wrong while evaluating a formula or an oracle.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("term {index} of the progression has a vanishing denominator")]
    PoleInRange { index: u64 },
    #[error("b = {b} is a negative integer")]
    PoleAtNegativeInteger { b: f64 },
    #[error("argument {z} is a non-positive integer")]
    PoleAtNonPositiveInteger { z: String },
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("sin(2*pi*x) vanishes at x = {x}")]
    SingularSine { x: String },
    #[error("kernel argument {z} is within 1e-12 of a pole")]
    PoleHit { z: String },
    #[error("coth(m*u/2) has a pole on (0, 1] for m = {m}")]
    CothPole { m: String },
    #[error("the series diverges: {what}")]
    DivergentSeries { what: &'static str },
    #[error("the closed form does not apply: {what}")]
    FormulaBreakdown { what: &'static str },
    #[error("b = {b} is too close to a (half-)integer for the generic formula (|sin 2 pi b| = {sine:e})")]
    NearSingularRegime { b: String, sine: f64 },
    #[error("m = {m} lies in the excluded region Re(m) >= 0, |Im(m)| >= 2 pi")]
    ExcludedRegion { m: String },
    #[error("m = 0 is improper for this expression")]
    ImproperAtZero,
    #[error("b must be non-zero")]
    ZeroB,
    #[error("Bernoulli degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integrand returned a non-finite value at u = {u}")]
    NonFinite { u: f64 },
    #[error("quadrature budget exhausted after {} evaluations (estimate {:e})", partial.evaluations, partial.abs_error_estimate)]
    BudgetExhausted { partial: QuadratureResult },
    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: u64 },
}

impl Error {
    /// True for failures of a numerical procedure to meet its tolerance, as
    /// opposed to arguments outside a formula's domain.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::BudgetExhausted { .. } | Error::NoConvergence { .. } | Error::NonFinite { .. }
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
