//! Closed forms for finite and infinite Fourier sums over harmonic
//! progressions, the Lerch transcendent and the polylogarithm, with the
//! quadrature and reference oracles needed to check them.

pub mod cmath;
pub mod error;
pub mod harmonic;
pub mod hurwitz;
pub mod lerch;
pub mod oracle;
pub mod partial_sums;
pub mod quadrature;
pub mod regime;
pub mod series_limits;
pub mod verify;

/// Every argument and value in the crate is a double-precision complex number.
pub type ComplexValue = num_complex::Complex64;

pub use error::{Error, Result};
pub use harmonic::{harmonic_number, harmonic_progression, hp_asymptotic_constant, hp_constant_series, AsymptoticConstant};
pub use hurwitz::{bernoulli_poly, hurwitz_polylog_relation_residual, hurwitz_zeta_neg, BernoulliPoly};
pub use lerch::{exp_via_zeta, lerch_e_sum, lerch_phi, polylog, ContinuationValue, LerchParams};
pub use partial_sums::{
    lerch_partial_closed, lerch_partial_direct, trig_partial_closed, trig_partial_direct, Evaluation, SumParams, TrigKind,
};
pub use quadrature::{integrate, integrate_with, Integrand, QuadConfig, QuadratureResult};
pub use regime::{BClass, Regime};
pub use series_limits::{fourier_series_b, fourier_series_b0, SeriesSpec, SeriesValue, Trig};

pub use verify::{run_suite, summarize, CheckReport, Grid, OutputFormat, RunConfig, Suite};
