//! Generalized harmonic numbers and progressions, and the constant
//! `c(b) = lim (HP(n) - H(n))` that links a shifted harmonic progression to
//! the ordinary harmonic numbers.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::cmath::{c, cot, fmt_c, CompensatedSum};
use crate::error::{Error, Result};
use crate::oracle;
use crate::quadrature::{integrate_with, Integrand, QuadConfig};
use crate::regime::{BClass, Regime};
use crate::ComplexValue;

/// Below this `|sin 2 pi b|` the generic-b formula is refused.
pub const NEAR_SINGULAR: f64 = 1e-6;

/// `H_k(n) = sum_{j=1}^n j^{-k}`. `H_0` is taken as zero, matching the
/// `HP_0 = 0` convention.
pub fn harmonic_number(k: u32, n: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let acc: CompensatedSum = (1..=n).map(|j| c((j as f64).powi(-(k as i32)))).collect();
    acc.value().re
}

/// `H(b) = H_1(b)` for a non-negative integer `b`.
pub(crate) fn harmonic(b: i64) -> f64 {
    harmonic_number(1, b.max(0) as u64)
}

/// `HP_k(n) = sum_{j=1}^n (a j + b)^{-k}`; zero for `k = 0`.
pub fn harmonic_progression(k: u32, a: ComplexValue, b: ComplexValue, n: u64) -> Result<ComplexValue> {
    if k == 0 {
        return Ok(c(0.0));
    }
    let mut acc = CompensatedSum::new();
    for j in 1..=n {
        let d = a * j as f64 + b;
        if d.norm() <= 1e-300 || d.norm() < 1e-14 * (a.norm() * j as f64 + b.norm()) {
            return Err(Error::PoleInRange { index: j });
        }
        acc.add(d.powi(-(k as i32)));
    }
    Ok(acc.value())
}

/// The `n`-independent part of `HP_1(n) - H(n)` for `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstant {
    pub b: ComplexValue,
    pub value: ComplexValue,
    pub regime: Regime,
    pub error_estimate: f64,
}

/// `c(b)` by the integral representation matching the regime of `b`:
///
/// * generic: `-1/(2b) + (pi/2) cot(pi b) - pi int_0^1 (sin(2 pi b u)/sin(2 pi b) - u) cot(pi u) du`
/// * half-integer: `-1/(2b) + (pi/2) int_0^1 (u - 1 + cos(pi b u)) cot(pi u / 2) du`
/// * integer `b >= 0`: `-H(b)`
pub fn hp_asymptotic_constant(b: ComplexValue, cfg: &QuadConfig) -> Result<AsymptoticConstant> {
    let class = BClass::classify(b);
    let (value, error_estimate) = match class.regime {
        Regime::IntegerB => {
            let i = class.integer().unwrap();
            if i < 0 {
                return Err(Error::PoleAtNegativeInteger { b: b.re });
            }
            (c(-harmonic(i)), 0.0)
        }
        Regime::HalfIntegerB => {
            let f = Integrand::new(move |u: f64| {
                (u - 1.0 + (PI * b * u).cos()) * cot(c(0.5 * PI * u))
            });
            let q = integrate_with(&f, &cfg.resolving(b.norm() / 2.0))?;
            (-0.5 / b + 0.5 * PI * q.value, 0.5 * PI * q.abs_error_estimate)
        }
        Regime::GenericB => {
            let s2 = (2.0 * PI * b).sin();
            check_generic(b, s2)?;
            let f = Integrand::new(move |u: f64| ((2.0 * PI * b * u).sin() / s2 - u) * cot(c(PI * u)));
            let q = integrate_with(&f, &cfg.resolving(b.norm()))?;
            (
                -0.5 / b + 0.5 * PI * cot(PI * b) - PI * q.value,
                PI * q.abs_error_estimate,
            )
        }
    };
    Ok(AsymptoticConstant { b, value, regime: class.regime, error_estimate })
}

pub(crate) fn check_generic(b: ComplexValue, s2: Complex64) -> Result<()> {
    if s2.norm() < NEAR_SINGULAR {
        return Err(Error::NearSingularRegime { b: fmt_c(b), sine: s2.norm() });
    }
    Ok(())
}

/// Truncated power series `-sum_{k=2}^{terms+1} (-1)^k zeta(k) b^{k-1}` for
/// `c(b)`, `|b| < 1`, with the remainder bound `|b|^K / (1 - |b|)` where `K`
/// is the first omitted power. Slow near `|b| = 1`; used for validation only.
pub fn hp_constant_series(b: ComplexValue, terms: u32) -> Result<(ComplexValue, f64)> {
    if b.norm() >= 1.0 {
        return Err(Error::invalid("the zeta power series for c(b) needs |b| < 1"));
    }
    let mut acc = CompensatedSum::new();
    let mut bp = c(1.0);
    for k in 2..(terms + 2) {
        bp *= b;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(-sign * oracle::zeta_int(k as i32)? * bp);
    }
    let r = b.norm();
    // zeta(k) <= zeta(K) for k >= K, and zeta(K) <= 1 + 2^{1-K}
    let k_next = (terms + 2) as i32;
    let bound = r.powi(k_next - 1) * (1.0 + 2f64.powi(1 - k_next)) / (1.0 - r);
    Ok((acc.value(), bound))
}

/// Generating function of zeta at the odd integers,
/// `sum_{k>=1} zeta(2k+1) x^{2k+1}`, through
/// `-pi x int_0^1 (sin(2 pi x u)/sin(2 pi x) - u) cot(pi u) du`.
pub fn zeta_odd_generating(x: ComplexValue, cfg: &QuadConfig) -> Result<ComplexValue> {
    if x.norm() == 0.0 {
        return Ok(c(0.0));
    }
    let s2 = (2.0 * PI * x).sin();
    if s2.norm() < 1e-14 {
        return Err(Error::SingularSine { x: fmt_c(x) });
    }
    let f = Integrand::new(move |u: f64| ((2.0 * PI * x * u).sin() / s2 - u) * cot(c(PI * u)));
    let q = integrate_with(&f, &cfg.resolving(x.norm()))?;
    Ok(-PI * x * q.value)
}
