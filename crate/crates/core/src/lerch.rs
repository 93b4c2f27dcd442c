//! `E^m_k(b) = sum_{j>=1} e^{m(j+b)} / (j+b)^k` in closed form, the Lerch
//! transcendent built from it, the polylogarithm `Li_k(e^m)` (the `b -> 0`
//! limit) and the zeta power series for `e^m`. The formulas continue
//! analytically to `Re m > 0` outside the excluded region.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cmath::{c, cot, coth, factorial, fmt_c, taylor_tail, CompensatedSum, Series};
use crate::error::{Error, Result};
use crate::harmonic::{check_generic, harmonic};
use crate::oracle::{hurwitz_zeta_int, zeta_int};
use crate::quadrature::{integrate_with, Integrand, QuadConfig};
use crate::regime::{BClass, Regime};
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LerchParams {
    pub m: ComplexValue,
    pub k: u32,
    pub b: ComplexValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuationValue {
    pub value: ComplexValue,
    /// `Re m > 0`: the defining series diverges and this is its continuation.
    pub is_continuation: bool,
    pub error_estimate: f64,
}

/// Rejects `m = 0` and the region `Re m >= 0, |Im m| >= 2 pi`.
fn check_m(m: ComplexValue, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if m.norm() == 0.0 {
        return Err(Error::ImproperAtZero);
    }
    if m.re >= 0.0 && m.im.abs() >= 2.0 * PI {
        return Err(Error::ExcludedRegion { m: fmt_c(m) });
    }
    Ok(())
}

/// `E^m_k(b)`; `b = 0` is the polylogarithm.
pub fn lerch_e_sum(p: &LerchParams, cfg: &QuadConfig) -> Result<ContinuationValue> {
    let LerchParams { m, k, b } = *p;
    check_m(m, k)?;
    let class = BClass::classify(b);
    if let Some(i) = class.integer() {
        if i < 0 {
            return Err(Error::PoleAtNegativeInteger { b: b.re });
        }
        if i == 0 {
            return polylog(k, m, cfg);
        }
    }
    let ki = k as i32;
    let l1 = m.powi(ki - 1) / factorial(k - 1);
    let a = m.powi(ki) / (2.0 * factorial(k - 1));

    let mut acc = CompensatedSum::new();
    acc.add(-0.5 * taylor_tail(Series::Exp, m, b, ki, ki - 2));
    for j in 2..=k {
        acc.add(m.powi((k - j) as i32) / factorial(k - j) * hurwitz_zeta_int(j, b + 1.0)?);
    }
    let head = move |u: f64| (1.0 - u).powi(ki - 1) * (m * b * u).exp() * coth(m * u / 2.0);
    let cycles = m.norm() * (b.norm() + 1.0) / (2.0 * PI) + b.norm();
    let cfg = cfg.resolving(cycles);
    let r = match class.regime {
        Regime::GenericB => {
            let s2 = (2.0 * PI * b).sin();
            check_generic(b, s2)?;
            acc.add(PI / 2.0 * l1 * cot(PI * b));
            acc.add(-l1 * (-m / (2.0 * PI)).ln());
            let f = Integrand::new(move |u: f64| {
                head(u) + 2.0 * PI / m * ((2.0 * PI * b * u).sin() / s2 - 1.0) * cot(c(PI * u))
            });
            integrate_with(&f, &cfg)?
        }
        Regime::HalfIntegerB => {
            acc.add(-l1 * (-m / PI).ln());
            let f = Integrand::new(move |u: f64| head(u) - PI / m * (PI * b * u).cos() * cot(c(PI * u / 2.0)));
            integrate_with(&f, &cfg)?
        }
        Regime::IntegerB => {
            let i = class.integer().unwrap();
            acc.add(-l1 * (-m / (2.0 * PI)).ln());
            acc.add(-l1 * (harmonic(i) - 0.5 / i as f64));
            let f = Integrand::new(move |u: f64| head(u) - 2.0 * PI / m * (1.0 - u) * cot(c(PI * u)));
            integrate_with(&f, &cfg)?
        }
    };
    acc.add(-a * r.value);
    Ok(ContinuationValue {
        value: acc.value(),
        is_continuation: m.re > 0.0,
        error_estimate: a.norm() * r.abs_error_estimate,
    })
}

/// Lerch transcendent `Phi(e^m, k, b) = b^{-k} + e^{-mb} E^m_k(b)`.
///
/// The absolute error of `E` is scaled by `|e^{-mb}|`, so accuracy degrades
/// for strongly negative `Re(m b)`.
pub fn lerch_phi(p: &LerchParams, cfg: &QuadConfig) -> Result<ContinuationValue> {
    if p.b.norm() == 0.0 {
        return Err(Error::ZeroB);
    }
    let e = lerch_e_sum(p, cfg)?;
    let scale = (-p.m * p.b).exp();
    Ok(ContinuationValue {
        value: p.b.powi(-(p.k as i32)) + scale * e.value,
        is_continuation: e.is_continuation,
        error_estimate: scale.norm() * e.error_estimate,
    })
}

/// `Li_k(e^m) = sum_{j>=1} e^{mj} / j^k` and its continuation.
pub fn polylog(k: u32, m: ComplexValue, cfg: &QuadConfig) -> Result<ContinuationValue> {
    check_m(m, k)?;
    let ki = k as i32;
    let l1 = m.powi(ki - 1) / factorial(k - 1);
    let a = m.powi(ki) / (2.0 * factorial(k - 1));
    let mut acc = CompensatedSum::new();
    acc.add(-l1 * (-m / (2.0 * PI)).ln());
    for j in (0..=k).filter(|&j| j != 1) {
        acc.add(m.powi((k - j) as i32) / factorial(k - j) * zeta_int(j as i32)?);
    }
    let f = Integrand::new(move |u: f64| {
        (1.0 - u).powi(ki - 1) * coth(m * u / 2.0) - 2.0 * PI / m * (1.0 - u) * cot(c(PI * u))
    });
    let r = integrate_with(&f, &cfg.resolving(m.norm() / (2.0 * PI)))?;
    acc.add(-a * r.value);
    Ok(ContinuationValue {
        value: acc.value(),
        is_continuation: m.re > 0.0,
        error_estimate: a.norm() * r.abs_error_estimate,
    })
}

/// `sum_{j=2}^k m^{k-j} zeta(j) / (k-j)!`, which tends to `e^m` as `k` grows.
pub fn exp_via_zeta(m: ComplexValue, k: u32) -> Result<ComplexValue> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    let mut acc = CompensatedSum::new();
    for j in 2..=k {
        acc.add(m.powi((k - j) as i32) / factorial(k - j) * zeta_int(j as i32)?);
    }
    Ok(acc.value())
}
