//! Full Fourier series `sum_{j>=1} trig(2 pi (j+b)/m) / (j+b)^order` in closed
//! form: the `b = 0` specials and the general-`b` formulas, which for the
//! odd-cosine / even-sine family switch shape between generic, half-integer
//! and integer `b`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cmath::{c, cot, factorial, fmt_c, taylor_tail, CompensatedSum, Series};
use crate::error::{Error, Result};
use crate::harmonic::{check_generic, harmonic};
use crate::oracle::{hurwitz_zeta_int, zeta_int};
use crate::partial_sums::TrigKind;
use crate::quadrature::{integrate_with, Integrand, QuadConfig};
use crate::regime::{BClass, Regime};
use crate::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trig {
    Cos,
    Sin,
}

impl std::str::FromStr for Trig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cos" => Ok(Trig::Cos),
            "sin" => Ok(Trig::Sin),
            _ => Err(Error::invalid(format!("unknown trig '{s}' (cos, sin)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub trig: Trig,
    pub order: u32,
    pub m: ComplexValue,
    pub b: ComplexValue,
}

impl SeriesSpec {
    /// The partial-sum family and half-index `k` this order belongs to.
    pub fn kind(&self) -> (TrigKind, u32) {
        let k = self.order / 2;
        let kind = match (self.trig, self.order % 2) {
            (Trig::Cos, 0) => TrigKind::CosEven,
            (Trig::Cos, _) => TrigKind::CosOdd,
            (Trig::Sin, 0) => TrigKind::SinEven,
            (Trig::Sin, _) => TrigKind::SinOdd,
        };
        (kind, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: ComplexValue,
    /// Set for non-real `m`, where convergence of the formula is not guaranteed.
    pub best_effort: bool,
    pub regime: Regime,
    pub error_estimate: f64,
}

/// Analytic stand-in for `|m|`: `|m|` on the real line, `m sign(Re m)` off it.
fn abs_m(m: ComplexValue) -> ComplexValue {
    if m.im == 0.0 {
        c(m.re.abs())
    } else if m.re < 0.0 {
        -m
    } else {
        m
    }
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_spec(spec: &SeriesSpec) -> Result<bool> {
    if spec.order == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    if spec.m.norm() < 1.0 - 1e-12 {
        return Err(Error::invalid(format!("|m| >= 1 is required, got m = {}", fmt_c(spec.m))));
    }
    let best_effort = spec.m.im != 0.0;
    if spec.order == 1 && !best_effort && (spec.m.re.abs() - 1.0).abs() < 1e-12 {
        // every term is trig(2 pi b)/(j+b)
        let b = spec.b;
        return Err(match spec.trig {
            Trig::Cos if (2.0 * PI * b).cos().norm() < 1e-12 => {
                Error::FormulaBreakdown { what: "cosine series of order 1 at |m| = 1" }
            }
            Trig::Cos => Error::DivergentSeries { what: "cosine series of order 1 at |m| = 1" },
            Trig::Sin if (2.0 * PI * b).sin().norm() < 1e-12 => {
                Error::FormulaBreakdown { what: "sine series of order 1 at |m| = 1" }
            }
            Trig::Sin => Error::DivergentSeries { what: "sine series of order 1 at |m| = 1" },
        });
    }
    Ok(best_effort)
}

/// `(-1)^{k-j} t^e / e! * zeta(s, q)`.
fn zeta_term(k: u32, j: u32, t: Complex64, e: u32, s: u32, q: ComplexValue) -> Result<Complex64> {
    Ok(sign(k + j) * t.powi(e as i32) / factorial(e) * hurwitz_zeta_int(s, q)?)
}

/// `sum_{j>=1} trig(2 pi j / m) / j^order`.
pub fn fourier_series_b0(spec: &SeriesSpec, cfg: &QuadConfig) -> Result<SeriesValue> {
    if spec.b != c(0.0) {
        return Err(Error::invalid("fourier_series_b0 needs b = 0"));
    }
    let best_effort = check_spec(spec)?;
    let m = spec.m;
    let t = 2.0 * PI / m;
    let am = abs_m(m);
    let (kind, k) = spec.kind();
    let mut acc = CompensatedSum::new();
    let mut error_estimate = 0.0;
    let zeta = |s: u32| -> Result<f64> { zeta_int(s as i32) };
    match kind {
        TrigKind::CosEven | TrigKind::SinOdd => {
            // sum_{j=0}^k (-1)^{k-j} t^{order-2j}/(order-2j)! zeta(2j) + (-1)^k |m| t^order / (4 (order-1)!)
            let order = spec.order;
            for j in 0..=k {
                let e = order - 2 * j;
                acc.add(sign(k + j) * t.powi(e as i32) / factorial(e) * zeta(2 * j)?);
            }
            acc.add(sign(k) * am * t.powi(order as i32) / (4.0 * factorial(order - 1)));
        }
        TrigKind::CosOdd | TrigKind::SinEven => {
            let odd = kind == TrigKind::CosOdd;
            let w = if odd { 2 * k } else { 2 * k - 1 };
            let outer = if odd { 1.0 } else { -1.0 };
            let top = if odd { k } else { k - 1 };
            for j in 1..=top {
                let e = w - 2 * j;
                acc.add(outer * sign(k + j) * t.powi(e as i32) / factorial(e) * zeta(2 * j + 1)?);
            }
            let cl = sign(k) * t.powi(w as i32) / factorial(w);
            acc.add(outer * cl * am.ln());
            let coef = -outer * sign(k) * t.powi(w as i32 + 1) / (2.0 * factorial(w));
            let wi = w as i32;
            let f = Integrand::new(move |u: f64| {
                (1.0 - u).powi(wi) * cot(PI * u / m) - m * (1.0 - u) * cot(c(PI * u))
            });
            let q = integrate_with(&f, &cfg.resolving(1.0))?;
            acc.add(coef * q.value);
            error_estimate = coef.norm() * q.abs_error_estimate;
        }
    }
    Ok(SeriesValue { value: acc.value(), best_effort, regime: Regime::IntegerB, error_estimate })
}

/// `sum_{j>=1} trig(2 pi (j+b)/m) / (j+b)^order`, dispatching on the regime of `b`.
pub fn fourier_series_b(spec: &SeriesSpec, cfg: &QuadConfig) -> Result<SeriesValue> {
    let best_effort = check_spec(spec)?;
    let (m, b) = (spec.m, spec.b);
    let class = BClass::classify(b);
    let int_b = class.integer();
    if let Some(i) = int_b {
        if i < 0 {
            return Err(Error::PoleAtNegativeInteger { b: b.re });
        }
    }
    let t = 2.0 * PI / m;
    let am = abs_m(m);
    let order = spec.order;
    let (kind, k) = spec.kind();
    let q = b + 1.0;
    let cycles = 1.0 + (b / m).norm() + b.norm();
    let mut acc = CompensatedSum::new();

    let error_estimate = match kind {
        TrigKind::CosEven | TrigKind::SinOdd => {
            let series = if kind == TrigKind::CosEven { Series::Cos } else { Series::Sin };
            acc.add(-0.5 * taylor_tail(series, t, b, order as i32, k as i32 - 1));
            for j in 1..=k {
                acc.add(zeta_term(k, j, t, order - 2 * j, 2 * j, q)?);
            }
            let w = order - 1;
            acc.add(sign(k) * am * t.powi(order as i32) / (4.0 * factorial(w)));
            let coef = -sign(k) * t.powi(order as i32) / (2.0 * factorial(w));
            let wi = w as i32;
            let f = Integrand::new(move |u: f64| (1.0 - u).powi(wi) * (t * b * u).sin() * cot(PI * u / m));
            let r = integrate_with(&f, &cfg.resolving(cycles))?;
            acc.add(coef * r.value);
            coef.norm() * r.abs_error_estimate
        }
        TrigKind::CosOdd | TrigKind::SinEven => {
            let odd = kind == TrigKind::CosOdd;
            let w = order - 1;
            let outer = if odd { 1.0 } else { -1.0 };
            let top = if odd { k } else { k - 1 };
            let keep = match class.regime {
                Regime::IntegerB => top as i32,
                _ => top as i32 - 1,
            };
            let series = if odd { Series::Cos } else { Series::Sin };
            acc.add(-0.5 * taylor_tail(series, t, b, order as i32, keep));
            for j in 1..=top {
                acc.add(outer * zeta_term(k, j, t, w - 2 * j, 2 * j + 1, q)?);
            }
            // c = (-1)^k t^w / w!, integral prefactor -(-1)^k t^{w+1} / (2 w!) (cos) or its negative (sin)
            let cl = sign(k) * t.powi(w as i32) / factorial(w);
            let coef = -outer * sign(k) * t.powi(order as i32) / (2.0 * factorial(w));
            let wi = w as i32;
            let head = move |u: f64| (1.0 - u).powi(wi) * (t * b * u).cos() * cot(PI * u / m);
            let r = match class.regime {
                Regime::GenericB => {
                    let s2 = (2.0 * PI * b).sin();
                    check_generic(b, s2)?;
                    acc.add(outer * PI * cl / 2.0 * cot(PI * b));
                    acc.add(outer * cl * am.ln());
                    let f = Integrand::new(move |u: f64| {
                        head(u) + m * ((2.0 * PI * b * u).sin() / s2 - 1.0) * cot(c(PI * u))
                    });
                    integrate_with(&f, &cfg.resolving(cycles))?
                }
                Regime::HalfIntegerB => {
                    acc.add(outer * cl * (am / 2.0).ln());
                    let f = Integrand::new(move |u: f64| {
                        head(u) - m / 2.0 * (PI * b * u).cos() * cot(c(PI * u / 2.0))
                    });
                    integrate_with(&f, &cfg.resolving(cycles))?
                }
                Regime::IntegerB => {
                    let h = harmonic(int_b.unwrap());
                    acc.add(outer * cl * (am.ln() - h));
                    let f = Integrand::new(move |u: f64| head(u) - m * (1.0 - u) * cot(c(PI * u)));
                    integrate_with(&f, &cfg.resolving(cycles))?
                }
            };
            acc.add(coef * r.value);
            coef.norm() * r.abs_error_estimate
        }
    };
    Ok(SeriesValue { value: acc.value(), best_effort, regime: class.regime, error_estimate })
}
