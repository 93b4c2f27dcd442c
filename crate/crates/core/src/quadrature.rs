//! Adaptive Gauss-Kronrod (7/15) integration of complex integrands on [0, 1].
//!
//! Every integral in this crate is over the unit interval and has its
//! endpoint singularities cancelled inside the integrand, so a nested rule
//! with bisection of the worst panel is enough. Panel values are accumulated
//! with compensated summation in left-to-right order, so the result does not
//! depend on the refinement history beyond the panel set itself.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::cmath::{cot, cot_pole_distance, coth, fmt_c, CompensatedSum, I};
use crate::error::{Error, Result};
use crate::ComplexValue;

/// Offset from the boundary used when no endpoint limits are supplied.
pub const ENDPOINT_OFFSET: f64 = 1e-12;

/// Arguments this close to a kernel pole are rejected.
pub const POLE_TOL: f64 = 1e-12;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// A function on (0, 1) together with what is known about its ends.
pub struct Integrand<F> {
    evaluator: F,
    endpoint_limits: Option<(ComplexValue, ComplexValue)>,
    breakpoints: Vec<f64>,
}

impl<F: Fn(f64) -> ComplexValue> Integrand<F> {
    pub fn new(evaluator: F) -> Self {
        Self { evaluator, endpoint_limits: None, breakpoints: Vec::new() }
    }

    /// Analytic limits at `0+` and `1-`, used instead of evaluating near the ends.
    pub fn with_endpoint_limits(mut self, at_zero: ComplexValue, at_one: ComplexValue) -> Self {
        self.endpoint_limits = Some((at_zero, at_one));
        self
    }

    /// Interior points (removable singularities, kinks) that must be panel edges.
    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points.into_iter().filter(|p| *p > 0.0 && *p < 1.0));
        self
    }

    fn eval(&self, u: f64) -> Result<ComplexValue> {
        let v = if u < ENDPOINT_OFFSET {
            match self.endpoint_limits {
                Some((a, _)) => a,
                None => (self.evaluator)(ENDPOINT_OFFSET),
            }
        } else if u > 1.0 - ENDPOINT_OFFSET {
            match self.endpoint_limits {
                Some((_, b)) => b,
                None => (self.evaluator)(1.0 - ENDPOINT_OFFSET),
            }
        } else {
            (self.evaluator)(u)
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { u })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
    /// Panels laid down before any adaptivity.
    pub min_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_evals: 1_000_000, min_panels: 8 }
    }
}

impl QuadConfig {
    /// Same tolerances with a panel floor of `max(8, 4 * ceil(cycles))`,
    /// enough to resolve `cycles` oscillations across [0, 1].
    pub fn resolving(&self, cycles: f64) -> Self {
        let floor = (4.0 * cycles.ceil()).max(8.0);
        Self { min_panels: self.min_panels.max(floor.min(1e7) as usize), ..*self }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: ComplexValue,
    abs_value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> ComplexValue>(f: &Integrand<F>, a: f64, b: f64) -> Result<Panel> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f.eval(mid)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_value = fc.norm() * WGK[7];
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f.eval(mid - dx)?;
        let f2 = f.eval(mid + dx)?;
        kronrod += (f1 + f2) * WGK[i];
        abs_value += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            gauss += (f1 + f2) * WG[i / 2];
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        abs_value: abs_value * half.abs(),
        error: ((kronrod - gauss) * half).norm(),
    })
}

/// Integrates over [0, 1] with the default panel floor.
pub fn integrate<F: Fn(f64) -> ComplexValue>(
    f: &Integrand<F>,
    rel_tol: f64,
    abs_tol: f64,
    max_evals: usize,
) -> Result<QuadratureResult> {
    integrate_with(f, &QuadConfig { rel_tol, abs_tol, max_evals, ..QuadConfig::default() })
}

/// Integrates over [0, 1]. Succeeds once the summed panel error is below
/// `max(abs_tol, rel_tol |I|)`, or below the roundoff floor
/// `64 eps * integral of |f|` when cancellation makes that unreachable.
pub fn integrate_with<F: Fn(f64) -> ComplexValue>(f: &Integrand<F>, cfg: &QuadConfig) -> Result<QuadratureResult> {
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0) {
        return Err(Error::invalid("quadrature tolerances must be positive"));
    }
    if cfg.max_evals < 15 {
        return Err(Error::invalid("max_evals must be at least 15"));
    }
    let mut edges: Vec<f64> = std::iter::once(0.0)
        .chain(f.breakpoints.iter().copied())
        .chain(std::iter::once(1.0))
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() < 1e-15);

    let floor = cfg.min_panels.max(1);
    let pieces_at = |w: &[f64], floor: usize| ((w[1] - w[0]) * floor as f64).ceil().max(1.0) as usize;
    // the panel floor yields to the budget, one panel per segment at least
    let initial: usize = edges.windows(2).map(|w| pieces_at(w, floor)).sum();
    let floor = if 15 * initial > cfg.max_evals { 1 } else { floor };
    let segments = edges.len() - 1;
    if 15 * segments > cfg.max_evals {
        return Err(Error::BudgetExhausted {
            partial: QuadratureResult { value: ComplexValue::new(f64::NAN, f64::NAN), abs_error_estimate: f64::INFINITY, evaluations: 0 },
        });
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in edges.windows(2) {
        let pieces = pieces_at(w, floor);
        let h = (w[1] - w[0]) / pieces as f64;
        for i in 0..pieces {
            let a = w[0] + i as f64 * h;
            let b = if i + 1 == pieces { w[1] } else { a + h };
            heap.push(gauss_kronrod(f, a, b)?);
            evaluations += 15;
        }
    }

    let (mut value, mut error, mut abs_value) = totals(&heap);
    let mut since_refresh = 0;
    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * value.norm()).max(64.0 * f64::EPSILON * abs_value);
        if error <= target {
            // drift check on the running sums before accepting
            let exact = totals(&heap);
            if exact.1 <= target {
                return Ok(QuadratureResult { value: exact.0, abs_error_estimate: exact.1, evaluations });
            }
            (value, error, abs_value) = exact;
            continue;
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if evaluations + 30 > cfg.max_evals || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let (value, error, _) = totals(&heap);
            return Err(Error::BudgetExhausted {
                partial: QuadratureResult { value, abs_error_estimate: error, evaluations },
            });
        }
        let left = gauss_kronrod(f, worst.a, mid)?;
        let right = gauss_kronrod(f, mid, worst.b)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        since_refresh += 1;
        if since_refresh == 256 {
            (value, error, abs_value) = totals(&heap);
            since_refresh = 0;
        }
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (ComplexValue, f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: CompensatedSum = panels.iter().map(|p| p.value).collect();
    let error = panels.iter().map(|p| p.error).sum();
    let abs_value = panels.iter().map(|p| p.abs_value).sum();
    (value.value(), error, abs_value)
}

/// `cot(pi u / m)`.
pub fn cot_kernel(u: f64, m: ComplexValue) -> Result<ComplexValue> {
    let z = PI * u / m;
    if cot_pole_distance(z) < POLE_TOL {
        return Err(Error::PoleHit { z: fmt_c(z) });
    }
    Ok(cot(z))
}

/// `coth(m u / 2)`.
pub fn coth_kernel(u: f64, m: ComplexValue) -> Result<ComplexValue> {
    let z = m * u / 2.0;
    if cot_pole_distance(I * z) < POLE_TOL {
        return Err(Error::PoleHit { z: fmt_c(z) });
    }
    Ok(coth(z))
}

fn oscillation_config(cfg: &QuadConfig, n: u64, m: f64) -> QuadConfig {
    cfg.resolving(n as f64 * (1.0 / m.abs()).max(1.0))
}

/// `int_0^1 (1-u)^k sin(2 pi n u / m) cot(pi u / m) du`; tends to `|m/2|` for
/// real `|m| >= 1` (and to 1 when `k = 0`, `|m| = 1`).
pub fn sine_cot_integral(k: f64, m: f64, n: u64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    let nf = n as f64;
    let f = Integrand::new(move |u: f64| {
        Complex64::new((1.0 - u).powf(k) * (2.0 * PI * nf * u / m).sin(), 0.0) * cot(Complex64::new(PI * u / m, 0.0))
    });
    integrate_with(&f, &oscillation_config(cfg, n, m))
}

/// `int_0^1 (1-u)^k cos(2 pi n u/m) cot(pi u/m) - m (1-u) cos(2 pi n u) cot(pi u) du`;
/// tends to `m log|m| / pi` for real `|m| >= 1` except `k = 0`, `|m| = 1`.
pub fn cosine_cot_integral(k: f64, m: f64, n: u64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    let nf = n as f64;
    let f = Integrand::new(move |u: f64| {
        let a = (1.0 - u).powf(k) * (2.0 * PI * nf * u / m).cos() * cot(Complex64::new(PI * u / m, 0.0)).re;
        let b = m * (1.0 - u) * (2.0 * PI * nf * u).cos() * cot(Complex64::new(PI * u, 0.0)).re;
        Complex64::new(a - b, 0.0)
    });
    integrate_with(&f, &oscillation_config(cfg, n, m))
}

/// `int_0^1 (1-u)^k cos(2 pi n u/m) cot(pi u/m) - (m/2)(1-u) cos(pi n u) cot(pi u/2) du`;
/// tends to `(m / pi) log(|m| / 2)`.
pub fn half_cosine_cot_integral(k: f64, m: f64, n: u64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    let nf = n as f64;
    let f = Integrand::new(move |u: f64| {
        let a = (1.0 - u).powf(k) * (2.0 * PI * nf * u / m).cos() * cot(Complex64::new(PI * u / m, 0.0)).re;
        let b = 0.5 * m * (1.0 - u) * (PI * nf * u).cos() * cot(Complex64::new(0.5 * PI * u, 0.0)).re;
        Complex64::new(a - b, 0.0)
    });
    integrate_with(&f, &oscillation_config(cfg, n, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmath::c;
    use std::cell::RefCell;

    #[test]
    fn zero_integrand() {
        let f = Integrand::new(|_| c(0.0));
        let r = integrate(&f, 1e-10, 1e-12, 15).unwrap();
        assert_eq!(r.value, c(0.0));
        assert!(r.evaluations > 0);
    }

    #[test]
    fn sin_times_cot_integrates_to_one() {
        // sin(2 pi u) cot(pi u) = 2 cos^2(pi u)
        let f = Integrand::new(|u| c((2.0 * PI * u).sin()) * cot_kernel(u, c(1.0)).unwrap());
        let r = integrate(&f, 1e-10, 1e-12, 1_000_000).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-13, "{:?}", r);
    }

    #[test]
    fn one_minus_cos_cot_vanishes() {
        let n = 3.0;
        let f = Integrand::new(move |u| c(1.0 - (2.0 * PI * n * u).cos()) * cot(c(PI * u)));
        let r = integrate(&f, 1e-10, 1e-12, 1_000_000).unwrap();
        assert!(r.value.norm() < 1e-12, "{:?}", r);
        assert!(r.abs_error_estimate >= 0.0);
    }

    #[test]
    fn endpoint_limits_replace_raw_evaluation() {
        let seen = RefCell::new(Vec::new());
        let f = Integrand::new(|u: f64| {
            seen.borrow_mut().push(u);
            assert!(u > 0.0 && u < 1.0);
            c((PI * u).sin() / u)
        })
        .with_endpoint_limits(c(PI), c(0.0));
        // a tiny panel floor forces nodes within the endpoint offset
        let cfg = QuadConfig { min_panels: 1, ..QuadConfig::default() };
        integrate_with(&f, &cfg).unwrap();
        assert!(seen.borrow().iter().all(|u| *u > 0.0 && *u < 1.0));
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let f = Integrand::new(|u: f64| c((1.0 / u).sin() / u.sqrt()));
        match integrate(&f, 1e-14, 1e-15, 200) {
            Err(Error::BudgetExhausted { partial }) => assert!(partial.evaluations <= 200),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_interior_value_is_an_error() {
        let f = Integrand::new(|u: f64| if u > 0.3 && u < 0.32 { c(f64::NAN) } else { c(1.0) });
        assert!(matches!(integrate(&f, 1e-10, 1e-12, 1000), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert!((cot_kernel(0.5, c(2.0)).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((cot_kernel(0.25, c(1.0)).unwrap() - c(1.0)).norm() < 1e-15);
        let m = Complex64::new(1.5, 0.5);
        let u = 1e-9;
        assert!((coth_kernel(u, m).unwrap() * (m * u / 2.0) - 1.0).norm() < 1e-15);
        assert!(matches!(cot_kernel(1.0, c(1.0)), Err(Error::PoleHit { .. })));
        assert!(matches!(coth_kernel(1.0, Complex64::new(0.0, 2.0 * PI)), Err(Error::PoleHit { .. })));
    }

    #[test]
    fn breakpoints_become_panel_edges() {
        // removable singularity at u = 0.5: (sin(2 pi u) - 0)/cot-pole of cot(2 pi u)
        let f = Integrand::new(|u: f64| c((2.0 * PI * u).sin()) * cot(c(PI * u / 0.5)))
            .with_breakpoints([0.5]);
        let r = integrate(&f, 1e-10, 1e-12, 100_000).unwrap();
        // sin(2x) cot(2x)... = cos(2 pi u), integral over [0, 1] is 0
        assert!(r.value.norm() < 1e-12);
    }
}
