//! Finite Fourier sums over a harmonic progression,
//! `sum_{j=1}^n trig(2 pi (a j + b)/m) / (a j + b)^order`, and the exponential
//! sum `sum_{j=1}^n e^{m(j+b)} / (j+b)^k`, each in closed form (Taylor
//! brackets, harmonic progressions and one integral over [0, 1]) and by
//! direct summation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cmath::{c, cot, coth, factorial, fmt_c, taylor_tail, CompensatedSum, Series, I};
use crate::error::{Error, Result};
use crate::harmonic::harmonic_progression;
use crate::quadrature::{integrate_with, Integrand, QuadConfig};
use crate::ComplexValue;

/// Which of the four partial sums. `k` in [`SumParams`] is the half-order:
/// `CosEven`/`SinEven` have order `2k` (`k >= 1`), `SinOdd`/`CosOdd` order `2k+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrigKind {
    CosEven,
    SinOdd,
    CosOdd,
    SinEven,
}

impl TrigKind {
    pub const ALL: [TrigKind; 4] = [TrigKind::CosEven, TrigKind::SinOdd, TrigKind::CosOdd, TrigKind::SinEven];

    pub fn order(self, k: u32) -> Result<u32> {
        match self {
            TrigKind::CosEven | TrigKind::SinEven if k == 0 => {
                Err(Error::invalid(format!("{} needs k >= 1", self.name())))
            }
            TrigKind::CosEven | TrigKind::SinEven => Ok(2 * k),
            TrigKind::SinOdd | TrigKind::CosOdd => Ok(2 * k + 1),
        }
    }

    pub fn is_cos(self) -> bool {
        matches!(self, TrigKind::CosEven | TrigKind::CosOdd)
    }

    pub fn name(self) -> &'static str {
        match self {
            TrigKind::CosEven => "cos-even",
            TrigKind::SinOdd => "sin-odd",
            TrigKind::CosOdd => "cos-odd",
            TrigKind::SinEven => "sin-even",
        }
    }

    fn series(self) -> Series {
        if self.is_cos() {
            Series::Cos
        } else {
            Series::Sin
        }
    }
}

impl std::str::FromStr for TrigKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TrigKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown kind '{s}' (cos-even, sin-odd, cos-odd, sin-even)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumParams {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub m: ComplexValue,
    pub k: u32,
    pub n: u64,
}

/// A closed-form value with the error carried over from its quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: ComplexValue,
    pub error_estimate: f64,
    /// Sum of the moduli of the terms combined into `value`.
    pub magnitude: f64,
}

fn trig(series: Series, x: Complex64) -> Complex64 {
    match series {
        Series::Cos => x.cos(),
        _ => x.sin(),
    }
}

fn check_common(p: &SumParams) -> Result<()> {
    if p.n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if p.m.norm() == 0.0 {
        return Err(Error::ImproperAtZero);
    }
    Ok(())
}

/// Real panel edges at the (removable) poles `u = l m / a` of `cot(pi a u / m)`.
fn cot_breakpoints(a: ComplexValue, m: ComplexValue) -> Vec<f64> {
    let r = m / a;
    if r.im.abs() > 1e-9 * r.norm() || r.re.abs() >= 1.0 {
        return Vec::new();
    }
    (1..).map(|l| l as f64 * r.re.abs()).take_while(|u| *u < 1.0).collect()
}

/// Right-hand side of the closed-form identity for the trig partial sum.
pub fn trig_partial_closed(kind: TrigKind, p: &SumParams, cfg: &QuadConfig) -> Result<Evaluation> {
    check_common(p)?;
    let order = kind.order(p.k)? as i32;
    let k = p.k as i32;
    let (a, b, m) = (p.a, p.b, p.m);
    let t = 2.0 * PI / m;
    let big = a * p.n as f64 + b;
    let series = kind.series();
    let keep = if kind == TrigKind::SinEven { k - 1 } else { k };

    let mut acc = CompensatedSum::new();
    if b != c(0.0) {
        acc.add(-0.5 * taylor_tail(series, t, b, order, keep));
    }
    acc.add(0.5 * taylor_tail(series, t, big, order, keep));

    // sum over HP_q(n) with q of the parity opposite to the trig function
    let (first_q, sign) = match kind {
        TrigKind::CosEven | TrigKind::SinOdd => (2, 1.0),
        TrigKind::CosOdd => (1, 1.0),
        TrigKind::SinEven => (1, -1.0),
    };
    let mut q = first_q;
    while q <= order {
        let e = (order - q) as u32;
        let j = q / 2;
        let parity = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        let hp = harmonic_progression(q as u32, a, b, p.n)?;
        acc.add(sign * parity * t.powi(e as i32) / factorial(e) * hp);
        q += 2;
    }

    // (1-u)^w (f(t N u) - f(t b u)) cot(pi a u / m), f = sin for matching parity
    let w = match kind {
        TrigKind::CosEven | TrigKind::SinEven => 2 * k - 1,
        TrigKind::SinOdd | TrigKind::CosOdd => 2 * k,
    };
    let inner = match kind {
        TrigKind::CosEven | TrigKind::SinOdd => Series::Sin,
        _ => Series::Cos,
    };
    let kparity = if k % 2 == 0 { 1.0 } else { -1.0 };
    let coef = sign * kparity * t.powi(w + 1) / (2.0 * factorial(w as u32));
    let f = Integrand::new(move |u: f64| {
        let diff = trig(inner, t * big * u) - trig(inner, t * b * u);
        (1.0 - u).powi(w) * diff * cot(PI * a * u / m)
    })
    .with_breakpoints(cot_breakpoints(a, m));
    let cycles = (big.norm() + b.norm()) / m.norm();
    let integral = integrate_with(&f, &cfg.resolving(cycles))?;
    acc.add(coef * integral.value);

    Ok(Evaluation {
        value: acc.value(),
        error_estimate: coef.norm() * integral.abs_error_estimate,
        magnitude: acc.magnitude(),
    })
}

/// Compensated direct summation of the trig partial sum.
pub fn trig_partial_direct(kind: TrigKind, p: &SumParams) -> Result<ComplexValue> {
    check_common(p)?;
    let order = kind.order(p.k)? as i32;
    let t = 2.0 * PI / p.m;
    let series = kind.series();
    let mut acc = CompensatedSum::new();
    for j in 1..=p.n {
        let x = p.a * j as f64 + p.b;
        if x.norm() < 1e-14 * (p.a.norm() * j as f64 + p.b.norm()) {
            return Err(Error::PoleInRange { index: j });
        }
        acc.add(trig(series, t * x) / x.powi(order));
    }
    Ok(acc.value())
}

/// `u` in (0, 1] where `coth(m u / 2)` has a pole, if any.
pub(crate) fn coth_pole_on_path(m: ComplexValue) -> Option<f64> {
    let reach = (m.norm() / (2.0 * PI)).floor() as i64;
    (1..=reach).flat_map(|l| [l, -l]).find_map(|l| {
        let u = 2.0 * PI * I * l as f64 / m;
        (u.im.abs() < 1e-12 && u.re > 0.0 && u.re <= 1.0 + 1e-12).then_some(u.re)
    })
}

/// Right-hand side of the closed form of `sum_{j=1}^n e^{m(j+b)} / (j+b)^k`
/// (`a` must be 1). At `b = 0` the `b`-bracket is dropped, which is its limit.
pub fn lerch_partial_closed(p: &SumParams, cfg: &QuadConfig) -> Result<Evaluation> {
    check_common(p)?;
    if p.a != c(1.0) {
        return Err(Error::invalid("the exponential partial sum is defined for a = 1"));
    }
    if p.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if coth_pole_on_path(p.m).is_some() {
        return Err(Error::CothPole { m: fmt_c(p.m) });
    }
    let (b, m) = (p.b, p.m);
    let k = p.k as i32;
    let big = b + p.n as f64;

    let mut acc = CompensatedSum::new();
    if b != c(0.0) {
        acc.add(-0.5 * taylor_tail(Series::Exp, m, b, k, k));
    }
    acc.add(0.5 * taylor_tail(Series::Exp, m, big, k, k));
    for j in 1..=p.k {
        let e = p.k - j;
        let hp = harmonic_progression(j, c(1.0), b, p.n)?;
        acc.add(m.powi(e as i32) / factorial(e) * hp);
    }
    let coef = m.powi(k) / (2.0 * factorial(p.k - 1));
    let f = Integrand::new(move |u: f64| {
        (1.0 - u).powi(k - 1) * ((m * big * u).exp() - (m * b * u).exp()) * coth(m * u / 2.0)
    });
    let cycles = m.norm() * big.norm() / (2.0 * PI);
    let integral = integrate_with(&f, &cfg.resolving(cycles))?;
    acc.add(coef * integral.value);
    Ok(Evaluation {
        value: acc.value(),
        error_estimate: coef.norm() * integral.abs_error_estimate,
        magnitude: acc.magnitude(),
    })
}

/// Compensated direct summation of `sum_{j=1}^n e^{m(j+b)} / (j+b)^k`.
pub fn lerch_partial_direct(p: &SumParams) -> Result<ComplexValue> {
    check_common(p)?;
    let k = p.k as i32;
    let mut acc = CompensatedSum::new();
    for j in 1..=p.n {
        let x = p.b + j as f64;
        if x.norm() < 1e-14 * (j as f64 + p.b.norm()) {
            return Err(Error::PoleInRange { index: j });
        }
        acc.add((p.m * x).exp() / x.powi(k));
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64, m: f64, k: u32, n: u64) -> SumParams {
        SumParams { a: c(a), b: c(b), m: c(m), k, n }
    }

    fn assert_identity(kind: TrigKind, p: &SumParams) {
        let closed = trig_partial_closed(kind, p, &QuadConfig::default()).unwrap().value;
        let direct = trig_partial_direct(kind, p).unwrap();
        let scale = direct.norm().max(1.0);
        assert!((closed - direct).norm() / scale < 1e-9, "{kind:?} {p:?}: {closed} vs {direct}");
    }

    #[test]
    fn sin_odd_vanishes_at_integer_multiples() {
        let p = params(1.0, 0.0, 1.0, 0, 7);
        let closed = trig_partial_closed(TrigKind::SinOdd, &p, &QuadConfig::default()).unwrap().value;
        assert!(closed.norm() < 1e-12, "{closed}");
    }

    #[test]
    fn cos_even_alternating_basel() {
        let p = params(1.0, 0.0, 2.0, 1, 50);
        let expect: f64 = (1..=50).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } / (j * j) as f64).sum();
        assert!((expect + 0.822_271_031_826_028_9).abs() < 1e-15);
        let closed = trig_partial_closed(TrigKind::CosEven, &p, &QuadConfig::default()).unwrap().value;
        assert!((closed.re - expect).abs() < 1e-12);
    }

    #[test]
    fn cos_odd_with_offset() {
        assert_identity(TrigKind::CosOdd, &params(1.0, 1.0 / 3.0, 3.0, 0, 20));
    }

    #[test]
    fn direct_examples() {
        let one = trig_partial_direct(TrigKind::SinOdd, &params(1.0, 0.0, 4.0, 0, 1)).unwrap();
        assert!((one - c(1.0)).norm() < 1e-15);
        let three = trig_partial_direct(TrigKind::CosEven, &params(2.0, 1.0, 5.0, 1, 3)).unwrap();
        let expect: f64 = (1..=3)
            .map(|j| {
                let x = 2.0 * j as f64 + 1.0;
                (2.0 * PI * x / 5.0).cos() / (x * x)
            })
            .sum();
        assert!((three.re - expect).abs() < 1e-15);
    }

    #[test]
    fn every_kind_matches_direct_sum() {
        let cases = [
            params(1.0, 0.0, 2.0, 1, 5),
            params(1.0, 0.25, 1.5, 2, 17),
            params(2.0, -0.3, 5.0, 3, 200),
            params(0.7, 0.6, 1.0, 1, 2),
        ];
        for kind in TrigKind::ALL {
            for p in &cases {
                assert_identity(kind, p);
            }
        }
    }

    #[test]
    fn complex_parameters() {
        let p = SumParams {
            a: Complex64::new(1.3, 0.1),
            b: Complex64::new(0.4, -0.2),
            m: Complex64::new(2.5, 0.7),
            k: 2,
            n: 17,
        };
        for kind in TrigKind::ALL {
            assert_identity(kind, &p);
        }
    }

    #[test]
    fn lerch_partial_examples() {
        let cfg = QuadConfig::default();
        let single = lerch_partial_closed(&params(1.0, 0.0, -1.0, 2, 1), &cfg).unwrap().value;
        assert!((single.re - (-1.0f64).exp()).abs() < 1e-13);

        for p in [params(1.0, 0.5, -2.0, 1, 10), params(1.0, 0.0, 2.0, 3, 5)] {
            let closed = lerch_partial_closed(&p, &cfg).unwrap().value;
            let direct = lerch_partial_direct(&p).unwrap();
            assert!((closed - direct).norm() / direct.norm() < 1e-10, "{p:?}");
        }
        let li1: f64 = (1..=1000).map(|j| (-(j as f64)).exp() / j as f64).sum();
        let direct = lerch_partial_direct(&params(1.0, 0.0, -1.0, 1, 1000)).unwrap();
        assert!((direct.re - li1).abs() < 1e-15);
    }

    #[test]
    fn lerch_partial_rejects_coth_pole() {
        let p = SumParams { m: Complex64::new(0.0, 7.0), ..params(1.0, 0.5, 1.0, 2, 4) };
        assert!(matches!(lerch_partial_closed(&p, &QuadConfig::default()), Err(Error::CothPole { .. })));
    }

    #[test]
    fn b_zero_branch_is_continuous() {
        let cfg = QuadConfig::default();
        for kind in TrigKind::ALL {
            let at0 = trig_partial_closed(kind, &params(1.0, 0.0, 3.0, 2, 9), &cfg).unwrap().value;
            let near = trig_partial_closed(kind, &params(1.0, 1e-6, 3.0, 2, 9), &cfg).unwrap().value;
            assert!((at0 - near).norm() <= 1e-4 * at0.norm(), "{kind:?}");
        }
        let at0 = lerch_partial_closed(&params(1.0, 0.0, -1.5, 3, 9), &cfg).unwrap().value;
        let near = lerch_partial_closed(&params(1.0, 1e-6, -1.5, 3, 9), &cfg).unwrap().value;
        assert!((at0 - near).norm() <= 1e-4 * at0.norm());
    }

    #[test]
    fn pole_in_range_is_reported() {
        let p = params(1.0, -3.0, 2.0, 1, 5);
        assert!(matches!(trig_partial_direct(TrigKind::CosEven, &p), Err(Error::PoleInRange { index: 3 })));
        assert!(matches!(
            trig_partial_closed(TrigKind::CosEven, &p, &QuadConfig::default()),
            Err(Error::PoleInRange { index: 3 })
        ));
    }
}
