//! Independent reference values. Nothing here calls into the formula
//! modules: every closed form in the crate is checked against these routes.
//!
//! * [`sum_series`]: compensated direct summation with a certified tail bound.
//! * [`exp_series`]: `sum_{j>=1} e^{m(j+b)} / (j+b)^p` for `Re m <= 0`, with a
//!   summation-by-parts tail correction on the unit circle.
//! * [`zeta_int`], [`hurwitz_zeta_int`]: Euler-Maclaurin at integer `s >= 2`.
//! * [`digamma`], [`euler_gamma`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cmath::{c, cot, fmt_c, near_integer, CompensatedSum};
use crate::error::{Error, Result};
use crate::ComplexValue;

/// Hard cap on direct summation.
pub const MAX_TERMS: u64 = 100_000_000;

/// B_2, B_4, ..., B_16.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Euler-Maclaurin split point.
const EM_SPLIT: f64 = 20.0;

/// How the remainder of a truncated series is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailKind {
    /// `|a_{j+1}| <= ratio * |a_j|` from the truncation point on.
    Geometric { ratio: f64 },
    /// `|a_j| <= C j^{-exponent}` with `exponent > 1`, monotone.
    IntegralComparison { exponent: f64 },
    /// Real alternating terms decreasing in modulus.
    AlternatingLeibniz,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    pub kind: TailKind,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: ComplexValue,
    pub tail: TailBound,
    pub terms: u64,
}

/// Sums `term(1) + term(2) + ...` until the declared tail bound drops to
/// `target_abs_err`. The caller is responsible for the series actually
/// belonging to the declared class.
pub fn sum_series<F>(term: F, kind: TailKind, target_abs_err: f64) -> Result<SeriesSum>
where
    F: Fn(u64) -> ComplexValue,
{
    let mut acc = CompensatedSum::new();
    let mut j = 1u64;
    let mut current = term(1);
    loop {
        acc.add(current);
        let next = term(j + 1);
        let bound = match kind {
            TailKind::Geometric { ratio } => {
                if !(0.0..1.0).contains(&ratio) {
                    return Err(Error::invalid("geometric ratio must lie in [0, 1)"));
                }
                next.norm() / (1.0 - ratio)
            }
            TailKind::IntegralComparison { exponent } => {
                if exponent <= 1.0 {
                    return Err(Error::invalid("comparison exponent must exceed 1"));
                }
                current.norm() * j as f64 / (exponent - 1.0)
            }
            TailKind::AlternatingLeibniz => next.norm(),
        };
        if bound <= target_abs_err {
            return Ok(SeriesSum { value: acc.value(), tail: TailBound { kind, bound }, terms: j });
        }
        if j >= MAX_TERMS {
            return Err(Error::NoConvergence { terms: j });
        }
        j += 1;
        current = next;
    }
}

/// `sum_{j>=1} e^{m(j+b)} / (j+b)^order` for `Re m <= 0`.
///
/// Inside the unit disc the terms are summed until they fall below 1e-18 of
/// the partial sum. On (or near) the unit circle `max_terms` terms are summed
/// and the remainder `sum_{j>N} z^j g_j` is estimated by three rounds of
/// summation by parts, which leaves an error of order
/// `order^3 / (N^{order+3} |1-z|^3)`.
pub fn exp_series(m: ComplexValue, b: ComplexValue, order: u32, max_terms: u64) -> Result<ComplexValue> {
    if m.re > 1e-12 {
        return Err(Error::invalid(format!("exp_series needs Re(m) <= 0, got m = {}", fmt_c(m))));
    }
    if let Some(i) = near_integer(b, 1e-14) {
        if i < 0 {
            return Err(Error::PoleAtNegativeInteger { b: b.re });
        }
    }
    let p = order as i32;
    let z = m.exp();
    let one_minus_z = 1.0 - z;
    if one_minus_z.norm() < 1e-12 {
        // z = 1: a plain Hurwitz tail
        if order < 2 {
            return Err(Error::DivergentSeries { what: "sum of 1/(j+b)" });
        }
        return Ok((m * b).exp() * hurwitz_zeta_int(order, b + 1.0)?);
    }
    let term = |j: u64| (m * (j as f64 + b)).exp() / (j as f64 + b).powi(p);
    let mut acc = CompensatedSum::new();
    let interior = z.norm() < 1.0 - 1e-3;
    let mut n = 0u64;
    while n < max_terms {
        n += 1;
        let t = term(n);
        acc.add(t);
        if interior && t.norm() <= 1e-18 * acc.value().norm() {
            return Ok(acc.value());
        }
    }
    // remainder by summation by parts, in units of e^{mb}
    let g = |j: u64| (j as f64 + b).powi(-p);
    let d1 = g(n + 2) - g(n + 1);
    let d2 = g(n + 3) - 2.0 * g(n + 2) + g(n + 1);
    let zn = (m * (n as f64 + 1.0)).exp();
    let tail = zn * g(n + 1) / one_minus_z
        + zn * z * d1 / (one_minus_z * one_minus_z)
        + zn * z * z * d2 / (one_minus_z * one_minus_z * one_minus_z);
    Ok(acc.value() + (m * b).exp() * tail)
}

/// `(sum cos(2 pi (j+b)/m)/(j+b)^order, sum sin(2 pi (j+b)/m)/(j+b)^order)`
/// over `j >= 1`, from `terms` direct terms plus the tail correction of
/// [`exp_series`].
pub fn trig_series(order: u32, m: ComplexValue, b: ComplexValue, terms: u64) -> Result<(ComplexValue, ComplexValue)> {
    let theta = 2.0 * PI / m;
    let plus = exp_series(Complex64::i() * theta, b, order, terms)?;
    let minus = exp_series(-Complex64::i() * theta, b, order, terms)?;
    Ok(((plus + minus) / 2.0, (plus - minus) / (2.0 * Complex64::i())))
}

/// Riemann zeta at an integer `s >= 0`, with `zeta(0) = -1/2`.
pub fn zeta_int(s: i32) -> Result<f64> {
    match s {
        0 => Ok(-0.5),
        1 => Err(Error::PoleAtOne),
        s if s < 0 => Err(Error::invalid("zeta_int covers s >= 0 only")),
        s => Ok(hurwitz_zeta_int(s as u32, c(1.0))?.re),
    }
}

/// Hurwitz zeta `sum_{j>=0} (j+q)^{-s}` at integer `s >= 2` by
/// Euler-Maclaurin: 20 direct terms (more when `Re q` is negative) and eight
/// Bernoulli corrections.
pub fn hurwitz_zeta_int(s: u32, q: ComplexValue) -> Result<ComplexValue> {
    if s == 1 {
        return Err(Error::PoleAtOne);
    }
    if s == 0 {
        return Err(Error::invalid("hurwitz_zeta_int covers s >= 2 only"));
    }
    if let Some(i) = near_integer(q, 1e-14) {
        if i <= 0 {
            return Err(Error::PoleAtNonPositiveInteger { z: fmt_c(q) });
        }
    }
    let n = (EM_SPLIT - q.re).ceil().max(EM_SPLIT) as u64;
    let si = s as i32;
    let mut acc: CompensatedSum = (0..n).map(|j| (q + j as f64).powi(-si)).collect();
    let x = q + n as f64;
    let sf = s as f64;
    acc.add(x.powi(1 - si) / (sf - 1.0));
    acc.add(x.powi(-si) / 2.0);
    // B_{2i}/(2i)! * s(s+1)...(s+2i-2) * x^{-s-2i+1}
    let mut rising = sf;
    let mut fact = 2.0;
    let mut xpow = x.powi(-si - 1);
    let x2inv = (x * x).inv();
    for (i, b2i) in BERNOULLI_EVEN.iter().enumerate() {
        if i > 0 {
            let k = 2.0 * i as f64;
            rising *= (sf + k - 1.0) * (sf + k);
            fact *= (k + 1.0) * (k + 2.0);
            xpow *= x2inv;
        }
        acc.add(b2i / fact * rising * xpow);
    }
    Ok(acc.value())
}

/// Euler-Mascheroni constant.
pub fn euler_gamma() -> f64 {
    0.577_215_664_901_532_9
}

/// Digamma by reflection into `Re z >= 1/2`, upward recurrence to `Re z >= 10`
/// and the asymptotic series with eight Bernoulli terms.
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    if let Some(i) = near_integer(z, 1e-14) {
        if i <= 0 {
            return Err(Error::PoleAtNonPositiveInteger { z: fmt_c(z) });
        }
    }
    if z.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z)
        return Ok(digamma(1.0 - z)? - PI * cot(PI * z));
    }
    let mut z = z;
    let mut shift = CompensatedSum::new();
    while z.re < 10.0 {
        shift.add(-z.inv());
        z += 1.0;
    }
    let zinv2 = (z * z).inv();
    let mut zpow = zinv2;
    let mut series = CompensatedSum::new();
    series.add(z.ln());
    series.add(-0.5 * z.inv());
    for (i, b2n) in BERNOULLI_EVEN.iter().enumerate() {
        let two_n = 2.0 * (i + 1) as f64;
        series.add(-b2n / two_n * zpow);
        zpow *= zinv2;
    }
    Ok(series.value() + shift.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn sum_series_examples() {
        let zero = sum_series(|_| c(0.0), TailKind::Geometric { ratio: 0.5 }, 1e-15).unwrap();
        assert_eq!(zero.value, c(0.0));

        let geo = sum_series(|j| c((-(j as f64)).exp()), TailKind::Geometric { ratio: (-1.0f64).exp() }, 1e-16)
            .unwrap();
        assert!((geo.value.re - 1.0 / (E - 1.0)).abs() < 1e-15);
        assert!(geo.tail.bound <= 1e-16);

        let alt = sum_series(
            |j| c(if j % 2 == 1 { 1.0 } else { -1.0 } / j as f64),
            TailKind::AlternatingLeibniz,
            1e-7,
        )
        .unwrap();
        assert!((alt.value.re - LN_2).abs() <= 1e-7);
    }

    #[test]
    fn sum_series_integral_comparison_bound_holds() {
        let s = sum_series(|j| c((j as f64).powi(-3)), TailKind::IntegralComparison { exponent: 3.0 }, 1e-8)
            .unwrap();
        let exact = zeta_int(3).unwrap();
        assert!((s.value.re - exact).abs() <= s.tail.bound);
    }

    #[test]
    fn sum_series_is_deterministic() {
        let run = || sum_series(|j| c(1.0 / (j * j) as f64), TailKind::IntegralComparison { exponent: 2.0 }, 1e-6);
        assert_eq!(run().unwrap().value, run().unwrap().value);
    }

    #[test]
    fn zeta_reference_values() {
        assert!((zeta_int(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_int(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_int(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-15);
        assert_eq!(zeta_int(0).unwrap(), -0.5);
        assert!(matches!(zeta_int(1), Err(Error::PoleAtOne)));
        assert!((hurwitz_zeta_int(3, c(1.0)).unwrap().re - zeta_int(3).unwrap()).abs() < 1e-15);
        // zeta(2, 1/2) = 3 zeta(2)
        assert!((hurwitz_zeta_int(2, c(0.5)).unwrap().re - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_negative_and_complex_q() {
        // zeta(2, q) - zeta(2, q+1) = q^{-2}
        for q in [c(-2.5), Complex64::new(0.3, 2.0), Complex64::new(-7.2, -1.0)] {
            let d = hurwitz_zeta_int(2, q).unwrap() - hurwitz_zeta_int(2, q + 1.0).unwrap();
            assert!((d - q.powi(-2)).norm() < 1e-13 * q.powi(-2).norm().max(1.0), "{q}");
        }
        assert!(hurwitz_zeta_int(2, c(-3.0)).is_err());
    }

    #[test]
    fn digamma_reference_values() {
        let g = euler_gamma();
        assert!((digamma(c(1.0)).unwrap().re + g).abs() < 1e-14);
        assert!((digamma(c(2.0)).unwrap().re - (1.0 - g)).abs() < 1e-14);
        assert!((digamma(c(0.5)).unwrap().re - (-g - 2.0 * LN_2)).abs() < 1e-14);
        assert!((digamma(c(-0.5)).unwrap().re - (2.0 - g - 2.0 * LN_2)).abs() < 1e-13);
        assert!(digamma(c(0.0)).is_err());
        assert!(digamma(c(-4.0)).is_err());
    }

    #[test]
    fn exp_series_geometric_and_unit_circle() {
        // sum e^{-j}/j = -ln(1 - e^{-1})
        let li1 = exp_series(c(-1.0), c(0.0), 1, 10_000).unwrap();
        assert!((li1.re + (1.0 - (-1.0f64).exp()).ln()).abs() < 1e-15);
        // sum (-1)^j / j^2 = -pi^2/12 via the unit-circle tail
        let alt = exp_series(Complex64::new(0.0, PI), c(0.0), 2, 1000).unwrap();
        assert!((alt.re + PI * PI / 12.0).abs() < 1e-12, "{alt}");
        // sum cos(pi j/2)/j + i sin(pi j/2)/j = -ln(1 - i)
        let quarter = exp_series(Complex64::new(0.0, PI / 2.0), c(0.0), 1, 1000).unwrap();
        let expect = -(1.0 - Complex64::i()).ln();
        assert!((quarter - expect).norm() < 1e-10, "{quarter}");
    }
}
