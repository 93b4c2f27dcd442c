//! Complex elementary helpers shared by the formula modules: accurate
//! `cot`/`coth` near their poles, Taylor remainders divided by a power of
//! the expansion variable, and compensated summation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::ComplexValue;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Below this modulus `cot`/`coth` switch to their Laurent expansions.
const LAURENT_RADIUS: f64 = 1e-4;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `n!` as a float; exact up to 22!, correctly rounded beyond.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Complex cotangent, stable for small |z| and for large |Im z|.
pub fn cot(z: Complex64) -> Complex64 {
    if z.norm() < LAURENT_RADIUS {
        let z2 = z * z;
        return z.inv() - z / 3.0 - z * z2 / 45.0;
    }
    if z.im.abs() < 15.0 {
        return z.cos() / z.sin();
    }
    if z.im > 0.0 {
        let w = (2.0 * I * z).exp();
        I * (w + 1.0) / (w - 1.0)
    } else {
        let w = (-2.0 * I * z).exp();
        I * (1.0 + w) / (1.0 - w)
    }
}

/// Complex hyperbolic cotangent, `coth z = i cot(i z)`.
pub fn coth(z: Complex64) -> Complex64 {
    I * cot(I * z)
}

/// Distance from `z` to the nearest pole `l*pi` of `cot`.
pub fn cot_pole_distance(z: Complex64) -> f64 {
    let l = (z.re / PI).round();
    (z - l * PI).norm()
}

/// Which elementary function a Taylor remainder is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    Cos,
    Sin,
    Exp,
}

impl Series {
    fn power(self, j: i32) -> i32 {
        match self {
            Series::Cos => 2 * j,
            Series::Sin => 2 * j + 1,
            Series::Exp => j,
        }
    }

    fn coefficient(self, j: i32) -> f64 {
        let p = self.power(j) as u32;
        let sign = match self {
            Series::Exp => 1.0,
            _ if j % 2 == 0 => 1.0,
            _ => -1.0,
        };
        sign / factorial(p)
    }

    fn eval(self, x: Complex64) -> Complex64 {
        match self {
            Series::Cos => x.cos(),
            Series::Sin => x.sin(),
            Series::Exp => x.exp(),
        }
    }

    /// Ratio term(j+1)/term(j) of the Maclaurin series at `x`.
    fn ratio(self, j: i32, x: Complex64) -> Complex64 {
        let j = j as f64;
        match self {
            Series::Cos => -x * x / ((2.0 * j + 1.0) * (2.0 * j + 2.0)),
            Series::Sin => -x * x / ((2.0 * j + 2.0) * (2.0 * j + 3.0)),
            Series::Exp => x / (j + 1.0),
        }
    }
}

/// `[f(scale*b) - sum_{j=0}^{keep} t_j(scale*b)] / b^power` where `t_j` are the
/// Maclaurin terms of `f`. `keep = -1` subtracts nothing.
///
/// Small arguments sum the remainder series directly, so the result stays
/// accurate as `b -> 0`; at `b = 0` exactly this returns the limit, which is
/// finite whenever the first kept-out term has degree >= `power`.
pub fn taylor_tail(series: Series, scale: Complex64, b: Complex64, power: i32, keep: i32) -> Complex64 {
    let first = keep + 1;
    let first_pow = series.power(first);
    if b == Complex64::new(0.0, 0.0) {
        return match first_pow.cmp(&power) {
            std::cmp::Ordering::Greater => Complex64::new(0.0, 0.0),
            std::cmp::Ordering::Equal => series.coefficient(first) * scale.powi(first_pow),
            std::cmp::Ordering::Less => Complex64::new(f64::INFINITY, f64::NAN),
        };
    }
    let x = scale * b;
    if x.norm() <= (0.5 * (first_pow as f64 + 1.0)).max(1.0) {
        let mut term = series.coefficient(first) * scale.powi(first_pow) * b.powi(first_pow - power);
        let mut acc = CompensatedSum::new();
        for j in (first..).take(400) {
            acc.add(term);
            term *= series.ratio(j, x);
            if term.norm() <= 1e-18 * acc.value().norm() || term.norm() == 0.0 {
                break;
            }
        }
        acc.value()
    } else {
        let mut poly = CompensatedSum::new();
        if keep >= 0 {
            let mut term = series.coefficient(0) * x.powi(series.power(0));
            for j in 0..=keep {
                poly.add(term);
                term *= series.ratio(j, x);
            }
        }
        (series.eval(x) - poly.value()) / b.powi(power)
    }
}

/// Neumaier-compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
    magnitude: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
        self.magnitude += x.norm();
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }

    /// Sum of the moduli of everything added; `magnitude / |value|` measures
    /// the cancellation the sum went through.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }
}

fn neumaier(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let comp = if sum.abs() >= x.abs() {
        comp + ((sum - t) + x)
    } else {
        comp + ((x - t) + sum)
    };
    (t, comp)
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<T: IntoIterator<Item = Complex64>>(iter: T) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compact `re+imI` rendering used in error messages.
pub fn fmt_c(z: ComplexValue) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}I", z.re, z.im)
    }
}

/// `z` is within `tol` of a real integer.
pub fn near_integer(z: ComplexValue, tol: f64) -> Option<i64> {
    let r = z.re.round();
    ((z - r).norm() < tol).then_some(r as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn cot_matches_ratio_away_from_poles() {
        for z in [c(0.3), Complex64::new(1.1, 0.4), Complex64::new(-2.0, -3.0), c(1e-5)] {
            let expect = z.cos() / z.sin();
            assert!(close(cot(z), expect, 1e-13), "{z}");
        }
    }

    #[test]
    fn cot_large_imaginary_tends_to_minus_i() {
        let z = Complex64::new(0.7, 400.0);
        assert!(close(cot(z), -I, 1e-15));
        let z = Complex64::new(0.7, -400.0);
        assert!(close(cot(z), I, 1e-15));
        assert!(close(coth(c(500.0)), c(1.0), 1e-15));
    }

    #[test]
    fn cot_laurent_branch_is_continuous() {
        let below = cot(c(0.99e-4));
        let above = cot(c(1.01e-4));
        let slope = (above - below).norm();
        assert!(slope < 2.2e4, "{slope}");
    }

    #[test]
    fn taylor_tail_small_b_matches_leading_term() {
        // (cos x - 1 + x^2/2) / b^4 with x = s b tends to s^4/24
        let s = c(2.0);
        let b = c(1e-6);
        let got = taylor_tail(Series::Cos, s, b, 4, 1);
        assert!(close(got, c(16.0 / 24.0), 1e-10));
        assert_eq!(taylor_tail(Series::Cos, s, c(0.0), 4, 1), c(16.0 / 24.0));
        assert_eq!(taylor_tail(Series::Exp, s, c(0.0), 3, 3), c(0.0));
    }

    #[test]
    fn taylor_tail_agrees_across_branches() {
        for series in [Series::Cos, Series::Sin, Series::Exp] {
            for keep in [-1, 0, 2, 4] {
                let scale = Complex64::new(1.3, -0.4);
                let p = 3;
                // x just below and above the switch point
                let pow = series.power(keep + 1) as f64;
                let switch = (0.5 * (pow + 1.0)).max(1.0) / scale.norm();
                let lo = taylor_tail(series, scale, c(switch * 0.999), p, keep);
                let hi = taylor_tail(series, scale, c(switch * 1.001), p, keep);
                assert!((lo - hi).norm() < 0.05 * lo.norm().max(1e-3), "{series:?} {keep}");
            }
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let acc: CompensatedSum = [c(1e16), c(1.0), c(-1e16)].into_iter().collect();
        assert_eq!(acc.value(), c(1.0));
    }
}
