//! Hurwitz zeta at negative integer order through even zeta values, the
//! exact Bernoulli-polynomial reference, and the residual of the
//! polylogarithm-Hurwitz relation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::cmath::{c, factorial, CompensatedSum, I};
use crate::error::{Error, Result};
use crate::lerch::polylog;
use crate::oracle::zeta_int;
use crate::quadrature::QuadConfig;
use crate::ComplexValue;

/// Largest Bernoulli degree kept in exact arithmetic.
pub const MAX_BERNOULLI_DEGREE: usize = 64;

/// `B_n(x) = sum_j coefficients[j] x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliPoly {
    pub degree: usize,
    pub coefficients: Vec<BigRational>,
}

impl BernoulliPoly {
    pub fn new(degree: usize) -> Result<Self> {
        let b = bernoulli_numbers(degree)?;
        let mut binom = BigInt::one();
        let mut coefficients = Vec::with_capacity(degree + 1);
        // coefficient of x^j is C(n, j) B_{n-j}
        for j in 0..=degree {
            if j > 0 {
                binom = binom * BigInt::from(degree - j + 1) / BigInt::from(j);
            }
            coefficients.push(BigRational::from_integer(binom.clone()) * &b[degree - j]);
        }
        Ok(BernoulliPoly { degree, coefficients })
    }

    pub fn eval(&self, x: ComplexValue) -> ComplexValue {
        self.coefficients
            .iter()
            .rev()
            .fold(c(0.0), |acc, q| acc * x + q.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, q| acc * x + q)
    }
}

/// `B_0 .. B_degree` (with `B_1 = -1/2`) from
/// `sum_{j<=n} C(n+1, j) B_j = 0`; computed once.
fn bernoulli_numbers(degree: usize) -> Result<&'static [BigRational]> {
    if degree > MAX_BERNOULLI_DEGREE {
        return Err(Error::DegreeTooLarge { degree, max: MAX_BERNOULLI_DEGREE });
    }
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=MAX_BERNOULLI_DEGREE {
            let mut binom = BigInt::one(); // C(n+1, 0)
            let mut sum = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                if j > 0 {
                    binom = binom * BigInt::from(n + 2 - j) / BigInt::from(j);
                }
                sum += BigRational::from_integer(binom.clone()) * bj;
            }
            b.push(-sum / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    });
    Ok(&table[..=degree])
}

/// The Bernoulli number `B_n` as an exact rational.
pub fn bernoulli_number(n: usize) -> Result<BigRational> {
    Ok(bernoulli_numbers(n)?[n].clone())
}

/// `B_n(b)`.
pub fn bernoulli_poly(n: usize, b: ComplexValue) -> Result<ComplexValue> {
    Ok(BernoulliPoly::new(n)?.eval(b))
}

/// `zeta(-k, b) = b^k/2 + 2 k! sum_{j=0}^{floor((k+1)/2)} (-1)^j (2 pi)^{-2j} zeta(2j) b^{k+1-2j} / (k+1-2j)!`.
///
/// At `b = 0` the sum has a removable `0 * inf`, so it returns `-B_{k+1}(0)/(k+1)`.
pub fn hurwitz_zeta_neg(k: u32, b: ComplexValue) -> Result<ComplexValue> {
    let n = k as usize + 1;
    if n > MAX_BERNOULLI_DEGREE {
        return Err(Error::DegreeTooLarge { degree: n, max: MAX_BERNOULLI_DEGREE });
    }
    if b.norm() == 0.0 {
        return Ok(c(-bernoulli_number(n)?.to_f64().unwrap_or(f64::NAN) / n as f64));
    }
    let mut acc = CompensatedSum::new();
    acc.add(b.powi(k as i32) / 2.0);
    let two_pi_sq = (2.0 * PI).powi(2);
    for j in 0..=k.div_ceil(2) {
        let e = k + 1 - 2 * j;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let z = zeta_int(2 * j as i32)? / two_pi_sq.powi(j as i32);
        acc.add(2.0 * factorial(k) * sign * z * b.powi(e as i32) / factorial(e));
    }
    Ok(acc.value())
}

/// The same sum in exact arithmetic, with `zeta(2j) (2 pi)^{-2j}` replaced by
/// `(-1)^{j+1} B_{2j} / (2 (2j)!)`.
pub fn hurwitz_zeta_neg_exact(k: u32, b: &BigRational) -> Result<BigRational> {
    let n = k as usize + 1;
    let bern = bernoulli_numbers(n)?;
    let fact = |x: usize| -> BigInt { (1..=x).map(BigInt::from).product() };
    let pow = |e: usize| -> BigRational { (0..e).fold(BigRational::one(), |acc, _| acc * b) };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut acc = pow(k as usize) * half;
    let kf = fact(k as usize);
    for j in 0..=n / 2 {
        let e = n - 2 * j;
        let denom = fact(2 * j) * fact(e);
        acc -= BigRational::new(kf.clone(), denom) * &bern[2 * j] * pow(e);
    }
    Ok(acc)
}

/// `|(2 pi)^k/(k-1)! zeta(1-k, b) - i^{-k} Li_k(e^{2 pi i b}) - i^k Li_k(e^{-2 pi i b})|`
/// for `k >= 2` and `b` in `(0, 1)`.
pub fn hurwitz_polylog_relation_residual(k: u32, b: f64, cfg: &QuadConfig) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid("the relation is checked for k >= 2"));
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::invalid("the relation is checked for b in (0, 1)"));
    }
    let lhs = (2.0 * PI).powi(k as i32) / factorial(k - 1) * hurwitz_zeta_neg(k - 1, c(b))?;
    let m = 2.0 * PI * I * b;
    let ik = I.powi(k as i32);
    let rhs = polylog(k, m, cfg)?.value / ik + ik * polylog(k, -m, cfg)?.value;
    Ok((lhs - rhs).norm())
}
