//! Three-way classification of the offset `b`. The closed forms change shape
//! at integers and half-integers, where `cot(pi b)` or `csc(2 pi b)` blow up.

use serde::{Deserialize, Serialize};

use crate::ComplexValue;

/// Distance below which `b` (resp. `2b`) counts as an integer.
pub const REGIME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    GenericB,
    HalfIntegerB,
    IntegerB,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BClass {
    pub regime: Regime,
    pub b: ComplexValue,
}

impl BClass {
    pub fn classify(b: ComplexValue) -> Self {
        let regime = if b.im.abs() >= REGIME_TOL {
            Regime::GenericB
        } else if (b.re - b.re.round()).abs() < REGIME_TOL {
            Regime::IntegerB
        } else {
            let twice = 2.0 * b.re;
            let nearest = twice.round();
            if (twice - nearest).abs() < REGIME_TOL && (nearest as i64) % 2 != 0 {
                Regime::HalfIntegerB
            } else {
                Regime::GenericB
            }
        };
        BClass { regime, b }
    }

    /// The integer `b` rounds to, for `IntegerB`.
    pub fn integer(&self) -> Option<i64> {
        (self.regime == Regime::IntegerB).then(|| self.b.re.round() as i64)
    }
}
