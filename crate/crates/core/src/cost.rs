use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A non-negative, finite quantity of information in bits.
///
/// Costs are real-valued: `log2` terms are never rounded.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BitCost(f64);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("bit cost must be finite and non-negative, got {0}")]
pub struct InvalidBitCost(pub f64);

impl BitCost {
    pub const ZERO: BitCost = BitCost(0.0);

    pub fn new(bits: f64) -> Result<Self, InvalidBitCost> {
        if bits.is_finite() && bits >= 0.0 {
            // normalise -0.0
            Ok(BitCost(bits + 0.0))
        } else {
            Err(InvalidBitCost(bits))
        }
    }

    /// `log2(n)` bits: the cost of one uniform choice among `n` alternatives.
    pub fn choice_among(n: u64) -> Self {
        assert!(n >= 1, "choice among zero alternatives");
        BitCost((n as f64).log2())
    }

    #[inline]
    pub fn bits(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for BitCost {
    type Error = InvalidBitCost;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        BitCost::new(value)
    }
}

impl From<BitCost> for f64 {
    fn from(c: BitCost) -> f64 {
        c.0
    }
}

impl Add for BitCost {
    type Output = BitCost;

    fn add(self, rhs: BitCost) -> BitCost {
        BitCost(self.0 + rhs.0)
    }
}

impl Sum for BitCost {
    fn sum<I: Iterator<Item = BitCost>>(iter: I) -> BitCost {
        iter.fold(BitCost::ZERO, Add::add)
    }
}

impl fmt::Display for BitCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = f.precision() {
            write!(f, "{:.*} bits", p, self.0)
        } else {
            write!(f, "{} bits", self.0)
        }
    }
}
