use serde::{Deserialize, Serialize};

use super::MdlError;
use crate::cost::BitCost;

/// One independent parameter the world must set to produce an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChoicePoint {
    /// A uniform choice among `cardinality` alternatives.
    Finite { cardinality: u64 },
    /// A position on an interval of length `extent`, resolved to `precision`.
    Continuous { extent: f64, precision: f64 },
}

impl ChoicePoint {
    pub fn validate(&self) -> Result<(), MdlError> {
        match *self {
            ChoicePoint::Finite { cardinality: 0 } => {
                Err(MdlError::InvalidChoice("finite cardinality must be >= 1".into()))
            }
            ChoicePoint::Continuous { extent, precision }
                if !(precision.is_finite() && extent.is_finite() && precision > 0.0 && extent >= precision) =>
            {
                Err(MdlError::InvalidChoice(format!(
                    "continuous choice needs extent >= precision > 0, got extent {extent}, precision {precision}"
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn cost(&self) -> BitCost {
        let bits = match *self {
            ChoicePoint::Finite { cardinality } => (cardinality as f64).log2(),
            ChoicePoint::Continuous { extent, precision } => (extent / precision).log2(),
        };
        BitCost::new(bits).expect("validated choice point")
    }
}

/// The observer's model of the process generating an outcome: a list of
/// independent choice points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ChoicePoint>", into = "Vec<ChoicePoint>")]
pub struct World {
    choices: Vec<ChoicePoint>,
}

impl World {
    pub fn new(choices: Vec<ChoicePoint>) -> Result<Self, MdlError> {
        choices.iter().try_for_each(ChoicePoint::validate)?;
        Ok(World { choices })
    }

    /// `n` independent uniform draws among `cardinality` values, as in a lottery.
    pub fn uniform_draws(n: usize, cardinality: u64) -> Result<Self, MdlError> {
        World::new(vec![ChoicePoint::Finite { cardinality }; n])
    }

    pub fn choices(&self) -> &[ChoicePoint] {
        &self.choices
    }

    pub fn generation_complexity(&self) -> BitCost {
        generation_complexity(self)
    }
}

impl TryFrom<Vec<ChoicePoint>> for World {
    type Error = MdlError;

    fn try_from(choices: Vec<ChoicePoint>) -> Result<Self, MdlError> {
        World::new(choices)
    }
}

impl From<World> for Vec<ChoicePoint> {
    fn from(w: World) -> Self {
        w.choices
    }
}

/// Generation complexity `C_w`: the sum of the per-choice costs.
pub fn generation_complexity(world: &World) -> BitCost {
    world.choices.iter().map(ChoicePoint::cost).sum()
}
