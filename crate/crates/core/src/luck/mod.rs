//! Luck intensities.
//!
//! * `L1`: luck read off the actual outcome alone, `E_h + U`.
//! * `L2`: luck against a counterfactual reached from the actual outcome,
//!   `E_h(s2/s1) + U(s2) - C_wc(s2|s1)`.
//! * `L3`: the near-miss counterfactual assessed against the expected
//!   emotion of winning instead of the actual outcome.
//!
//! Values are in bits and may be negative; clamping is left to presentation.

mod assess;
mod baseline;
mod causal;
mod nearmiss;
mod report;

pub use assess::{
    assess, assess_scene, choose_reading, Baselines, CounterfactualCandidate, RescherInput, Scene, SceneAssessment,
    TeigenInput,
};
pub use baseline::{rescher_luck, teigen_luck};
pub use causal::{causal_luck_actual, causal_luck_counterfactual, most_mutable_cause, CausalLink};
pub use nearmiss::{
    expected_win_emotion, near_miss_continuous, near_miss_discrete, near_miss_expectation_baseline, Geometry,
    NearMissScene, MAX_SWEEP_STEPS,
};
pub use report::{LuckMode, LuckReport, Term};

use thiserror::Error;

use crate::cost::BitCost;
use crate::measures::SituationError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LuckError {
    #[error("not a near miss: landing inside winning region (delta = {delta})")]
    NotANearMiss { delta: f64 },

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("{op} requires {expected} geometry")]
    WrongGeometry { op: &'static str, expected: Geometry },

    #[error("counterfactual shift sweep of {steps} steps exceeds the limit of {max}")]
    SweepTooLarge { steps: u64, max: u64 },

    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("undefined distance: D must be positive, got {0}")]
    UndefinedDistance(f64),

    #[error("counterfactual {0:?} needs an explicit conditional hypothetical emotion")]
    MissingConditionalEmotion(String),

    #[error(transparent)]
    Situation(#[from] SituationError),
}

/// `L1 = E_h + U`, luck without a counterfactual.
pub fn luck_actual(hypothetical: f64, u: f64) -> LuckReport {
    LuckReport::from_terms(LuckMode::L1, vec![Term::new("E_h(s1)", hypothetical), Term::new("U(s1)", u)])
}

/// `L2 = E_h(s2/s1) + U(s2) - C_wc(s2|s1)`, luck against a counterfactual.
pub fn luck_counterfactual(conditional: f64, u_counterfactual: f64, cwc: BitCost) -> LuckReport {
    LuckReport::from_terms(
        LuckMode::L2,
        vec![
            Term::new("E_h(s2/s1)", conditional),
            Term::new("U(s2)", u_counterfactual),
            Term::new("-C_wc(s2|s1)", -cwc.bits()),
        ],
    )
}
