//! Earlier formal accounts of luck, kept for comparison output.

use super::report::{LuckMode, LuckReport, Term};
use super::LuckError;

/// Rescher: `L = E (1 - p)`, stake times improbability.
pub fn rescher_luck(stake: f64, probability: f64) -> Result<LuckReport, LuckError> {
    if !(0.0..=1.0).contains(&probability) {
        return Err(LuckError::InvalidProbability(probability));
    }
    Ok(LuckReport::from_terms(LuckMode::Rescher, vec![Term::new("E(1-p)", stake * (1.0 - probability))]))
}

/// Teigen: `L = du / D`, utility contrast over distance to the alternative.
pub fn teigen_luck(utility_gap: f64, distance: f64) -> Result<LuckReport, LuckError> {
    if !(distance > 0.0 && distance.is_finite()) {
        return Err(LuckError::UndefinedDistance(distance));
    }
    Ok(LuckReport::from_terms(LuckMode::Teigen, vec![Term::new("du/D", utility_gap / distance)]))
}
