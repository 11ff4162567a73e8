//! Unexpectedness, subjective probability, emotion and causal propagation.
//!
//! Utilities and emotions share the logarithmic bit scale of complexities,
//! so they add directly to unexpectedness. Two sign constraints apply:
//! unexpectedness is floored at zero before it becomes a probability, and an
//! emotion is never negative. Both clampings are reported, never silent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::BitCost;

/// Unexpectedness `U = C_w - C`. May be negative; callers clamp per context.
pub fn unexpectedness(generation: BitCost, description: BitCost) -> f64 {
    generation.bits() - description.bits()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubjectiveProbability {
    pub value: f64,
    /// Set when a negative unexpectedness was floored to zero.
    pub clamped: bool,
}

/// `p = 2^-max(U, 0)`.
pub fn subjective_probability(u: f64) -> SubjectiveProbability {
    let clamped = u < 0.0;
    let u = if clamped { 0.0 } else { u };
    SubjectiveProbability { value: (-u).exp2(), clamped }
}

/// Emotional intensity in bits. Never negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Emotion {
    pub value: f64,
    /// Set when the raw intensity was negative and floored to zero.
    pub clamped: bool,
}

impl Emotion {
    fn floor(raw: f64) -> Emotion {
        if raw < 0.0 {
            Emotion { value: 0.0, clamped: true }
        } else {
            Emotion { value: raw + 0.0, clamped: false }
        }
    }
}

/// `E = max(E_h + U, 0)`.
pub fn emotion(hypothetical: f64, u: f64) -> Emotion {
    Emotion::floor(hypothetical + u)
}

/// Expected emotion of an anticipated situation: `E_h = V - U`.
pub fn anticipated_emotion(utility: f64, u: f64) -> f64 {
    utility - u
}

/// Unexpectedness of an effect from that of its cause: `U(effect) = U(cause) + C_w(effect|cause)`.
pub fn propagate_unexpectedness(u_cause: f64, link: BitCost) -> f64 {
    u_cause + link.bits()
}

/// Emotion attributed back to a cause: `E(cause) = max(E(effect) - C_w(effect|cause), 0)`.
pub fn retro_emotion(effect: Emotion, link: BitCost) -> Emotion {
    Emotion::floor(effect.value - link.bits())
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SituationError {
    #[error("situation {0:?} has neither a hypothetical emotion nor a utility")]
    NoEmotionalValue(String),
}

/// An outcome with its two complexities and its emotional value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Situation {
    pub id: String,
    /// Description complexity `C`.
    pub description: BitCost,
    /// Generation complexity `C_w`.
    pub generation: BitCost,
    /// Utility `V`, on the emotion bit scale. Negative for aversive outcomes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility: Option<f64>,
    /// Hypothetical emotional intensity `E_h`, when known directly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothetical_emotion: Option<f64>,
}

impl Situation {
    pub fn unexpectedness(&self) -> f64 {
        unexpectedness(self.generation, self.description)
    }

    /// `E_h`: the explicit value if given, otherwise `V - U`.
    pub fn hypothetical(&self) -> Result<f64, SituationError> {
        match (self.hypothetical_emotion, self.utility) {
            (Some(eh), _) => Ok(eh),
            (None, Some(v)) => Ok(anticipated_emotion(v, self.unexpectedness())),
            (None, None) => Err(SituationError::NoEmotionalValue(self.id.clone())),
        }
    }

    pub fn emotion(&self) -> Result<Emotion, SituationError> {
        Ok(emotion(self.hypothetical()?, self.unexpectedness()))
    }
}
