use serde::{Deserialize, Serialize};

use super::baseline::{rescher_luck, teigen_luck};
use super::nearmiss::{
    near_miss_continuous, near_miss_discrete, near_miss_expectation_baseline, Geometry, NearMissScene,
};
use super::report::LuckReport;
use super::{luck_actual, luck_counterfactual, LuckError};
use crate::cost::BitCost;
use crate::measures::Situation;

/// Picks the most intense reading. `readings[0]` is the actual-outcome
/// reading; ties keep the earlier reading and are noted on the result.
pub fn choose_reading(readings: Vec<LuckReport>) -> Option<LuckReport> {
    let mut best: Option<usize> = None;
    let mut ties: Vec<usize> = Vec::new();
    for (i, r) in readings.iter().enumerate() {
        match best {
            Some(b) if r.value > readings[b].value => {
                best = Some(i);
                ties.clear();
            }
            Some(b) if r.value == readings[b].value => ties.push(i),
            Some(_) => {}
            None => best = Some(i),
        }
    }
    let mut chosen = readings[best?].clone();
    for i in ties {
        let other = readings[i].counterfactual_id.as_deref().unwrap_or("actual");
        chosen.notes.push(format!("tie with {other} (reading {i}); earlier reading kept"));
    }
    Some(chosen)
}

fn counterfactual_reading(cf: &Situation, cwc: BitCost) -> Result<LuckReport, LuckError> {
    let conditional = cf.hypothetical_emotion.ok_or_else(|| LuckError::MissingConditionalEmotion(cf.id.clone()))?;
    Ok(luck_counterfactual(conditional, cf.unexpectedness(), cwc).with_counterfactual(cf.id.clone()))
}

fn actual_reading(actual: &Situation) -> Result<LuckReport, LuckError> {
    Ok(luck_actual(actual.hypothetical()?, actual.unexpectedness()))
}

/// Scores the actual outcome (`L1`) and each counterfactual (`L2`) and
/// returns the most intense reading.
///
/// A counterfactual's `hypothetical_emotion` is read as the conditional
/// `E_h(s2/s1)` and must be given explicitly.
pub fn assess(actual: &Situation, counterfactuals: &[(Situation, BitCost)]) -> Result<LuckReport, LuckError> {
    let mut readings = vec![actual_reading(actual)?];
    for (cf, cwc) in counterfactuals {
        readings.push(counterfactual_reading(cf, *cwc)?);
    }
    Ok(choose_reading(readings).expect("at least the actual reading"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterfactualCandidate {
    pub situation: Situation,
    /// `C_wc(s2|s1)`.
    pub cwc: BitCost,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RescherInput {
    pub stake: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeigenInput {
    pub utility_gap: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescher: Option<RescherInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub teigen: Option<TeigenInput>,
}

/// A scene file: the actual situation, optional counterfactual candidates,
/// an optional near-miss geometry, and optional baseline inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub actual: Situation,
    #[serde(default)]
    pub counterfactuals: Vec<CounterfactualCandidate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub near_miss: Option<NearMissScene>,
    /// Score the near miss against the expected win (`L3`) instead of the landing point.
    #[serde(default)]
    pub expectation_baseline: bool,
    #[serde(default)]
    pub baselines: Baselines,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneAssessment {
    pub chosen: LuckReport,
    /// Every reading considered, actual first.
    pub readings: Vec<LuckReport>,
    pub baselines: Vec<LuckReport>,
}

/// Like [`assess`], with the near-miss reading (if any) as the last candidate
/// and the requested baselines computed alongside.
pub fn assess_scene(scene: &Scene) -> Result<SceneAssessment, LuckError> {
    let mut readings = vec![actual_reading(&scene.actual)?];
    for c in &scene.counterfactuals {
        readings.push(counterfactual_reading(&c.situation, c.cwc)?);
    }
    if let Some(nm) = &scene.near_miss {
        let r = match (nm.geometry, scene.expectation_baseline) {
            // landed inside the winning region: a win, not a near miss
            _ if nm.delta == 0.0 => {
                nm.validate()?;
                luck_actual(nm.utility, 0.0)
                    .with_note("delta = 0: landing inside the winning region, scored as actual luck")
            }
            (Geometry::DiscreteBounded, false) => near_miss_discrete(nm)?,
            (Geometry::DiscreteBounded, true) => near_miss_expectation_baseline(nm)?,
            (Geometry::ContinuousUnbounded, false) => near_miss_continuous(nm)?,
            (Geometry::ContinuousUnbounded, true) => {
                return Err(LuckError::WrongGeometry {
                    op: "near_miss_expectation_baseline",
                    expected: Geometry::DiscreteBounded,
                })
            }
        };
        readings.push(r.with_counterfactual("near_miss"));
    }

    let mut baselines = Vec::new();
    if let Some(RescherInput { stake, probability }) = scene.baselines.rescher {
        baselines.push(rescher_luck(stake, probability)?);
    }
    if let Some(TeigenInput { utility_gap, distance }) = scene.baselines.teigen {
        baselines.push(teigen_luck(utility_gap, distance)?);
    }

    let chosen = choose_reading(readings.clone()).expect("at least the actual reading");
    Ok(SceneAssessment { chosen, readings, baselines })
}
