//! Near-miss luck on a linear wheel of fortune.
//!
//! A play lands at `s1`, a distance `delta` short of a winning region of
//! extent `l2` inside `l0` possible positions. The counterfactual `s2` lies
//! a shift `eta` past the winning edge. Its complexity trades the simplicity
//! of `s2` against the cost of the imagined change:
//!
//! ```text
//! discrete:   L2(eta) = V + log2 l0 - [log2 k + 1 + log2(1 + eta)] - [1 + log2(delta + eta)]
//! continuous: L2(eta) = V + log2(l0/a) - [log2 k + log2(1 + eta/a)] - [1 + log2((delta + eta)/a)]
//! ```
//!
//! `eta` is swept exhaustively rather than assumed; the optimum is `eta = 0`,
//! giving `V + log2(l0/delta) - 2` and `V + log2(l0/delta) - 1` respectively.
//! The continuous direction bit (`1 + ...` in the last bracket) is what
//! yields the closed-form `- 1`.
//!
//! `k` disjoint winning regions cost `log2 k` extra bits to single one out;
//! that penalty is always the last term, so `L(k) = L(1) - log2 k` holds
//! bit for bit.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::report::{LuckMode, LuckReport, Term};
use super::LuckError;

/// Upper bound on the number of shifts evaluated by one sweep.
pub const MAX_SWEEP_STEPS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    DiscreteBounded,
    ContinuousUnbounded,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::DiscreteBounded => "discrete_bounded",
            Geometry::ContinuousUnbounded => "continuous_unbounded",
        })
    }
}

fn default_k() -> u32 {
    1
}

fn default_alpha() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearMissScene {
    /// Total extent of possible landing positions.
    pub l0: f64,
    /// Extent of the winning region.
    pub l2: f64,
    /// Miss distance from the landing point to the nearest winning edge.
    pub delta: f64,
    /// Number of disjoint winning regions.
    #[serde(default = "default_k")]
    pub k: u32,
    /// Landing precision (continuous geometry).
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Utility of winning, `V(s+)`.
    pub utility: f64,
    pub geometry: Geometry,
}

impl NearMissScene {
    pub fn discrete(l0: f64, l2: f64, delta: f64, utility: f64) -> Self {
        NearMissScene { l0, l2, delta, k: 1, alpha: 1.0, utility, geometry: Geometry::DiscreteBounded }
    }

    pub fn continuous(l0: f64, delta: f64, alpha: f64, utility: f64) -> Self {
        NearMissScene { l0, l2: l0, delta, k: 1, alpha, utility, geometry: Geometry::ContinuousUnbounded }
    }

    pub fn with_sectors(mut self, k: u32) -> Self {
        self.k = k;
        self
    }

    /// Checks the geometry-independent invariants. Miss-distance checks are
    /// left to the individual models.
    pub fn validate(&self) -> Result<(), LuckError> {
        let bad = |msg: String| Err(LuckError::InvalidScene(msg));
        let all_finite = [self.l0, self.l2, self.delta, self.alpha, self.utility].iter().all(|x| x.is_finite());
        if !all_finite {
            return bad("all scene parameters must be finite".into());
        }
        if !(self.l2 > 0.0 && self.l2 <= self.l0) {
            return bad(format!("need 0 < l2 <= l0, got l2 = {}, l0 = {}", self.l2, self.l0));
        }
        if self.delta < 0.0 {
            return bad(format!("delta must be non-negative, got {}", self.delta));
        }
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.alpha <= 0.0 {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        Ok(())
    }

    fn require(&self, op: &'static str, expected: Geometry) -> Result<(), LuckError> {
        self.validate()?;
        if self.geometry != expected {
            return Err(LuckError::WrongGeometry { op, expected });
        }
        Ok(())
    }
}

type Profile<const N: usize> = [(&'static str, f64); N];

fn total<const N: usize>(p: &Profile<N>) -> f64 {
    p.iter().fold(0.0, |acc, (_, v)| acc + v)
}

/// Discrete profile at integer shift `eta`; `extent` is `l0` for L2 and `l2` for L3.
fn discrete_profile(utility: f64, extent: f64, delta: f64, k: u32, eta: f64) -> Profile<7> {
    [
        ("V(s+)", utility),
        ("C_w(s2)", extent.log2()),
        ("-C(s2): edge bit", -1.0),
        ("-C(s2): log2(1+eta)", -(1.0 + eta).log2()),
        ("-C_wc: direction bit", -1.0),
        ("-C_wc: log2(delta+eta)", -(delta + eta).log2()),
        ("-log2 k", -f64::from(k).log2()),
    ]
}

fn continuous_profile(utility: f64, l0: f64, delta: f64, alpha: f64, k: u32, eta: f64) -> Profile<6> {
    [
        ("V(s+)", utility),
        ("C_w(s2)", (l0 / alpha).log2()),
        ("-C(s2): log2(1+eta/alpha)", -(1.0 + eta / alpha).log2()),
        ("-C_wc: direction bit", -1.0),
        ("-C_wc: log2((delta+eta)/alpha)", -((delta + eta) / alpha).log2()),
        ("-log2 k", -f64::from(k).log2()),
    ]
}

/// Evaluates `profile` at every shift in `0..=last_step` (shift = step * unit)
/// and keeps the first maximiser.
fn sweep<const N: usize>(
    mode: LuckMode,
    last_step: u64,
    unit: f64,
    profile: impl Fn(f64) -> Profile<N>,
) -> Result<LuckReport, LuckError> {
    if last_step >= MAX_SWEEP_STEPS {
        return Err(LuckError::SweepTooLarge { steps: last_step + 1, max: MAX_SWEEP_STEPS });
    }
    let mut best_step = 0u64;
    let mut best = total(&profile(0.0));
    for step in 1..=last_step {
        let v = total(&profile(step as f64 * unit));
        if v > best {
            best = v;
            best_step = step;
        }
    }
    let eta = best_step as f64 * unit;
    let terms = profile(eta).iter().map(|&(l, v)| Term::new(l, v)).collect();
    let mut report = LuckReport::from_terms(mode, terms);
    report.eta_star = eta;
    Ok(report)
}

fn discrete_sweep(scene: &NearMissScene, mode: LuckMode, extent: f64) -> Result<LuckReport, LuckError> {
    if scene.delta < 1.0 {
        return Err(LuckError::NotANearMiss { delta: scene.delta });
    }
    // integer shifts 0..=l2-1 stay inside the winning region
    let last = (scene.l2.floor() - 1.0).max(0.0) as u64;
    let NearMissScene { utility, delta, k, .. } = *scene;
    sweep(mode, last, 1.0, |eta| discrete_profile(utility, extent, delta, k, eta))
}

/// Near miss on a bounded discrete wheel, counterfactual taken from the landing point.
pub fn near_miss_discrete(scene: &NearMissScene) -> Result<LuckReport, LuckError> {
    scene.require("near_miss_discrete", Geometry::DiscreteBounded)?;
    discrete_sweep(scene, LuckMode::L2, scene.l0)
}

/// Near miss against the expected emotion of winning: the generation term
/// uses `l2` instead of `l0`, giving `V + log2(l2/delta) - 2` at the optimum.
pub fn near_miss_expectation_baseline(scene: &NearMissScene) -> Result<LuckReport, LuckError> {
    scene.require("near_miss_expectation_baseline", Geometry::DiscreteBounded)?;
    let report = discrete_sweep(scene, LuckMode::L3, scene.l2)?;
    if scene.delta >= scene.l2 {
        return Ok(report.with_note("no emotional contrast against expectation (delta >= l2)"));
    }
    Ok(report)
}

/// Near miss on an unbounded continuous line with landing precision `alpha`.
///
/// A miss finer than the precision is scored at `delta = alpha` and flagged.
pub fn near_miss_continuous(scene: &NearMissScene) -> Result<LuckReport, LuckError> {
    scene.require("near_miss_continuous", Geometry::ContinuousUnbounded)?;
    if scene.delta <= 0.0 {
        return Err(LuckError::NotANearMiss { delta: scene.delta });
    }
    let NearMissScene { utility, l0, alpha, k, .. } = *scene;
    let clamped = scene.delta < alpha;
    let delta = if clamped { alpha } else { scene.delta };
    let ratio = l0 / alpha;
    if ratio >= MAX_SWEEP_STEPS as f64 {
        return Err(LuckError::SweepTooLarge { steps: ratio as u64, max: MAX_SWEEP_STEPS });
    }
    // shifts 0, a, 2a, .., up to l0 (tolerating rounding in l0/a)
    let last = (ratio * (1.0 + 1e-12)).floor() as u64;
    let report = sweep(LuckMode::L2, last, alpha, |eta| continuous_profile(utility, l0, delta, alpha, k, eta))?;
    if clamped {
        return Ok(report.with_note(format!("at precision threshold: delta clamped to alpha = {alpha}")));
    }
    Ok(report)
}

/// Highest expected emotion of a winning landing: `V - log2(l0/l2)`.
pub fn expected_win_emotion(l0: f64, l2: f64, utility: f64) -> Result<f64, LuckError> {
    if !(l2 > 0.0 && l2 <= l0 && l0.is_finite()) {
        return Err(LuckError::InvalidScene(format!("need 0 < l2 <= l0, got l2 = {l2}, l0 = {l0}")));
    }
    Ok(utility - (l0 / l2).log2())
}
