use serde::{Deserialize, Serialize};

use super::luck_actual;
use super::report::{LuckMode, LuckReport, Term};
use crate::cost::BitCost;
use crate::measures::propagate_unexpectedness;

/// A directed causal link `cause -> effect`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalLink {
    pub cause_id: String,
    pub effect_id: String,
    /// `C_w(effect|cause)`: bits the world needs to get from cause to effect.
    pub gen_cost: BitCost,
    /// Cost of imagining the cause otherwise.
    #[serde(default)]
    pub mutability_cost: BitCost,
}

/// `L1 = E_h(s1) + U(s3) + C_w(s1|s3)`: luck through an explaining cause `s3`.
///
/// Computed as `luck_actual(E_h, propagate_unexpectedness(U(s3), C_w))`, so
/// the two routes agree exactly.
pub fn causal_luck_actual(hypothetical: f64, u_cause: f64, link: &CausalLink) -> LuckReport {
    let mut report = luck_actual(hypothetical, propagate_unexpectedness(u_cause, link.gen_cost));
    report.terms = vec![
        Term::new("E_h(s1)", hypothetical),
        Term::new(format!("U({})", link.cause_id), u_cause),
        Term::new(format!("C_w({}|{})", link.effect_id, link.cause_id), link.gen_cost.bits()),
    ];
    report.counterfactual_id = None;
    report
}

/// `L2 = E_h(s2/s3) + U(s2) - C_w(s2|s4) - C_wc(s4|s3)`: counterfactual luck
/// through an altered cause `s4` that would have led to `s2`.
pub fn causal_luck_counterfactual(
    conditional: f64,
    u_counterfactual: f64,
    link_from_altered_cause: &CausalLink,
    mutability: BitCost,
) -> LuckReport {
    let link = link_from_altered_cause;
    let terms = vec![
        Term::new("E_h(s2/s3)", conditional),
        Term::new(format!("U({})", link.effect_id), u_counterfactual),
        Term::new(format!("-C_w({}|{})", link.effect_id, link.cause_id), -link.gen_cost.bits()),
        Term::new(format!("-C_wc({})", link.cause_id), -mutability.bits()),
    ];
    LuckReport::from_terms(LuckMode::L2, terms).with_counterfactual(link.effect_id.clone())
}

/// Picks the altered cause giving the strongest counterfactual luck, scoring
/// each candidate link with its own `mutability_cost`. Ties go to the
/// earlier candidate.
pub fn most_mutable_cause(
    conditional: f64,
    u_counterfactual: f64,
    candidates: &[CausalLink],
) -> Option<(usize, LuckReport)> {
    let mut best: Option<(usize, LuckReport)> = None;
    for (i, link) in candidates.iter().enumerate() {
        let r = causal_luck_counterfactual(conditional, u_counterfactual, link, link.mutability_cost);
        if best.as_ref().is_none_or(|(_, b)| r.value > b.value) {
            best = Some((i, r));
        }
    }
    best
}
