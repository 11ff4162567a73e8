//! Story-choice prediction harness.
//!
//! Each story choice offers two or three variants of a story and names the
//! model quantity the variants differ in. The harness scores every option
//! with that quantity, predicts the best-scoring option(s), and checks the
//! prediction against the option most participants picked.
//!
//! | rule | option score |
//! |---|---|
//! | `actual_emotion_max` | `+value` |
//! | `delta_min` | `-log2 value` |
//! | `horizon_max` | `+log2 value` |
//! | `counterfactual_id_simplicity` | `-log2 value`, or `-rank` |
//! | `counterfactual_link_simplicity` | `-log2 value`, or `-rank` |
//! | `cause_simplicity` | `-log2 value`, or `-rank` |
//! | `causal_link_complexity_max` | `+log2 value`, or `+rank` |
//! | `eh_threshold` | every option with `value >= threshold` is predicted |
//!
//! Ranks are ordinal complexities (1 = simplest) for qualitative options.
//! The magnitude rules (`actual_emotion_max`, `delta_min`, `horizon_max`,
//! `eh_threshold`) accept numeric options only.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The nine-story dataset shipped with the engine.
pub const SHIPPED_STORIES: &str = include_str!("../data/stories.json");

/// Congruent choices expected from the shipped dataset.
pub const REFERENCE_CONGRUENT: usize = 19;
/// Choices expected to contradict the majority, as `story.choice`.
pub const REFERENCE_MISMATCHES: [&str; 2] = ["S5.2", "S9.1"];

const PCT_TOLERANCE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    ActualEmotionMax,
    DeltaMin,
    HorizonMax,
    CounterfactualIdSimplicity,
    CounterfactualLinkSimplicity,
    CauseSimplicity,
    CausalLinkComplexityMax,
    EhThreshold,
}

impl Rule {
    fn numeric_only(self) -> bool {
        matches!(self, Rule::ActualEmotionMax | Rule::DeltaMin | Rule::HorizonMax | Rule::EhThreshold)
    }

    fn uses_log(self) -> bool {
        !matches!(self, Rule::ActualEmotionMax | Rule::EhThreshold)
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::ActualEmotionMax => "actual_emotion_max",
            Rule::DeltaMin => "delta_min",
            Rule::HorizonMax => "horizon_max",
            Rule::CounterfactualIdSimplicity => "counterfactual_id_simplicity",
            Rule::CounterfactualLinkSimplicity => "counterfactual_link_simplicity",
            Rule::CauseSimplicity => "cause_simplicity",
            Rule::CausalLinkComplexityMax => "causal_link_complexity_max",
            Rule::EhThreshold => "eh_threshold",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Numeric { value: f64, unit: Option<String> },
    Ordinal(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoryOption {
    pub label: String,
    pub quantity: Quantity,
    pub majority_pct: f64,
    pub paper_predicted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoryChoice {
    pub story_id: String,
    pub choice_index: u8,
    pub rule: Rule,
    pub threshold: Option<f64>,
    pub rationale: Option<String>,
    pub options: Vec<StoryOption>,
}

impl StoryChoice {
    /// `S5.2` style key.
    pub fn key(&self) -> String {
        format!("{}.{}", self.story_id, self.choice_index)
    }

    /// Index of the option most participants chose (first on equal shares).
    pub fn majority(&self) -> usize {
        let mut best = 0;
        for (i, o) in self.options.iter().enumerate() {
            if o.majority_pct > self.options[best].majority_pct {
                best = i;
            }
        }
        best
    }

    pub fn is_numeric(&self) -> bool {
        self.options.iter().all(|o| matches!(o.quantity, Quantity::Numeric { .. }))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("scenario schema error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("malformed scenario dataset: {}", .issues.join("; "))]
    Schema { issues: Vec<String> },

    #[error("{path}: option percentages sum to {sum}, expected 100 ± 2")]
    Invariant { path: String, sum: f64 },

    #[error("{path}: rule {rule} {message}")]
    Configuration { path: String, rule: Rule, message: String },
}

// Wire format.

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoryDoc {
    id: String,
    choices: Vec<ChoiceDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChoiceDoc {
    index: u8,
    rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rationale: Option<String>,
    options: Vec<OptionDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionDoc {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ordinal_complexity: Option<u32>,
    majority_pct: f64,
    paper_predicted: bool,
}

/// Parses and validates a scenario document. Blank input is an empty dataset.
pub fn load_scenarios(document: &str) -> Result<Vec<StoryChoice>, ScenarioError> {
    if document.trim().is_empty() {
        return Ok(Vec::new());
    }
    let stories: Vec<StoryDoc> = serde_json::from_str(document).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut issues = Vec::new();
    let mut dataset = Vec::new();
    for (si, story) in stories.iter().enumerate() {
        if story.id.trim().is_empty() {
            issues.push(format!("stories[{si}].id: empty story id"));
        }
        for (ci, choice) in story.choices.iter().enumerate() {
            let path = format!("{}.choices[{ci}]", story.id);
            if !(1..=3).contains(&choice.index) {
                issues.push(format!("{path}.index: {} is outside 1..3", choice.index));
            }
            if story.choices[..ci].iter().any(|c| c.index == choice.index) {
                issues.push(format!("{path}.index: duplicate choice index {}", choice.index));
            }
            if choice.options.len() < 2 {
                issues.push(format!("{path}.options: need at least 2 options, got {}", choice.options.len()));
            }
            match (choice.rule, choice.threshold) {
                (Rule::EhThreshold, None) => issues.push(format!("{path}.threshold: required by eh_threshold")),
                (Rule::EhThreshold, Some(t)) if !t.is_finite() => {
                    issues.push(format!("{path}.threshold: must be finite"))
                }
                (Rule::EhThreshold, Some(_)) | (_, None) => {}
                (rule, Some(_)) => issues.push(format!("{path}.threshold: not used by rule {rule}")),
            }
            let mut options = Vec::new();
            for (oi, o) in choice.options.iter().enumerate() {
                let opath = format!("{path}.options[{oi}]");
                if !(o.majority_pct.is_finite() && (0.0..=100.0).contains(&o.majority_pct)) {
                    issues.push(format!("{opath}.majority_pct: {} is not a percentage", o.majority_pct));
                }
                let quantity = match (o.value, o.ordinal_complexity) {
                    (Some(value), None) => {
                        if !value.is_finite() {
                            issues.push(format!("{opath}.value: must be finite"));
                        }
                        Quantity::Numeric { value, unit: o.unit.clone() }
                    }
                    (None, Some(rank)) => {
                        if rank == 0 {
                            issues.push(format!("{opath}.ordinal_complexity: ranks start at 1"));
                        }
                        if o.unit.is_some() {
                            issues.push(format!("{opath}.unit: ordinal options carry no unit"));
                        }
                        Quantity::Ordinal(rank)
                    }
                    (Some(_), Some(_)) => {
                        issues.push(format!("{opath}: both value and ordinal_complexity given"));
                        continue;
                    }
                    (None, None) => {
                        issues.push(format!("{opath}: one of value or ordinal_complexity is required"));
                        continue;
                    }
                };
                options.push(StoryOption {
                    label: o.label.clone(),
                    quantity,
                    majority_pct: o.majority_pct,
                    paper_predicted: o.paper_predicted,
                });
            }
            dataset.push(StoryChoice {
                story_id: story.id.clone(),
                choice_index: choice.index,
                rule: choice.rule,
                threshold: choice.threshold,
                rationale: choice.rationale.clone(),
                options,
            });
        }
    }
    if !issues.is_empty() {
        return Err(ScenarioError::Schema { issues });
    }

    for c in &dataset {
        score_choice(c)?;
        let sum: f64 = c.options.iter().map(|o| o.majority_pct).sum();
        if (sum - 100.0).abs() > PCT_TOLERANCE {
            return Err(ScenarioError::Invariant { path: c.key(), sum });
        }
    }
    Ok(dataset)
}

/// Serialises a dataset back to the scenario document format.
pub fn to_document(dataset: &[StoryChoice]) -> String {
    let mut stories: Vec<StoryDoc> = Vec::new();
    for c in dataset {
        let choice = ChoiceDoc {
            index: c.choice_index,
            rule: c.rule,
            threshold: c.threshold,
            rationale: c.rationale.clone(),
            options: c
                .options
                .iter()
                .map(|o| {
                    let (value, unit, ordinal_complexity) = match &o.quantity {
                        Quantity::Numeric { value, unit } => (Some(*value), unit.clone(), None),
                        Quantity::Ordinal(r) => (None, None, Some(*r)),
                    };
                    OptionDoc {
                        label: o.label.clone(),
                        value,
                        unit,
                        ordinal_complexity,
                        majority_pct: o.majority_pct,
                        paper_predicted: o.paper_predicted,
                    }
                })
                .collect(),
        };
        match stories.last_mut() {
            Some(s) if s.id == c.story_id => s.choices.push(choice),
            _ => stories.push(StoryDoc { id: c.story_id.clone(), choices: vec![choice] }),
        }
    }
    serde_json::to_string_pretty(&stories).expect("plain data serialises")
}

/// The shipped nine-story dataset.
pub fn shipped_dataset() -> Vec<StoryChoice> {
    load_scenarios(SHIPPED_STORIES).expect("shipped dataset is valid")
}

/// Scores every option of a choice with its rule's model term.
pub fn score_choice(c: &StoryChoice) -> Result<Vec<f64>, ScenarioError> {
    let config = |message: String| ScenarioError::Configuration { path: c.key(), rule: c.rule, message };
    let numeric = c.is_numeric();
    let ordinal = c.options.iter().all(|o| matches!(o.quantity, Quantity::Ordinal(_)));
    if !numeric && !ordinal {
        return Err(config("cannot mix numeric and ordinal options".into()));
    }
    if ordinal && c.rule.numeric_only() {
        return Err(config("needs numeric option values, got ordinal ranks".into()));
    }

    c.options
        .iter()
        .map(|o| match (&o.quantity, c.rule) {
            (Quantity::Ordinal(rank), Rule::CausalLinkComplexityMax) => Ok(f64::from(*rank)),
            (Quantity::Ordinal(rank), _) => Ok(-f64::from(*rank)),
            (Quantity::Numeric { value, .. }, rule) => {
                if rule.uses_log() && *value <= 0.0 {
                    return Err(config(format!(
                        "takes log2 of option {:?}, whose value {value} is not positive",
                        o.label
                    )));
                }
                Ok(match rule {
                    Rule::ActualEmotionMax | Rule::EhThreshold => *value,
                    Rule::HorizonMax | Rule::CausalLinkComplexityMax => value.log2(),
                    Rule::DeltaMin
                    | Rule::CounterfactualIdSimplicity
                    | Rule::CounterfactualLinkSimplicity
                    | Rule::CauseSimplicity => -value.log2(),
                })
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub scores: Vec<f64>,
    /// Indices of the predicted options, in option order.
    pub predicted: Vec<usize>,
}

/// Predicts the option(s) the model favours: the arg-max set of the scores,
/// or for `eh_threshold` every option reaching the threshold.
pub fn predict_choice(c: &StoryChoice) -> Result<Prediction, ScenarioError> {
    let scores = score_choice(c)?;
    let predicted = match (c.rule, c.threshold) {
        (Rule::EhThreshold, Some(t)) => (0..scores.len()).filter(|&i| scores[i] >= t).collect(),
        (Rule::EhThreshold, None) => {
            return Err(ScenarioError::Configuration {
                path: c.key(),
                rule: c.rule,
                message: "requires a threshold".into(),
            })
        }
        _ => {
            let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (0..scores.len()).filter(|&i| scores[i] == max).collect()
        }
    };
    Ok(Prediction { scores, predicted })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptionScore {
    pub label: String,
    pub score: f64,
    pub majority_pct: f64,
    pub predicted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiceOutcome {
    pub story_id: String,
    pub choice_index: u8,
    pub rule: Rule,
    pub options: Vec<OptionScore>,
    pub predicted: Vec<String>,
    pub majority: String,
    pub congruent: bool,
    /// Prediction matches the dataset's `paper_predicted` flags.
    pub matches_reference: bool,
}

impl ChoiceOutcome {
    pub fn key(&self) -> String {
        format!("{}.{}", self.story_id, self.choice_index)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub choices: Vec<ChoiceOutcome>,
    pub congruent: usize,
    pub total: usize,
    pub mismatches: Vec<String>,
}

impl PredictionReport {
    /// `congruent: 19/21; mismatches: S5.2, S9.1`
    pub fn summary(&self) -> String {
        let mismatches = if self.mismatches.is_empty() { "none".to_string() } else { self.mismatches.join(", ") };
        format!("congruent: {}/{}; mismatches: {}", self.congruent, self.total, mismatches)
    }

    /// Whether this report reproduces the reference outcome of the shipped dataset.
    pub fn is_reference_outcome(&self) -> bool {
        self.total == 21
            && self.congruent == REFERENCE_CONGRUENT
            && self.mismatches.iter().map(String::as_str).eq(REFERENCE_MISMATCHES)
            && self.choices.iter().all(|c| c.matches_reference)
    }
}

/// Predicts every choice and counts congruence with the majority.
pub fn run_stories(dataset: &[StoryChoice]) -> Result<PredictionReport, ScenarioError> {
    let mut choices = Vec::with_capacity(dataset.len());
    for c in dataset {
        let Prediction { scores, predicted } = predict_choice(c)?;
        let majority = c.majority();
        let congruent = predicted.contains(&majority);
        let matches_reference = c.options.iter().enumerate().all(|(i, o)| o.paper_predicted == predicted.contains(&i));
        choices.push(ChoiceOutcome {
            story_id: c.story_id.clone(),
            choice_index: c.choice_index,
            rule: c.rule,
            options: c
                .options
                .iter()
                .zip(&scores)
                .enumerate()
                .map(|(i, (o, &score))| OptionScore {
                    label: o.label.clone(),
                    score,
                    majority_pct: o.majority_pct,
                    predicted: predicted.contains(&i),
                })
                .collect(),
            predicted: predicted.iter().map(|&i| c.options[i].label.clone()).collect(),
            majority: c.options[majority].label.clone(),
            congruent,
            matches_reference,
        });
    }
    let congruent = choices.iter().filter(|c| c.congruent).count();
    let mismatches = choices.iter().filter(|c| !c.congruent).map(ChoiceOutcome::key).collect();
    Ok(PredictionReport { total: choices.len(), congruent, mismatches, choices })
}
