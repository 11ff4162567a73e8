use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use luckbits_core::luck::{self, NearMissScene};
use luckbits_core::mdl::{self, Domain, World};
use luckbits_core::{measures, scenarios, BitCost};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bits(v: f64) -> PyResult<BitCost> {
    BitCost::new(v).map_err(value_err)
}

/// Luck intensity with its per-term breakdown.
#[pyclass(name = "LuckReport", module = "luckbits", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLuckReport {
    #[pyo3(get)]
    mode: String,
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    eta_star: f64,
    #[pyo3(get)]
    terms: Vec<(String, f64)>,
    #[pyo3(get)]
    counterfactual_id: Option<String>,
    #[pyo3(get)]
    notes: Vec<String>,
    json: String,
}

#[pymethods]
impl PyLuckReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("LuckReport(mode={:?}, value={}, eta_star={})", self.mode, self.value, self.eta_star)
    }
}

impl From<luck::LuckReport> for PyLuckReport {
    fn from(r: luck::LuckReport) -> Self {
        PyLuckReport {
            json: serde_json::to_string(&r).expect("report serialises"),
            mode: r.mode.to_string().to_lowercase(),
            value: r.value,
            eta_star: r.eta_star,
            terms: r.terms.into_iter().map(|t| (t.label, t.value)).collect(),
            counterfactual_id: r.counterfactual_id,
            notes: r.notes,
        }
    }
}

/// Outcome of running the story-choice harness.
#[pyclass(name = "PredictionReport", module = "luckbits", frozen, skip_from_py_object)]
struct PyPredictionReport {
    #[pyo3(get)]
    congruent: usize,
    #[pyo3(get)]
    total: usize,
    #[pyo3(get)]
    mismatches: Vec<String>,
    #[pyo3(get)]
    summary: String,
    #[pyo3(get)]
    reference_outcome: bool,
    /// (key, predicted labels, majority label, congruent)
    #[pyo3(get)]
    choices: Vec<(String, Vec<String>, String, bool)>,
    json: String,
}

#[pymethods]
impl PyPredictionReport {
    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!("PredictionReport({})", self.summary)
    }
}

#[pyfunction]
fn integer_cost(v: u64) -> f64 {
    mdl::integer_cost(v).bits()
}

/// Shortest code for `seq` over `[lo, hi]`: `(code, cost_bits, code_json)`.
#[pyfunction]
fn shortest_description(seq: Vec<i64>, lo: i64, hi: i64) -> PyResult<(String, f64, String)> {
    let domain = Domain::new(lo, hi).map_err(value_err)?;
    let (code, cost) = mdl::shortest_description(&seq, domain).map_err(value_err)?;
    let json = serde_json::to_string(&code).map_err(value_err)?;
    Ok((code.to_string(), cost.bits(), json))
}

/// Cost of a code given in its JSON form.
#[pyfunction]
fn code_cost(code_json: &str) -> PyResult<f64> {
    let code: mdl::Code = serde_json::from_str(code_json).map_err(value_err)?;
    Ok(mdl::code_cost(&code).map_err(value_err)?.bits())
}

/// Generation complexity of finite choices plus `(extent, precision)` continuous choices.
#[pyfunction]
#[pyo3(signature = (finite=Vec::new(), continuous=Vec::new()))]
fn generation_complexity(finite: Vec<u64>, continuous: Vec<(f64, f64)>) -> PyResult<f64> {
    let choices = finite
        .into_iter()
        .map(|cardinality| mdl::ChoicePoint::Finite { cardinality })
        .chain(continuous.into_iter().map(|(extent, precision)| mdl::ChoicePoint::Continuous { extent, precision }))
        .collect();
    Ok(World::new(choices).map_err(value_err)?.generation_complexity().bits())
}

#[pyfunction]
fn unexpectedness(generation: f64, description: f64) -> PyResult<f64> {
    Ok(measures::unexpectedness(bits(generation)?, bits(description)?))
}

/// `(p, clamped)`.
#[pyfunction]
fn subjective_probability(u: f64) -> (f64, bool) {
    let p = measures::subjective_probability(u);
    (p.value, p.clamped)
}

/// `(value, clamped)`.
#[pyfunction]
fn emotion(hypothetical: f64, u: f64) -> (f64, bool) {
    let e = measures::emotion(hypothetical, u);
    (e.value, e.clamped)
}

#[pyfunction]
fn anticipated_emotion(utility: f64, u: f64) -> f64 {
    measures::anticipated_emotion(utility, u)
}

#[pyfunction]
fn propagate_unexpectedness(u_cause: f64, link_cost: f64) -> PyResult<f64> {
    Ok(measures::propagate_unexpectedness(u_cause, bits(link_cost)?))
}

/// `(value, clamped)`.
#[pyfunction]
fn retro_emotion(effect: f64, link_cost: f64) -> PyResult<(f64, bool)> {
    let e = measures::retro_emotion(measures::emotion(effect, 0.0), bits(link_cost)?);
    Ok((e.value, e.clamped))
}

#[pyfunction]
fn luck_actual(hypothetical: f64, u: f64) -> PyLuckReport {
    luck::luck_actual(hypothetical, u).into()
}

#[pyfunction]
fn luck_counterfactual(conditional: f64, u_counterfactual: f64, cwc: f64) -> PyResult<PyLuckReport> {
    Ok(luck::luck_counterfactual(conditional, u_counterfactual, bits(cwc)?).into())
}

#[pyfunction]
#[pyo3(signature = (l0, delta, utility, l2=1.0, k=1, expectation=false))]
fn near_miss_discrete(l0: f64, delta: f64, utility: f64, l2: f64, k: u32, expectation: bool) -> PyResult<PyLuckReport> {
    let scene = NearMissScene::discrete(l0, l2, delta, utility).with_sectors(k);
    let r = if expectation { luck::near_miss_expectation_baseline(&scene) } else { luck::near_miss_discrete(&scene) };
    Ok(r.map_err(value_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (l0, delta, utility, alpha=1.0, k=1))]
fn near_miss_continuous(l0: f64, delta: f64, utility: f64, alpha: f64, k: u32) -> PyResult<PyLuckReport> {
    let scene = NearMissScene { k, ..NearMissScene::continuous(l0, delta, alpha, utility) };
    Ok(luck::near_miss_continuous(&scene).map_err(value_err)?.into())
}

#[pyfunction]
fn expected_win_emotion(l0: f64, l2: f64, utility: f64) -> PyResult<f64> {
    luck::expected_win_emotion(l0, l2, utility).map_err(value_err)
}

fn link(gen_cost: f64) -> PyResult<luck::CausalLink> {
    Ok(luck::CausalLink {
        cause_id: "cause".into(),
        effect_id: "effect".into(),
        gen_cost: bits(gen_cost)?,
        mutability_cost: BitCost::ZERO,
    })
}

#[pyfunction]
fn causal_luck_actual(hypothetical: f64, u_cause: f64, gen_cost: f64) -> PyResult<PyLuckReport> {
    Ok(luck::causal_luck_actual(hypothetical, u_cause, &link(gen_cost)?).into())
}

#[pyfunction]
fn causal_luck_counterfactual(
    conditional: f64,
    u_counterfactual: f64,
    gen_cost: f64,
    mutability: f64,
) -> PyResult<PyLuckReport> {
    Ok(luck::causal_luck_counterfactual(conditional, u_counterfactual, &link(gen_cost)?, bits(mutability)?).into())
}

#[pyfunction]
fn rescher_luck(stake: f64, probability: f64) -> PyResult<PyLuckReport> {
    Ok(luck::rescher_luck(stake, probability).map_err(value_err)?.into())
}

#[pyfunction]
fn teigen_luck(utility_gap: f64, distance: f64) -> PyResult<PyLuckReport> {
    Ok(luck::teigen_luck(utility_gap, distance).map_err(value_err)?.into())
}

/// Assesses a scene document; returns `(chosen, readings, baselines)`.
#[pyfunction]
fn assess_scene(scene_json: &str) -> PyResult<(PyLuckReport, Vec<PyLuckReport>, Vec<PyLuckReport>)> {
    let scene: luck::Scene = serde_json::from_str(scene_json).map_err(value_err)?;
    let a = luck::assess_scene(&scene).map_err(value_err)?;
    Ok((
        a.chosen.into(),
        a.readings.into_iter().map(Into::into).collect(),
        a.baselines.into_iter().map(Into::into).collect(),
    ))
}

/// Runs the story harness on `document`, or on the shipped dataset when omitted.
#[pyfunction]
#[pyo3(signature = (document=None))]
fn run_stories(document: Option<&str>) -> PyResult<PyPredictionReport> {
    let dataset = match document {
        Some(doc) => scenarios::load_scenarios(doc).map_err(value_err)?,
        None => scenarios::shipped_dataset(),
    };
    let r = scenarios::run_stories(&dataset).map_err(value_err)?;
    Ok(PyPredictionReport {
        json: serde_json::to_string(&r).map_err(value_err)?,
        congruent: r.congruent,
        total: r.total,
        mismatches: r.mismatches.clone(),
        summary: r.summary(),
        reference_outcome: r.is_reference_outcome(),
        choices: r.choices.iter().map(|c| (c.key(), c.predicted.clone(), c.majority.clone(), c.congruent)).collect(),
    })
}

#[pymodule]
fn luckbits(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", luckbits_core::ENGINE_VERSION)?;
    m.add_class::<PyLuckReport>()?;
    m.add_class::<PyPredictionReport>()?;
    m.add_function(wrap_pyfunction!(integer_cost, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_description, m)?)?;
    m.add_function(wrap_pyfunction!(code_cost, m)?)?;
    m.add_function(wrap_pyfunction!(generation_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(unexpectedness, m)?)?;
    m.add_function(wrap_pyfunction!(subjective_probability, m)?)?;
    m.add_function(wrap_pyfunction!(emotion, m)?)?;
    m.add_function(wrap_pyfunction!(anticipated_emotion, m)?)?;
    m.add_function(wrap_pyfunction!(propagate_unexpectedness, m)?)?;
    m.add_function(wrap_pyfunction!(retro_emotion, m)?)?;
    m.add_function(wrap_pyfunction!(luck_actual, m)?)?;
    m.add_function(wrap_pyfunction!(luck_counterfactual, m)?)?;
    m.add_function(wrap_pyfunction!(near_miss_discrete, m)?)?;
    m.add_function(wrap_pyfunction!(near_miss_continuous, m)?)?;
    m.add_function(wrap_pyfunction!(expected_win_emotion, m)?)?;
    m.add_function(wrap_pyfunction!(causal_luck_actual, m)?)?;
    m.add_function(wrap_pyfunction!(causal_luck_counterfactual, m)?)?;
    m.add_function(wrap_pyfunction!(rescher_luck, m)?)?;
    m.add_function(wrap_pyfunction!(teigen_luck, m)?)?;
    m.add_function(wrap_pyfunction!(assess_scene, m)?)?;
    m.add_function(wrap_pyfunction!(run_stories, m)?)?;
    Ok(())
}
