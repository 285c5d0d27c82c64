//! Python bindings: parse scenarios, get recommendations, diff and render.
//!
//! Structured values cross the boundary as JSON and come back as plain
//! dicts and lists, so the Python side sees the same schema as the CLI.

use std::collections::BTreeMap;

use arxai_core::engine::{whatif_diff as core_whatif_diff, DecisionTable};
use arxai_core::format::{parse_scenario as core_parse, serialize_scenario};
use arxai_core::model::{validate_scenario, AiLiteracy, SystemGoal, UserGoal};
use arxai_core::report::{build_report, human_explanation, human_report, RecommendationReport};
use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

create_exception!(arxai, ScenarioError, PyValueError, "A scenario failed to parse or validate.");

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn problems(text: &str) -> Vec<String> {
    match core_parse(text) {
        Err(errors) => errors.iter().map(|e| e.to_string()).collect(),
        Ok(s) => validate_scenario(&s),
    }
}

#[pyclass(frozen, module = "arxai")]
pub struct Scenario {
    inner: arxai_core::Scenario,
}

#[pymethods]
impl Scenario {
    /// Parses `.xas` text; raises ScenarioError listing every problem.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let p = problems(text);
        if !p.is_empty() {
            return Err(ScenarioError::new_err(p.join("\n")));
        }
        Ok(Scenario { inner: core_parse(text).expect("checked above") })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: arxai_core::Scenario =
            serde_json::from_str(text).map_err(|e| ScenarioError::new_err(e.to_string()))?;
        let v = validate_scenario(&inner);
        if !v.is_empty() {
            return Err(ScenarioError::new_err(v.join("\n")));
        }
        Ok(Scenario { inner })
    }

    #[getter]
    fn id(&self) -> &str {
        &self.inner.id
    }

    #[getter]
    fn domain(&self) -> &str {
        &self.inner.domain
    }

    fn to_xas(&self) -> String {
        serialize_scenario(&self.inner)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("scenario serializes")
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(&self.inner).expect("scenario serializes"))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Scenario(id={:?}, domain={:?})", self.inner.id, self.inner.domain)
    }
}

#[pyclass(frozen, module = "arxai")]
pub struct Recommendation {
    report: RecommendationReport,
}

#[pymethods]
impl Recommendation {
    #[getter]
    fn scenario_id(&self) -> &str {
        &self.report.scenario_id
    }

    #[getter]
    fn delivery_mode(&self) -> &'static str {
        self.report.recommendation.delivery.mode.token()
    }

    #[getter]
    fn trigger_modality(&self) -> &'static str {
        self.report.recommendation.delivery.trigger_modality.token()
    }

    #[getter]
    fn content(&self) -> Vec<&'static str> {
        self.report.recommendation.content.tokens()
    }

    #[getter]
    fn concise(&self) -> Vec<&'static str> {
        self.report.recommendation.detail.concise.tokens()
    }

    #[getter]
    fn detailed(&self) -> Vec<&'static str> {
        self.report.recommendation.detail.detailed.tokens()
    }

    #[getter]
    fn explanation_modality(&self) -> &'static str {
        self.report.recommendation.explanation_modality.token()
    }

    #[getter]
    fn format(&self) -> &'static str {
        self.report.recommendation.paradigm.format.token()
    }

    #[getter]
    fn confirmation_required(&self) -> bool {
        self.report.recommendation.confirmation_required
    }

    /// One `G: decision — reason` line per guideline.
    #[getter]
    fn rationale(&self) -> Vec<String> {
        self.report.recommendation.rationale.iter().map(|e| e.line()).collect()
    }

    #[getter]
    fn concise_text(&self) -> Option<String> {
        self.report.rendered.as_ref().map(|x| x.concise_text.clone())
    }

    fn to_json(&self) -> String {
        self.report.to_json()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(&self.report).expect("report serializes"))
    }

    fn __str__(&self) -> String {
        human_report(&self.report)
    }

    fn __repr__(&self) -> String {
        format!(
            "Recommendation(scenario_id={:?}, delivery_mode={:?}, content={:?})",
            self.report.scenario_id,
            self.delivery_mode(),
            self.content()
        )
    }
}

/// Accepts a Scenario or `.xas` text.
fn scenario_arg(obj: &Bound<'_, PyAny>) -> PyResult<arxai_core::Scenario> {
    if let Ok(s) = obj.cast::<Scenario>() {
        return Ok(s.get().inner.clone());
    }
    if let Ok(text) = obj.extract::<String>() {
        return Scenario::parse(&text).map(|s| s.inner);
    }
    Err(PyTypeError::new_err("expected a Scenario or .xas text"))
}

#[pyfunction]
fn parse_scenario(text: &str) -> PyResult<Scenario> {
    Scenario::parse(text)
}

/// Problems in `.xas` text; empty when the scenario is usable.
#[pyfunction]
fn validate(text: &str) -> Vec<String> {
    problems(text)
}

#[pyfunction]
fn recommend(scenario: &Bound<'_, PyAny>) -> PyResult<Recommendation> {
    let s = scenario_arg(scenario)?;
    let report = build_report(&s).map_err(|e| ScenarioError::new_err(e.to_string()))?;
    Ok(Recommendation { report })
}

/// Explanation text only; raises if a template slot has no fact.
#[pyfunction]
fn render(scenario: &Bound<'_, PyAny>) -> PyResult<String> {
    let r = recommend(scenario)?.report;
    match (r.rendered, r.render_error) {
        (Some(x), _) => Ok(human_explanation(&x)),
        (None, e) => Err(ScenarioError::new_err(e.unwrap_or_default())),
    }
}

#[pyfunction]
fn whatif_diff(py: Python<'_>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let d = core_whatif_diff(&scenario_arg(a)?, &scenario_arg(b)?).map_err(|e| ScenarioError::new_err(e.to_string()))?;
    to_py(py, &serde_json::to_value(&d).expect("diff serializes"))
}

/// The shipped content table as `{"system": {...}, "user": {...}, "literacy": {...}}`.
#[pyfunction]
fn canonical_table(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let t = DecisionTable::canonical();
    let v = json!({
        "system": SystemGoal::ALL.iter().map(|g| (g.token(), t.system_row(*g).tokens())).collect::<BTreeMap<_, _>>(),
        "user": UserGoal::ALL.iter().map(|g| (g.token(), t.user_row(*g).tokens())).collect::<BTreeMap<_, _>>(),
        "literacy": AiLiteracy::ALL.iter().map(|l| (l.token(), t.literacy_row(*l).tokens())).collect::<BTreeMap<_, _>>(),
    });
    to_py(py, &v)
}

#[pymodule]
fn arxai(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scenario>()?;
    m.add_class::<Recommendation>()?;
    m.add("ScenarioError", m.py().get_type::<ScenarioError>())?;
    m.add_function(wrap_pyfunction!(parse_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(recommend, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(whatif_diff, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_table, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
