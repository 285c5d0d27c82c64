//! JSON HTTP API over the engine. Handlers are pure functions of the request
//! body and the corpus loaded at startup.

use std::sync::Arc;

use arxai_core::engine::{whatif_diff, DeliveryMode, Factor, Format, Guideline, Pattern};
use arxai_core::format::{serialize_scenario, CorpusEntry};
use arxai_core::model::{AiLiteracy, ConfidenceBand, ContentType, LoadLevel, Modality, Scenario, SystemGoal, UserGoal};
use arxai_core::report::build_report;
use arxai_core::templates::TemplateRegistry;
use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::{json, Value};

use crate::{canonical_json, check, scenario_from_text, InputError};

#[derive(Debug, Default)]
pub struct AppState {
    pub corpus: Vec<CorpusEntry>,
}

pub fn app(state: AppState) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/api/recommend", post(recommend))
        .route("/api/diff", post(diff))
        .route("/api/corpus", get(corpus_index))
        .route("/api/corpus/{id}", get(corpus_entry))
        .route("/api/schema", get(schema))
        .fallback(not_found)
        .with_state(Arc::new(state))
}

fn respond(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json; charset=utf-8")], body).into_response()
}

fn ok(v: &impl serde::Serialize) -> Response {
    respond(StatusCode::OK, canonical_json(v))
}

fn bad_request(v: Value) -> Response {
    respond(StatusCode::BAD_REQUEST, canonical_json(&v))
}

fn input_error(e: InputError) -> Response {
    bad_request(e.to_value())
}

async fn not_found() -> Response {
    respond(StatusCode::NOT_FOUND, canonical_json(&json!({ "error": "not_found" })))
}

/// A scenario given as a JSON object or as `{"xas": "<text>"}`.
fn scenario_from_value(v: Value) -> Result<Scenario, InputError> {
    if let Some(Value::String(text)) = v.get("xas") {
        return scenario_from_text(text);
    }
    let s: Scenario = serde_json::from_value(v).map_err(|e| InputError::Invalid(vec![e.to_string()]))?;
    check(s)
}

fn body_json(body: &Bytes) -> Result<Value, Box<Response>> {
    serde_json::from_slice(body)
        .map_err(|e| Box::new(bad_request(json!({ "error": "malformed_json", "message": e.to_string() }))))
}

async fn index() -> Response {
    ok(&json!({
        "service": "arxai",
        "version": env!("CARGO_PKG_VERSION"),
        "endpoints": [
            "POST /api/recommend",
            "POST /api/diff",
            "GET /api/corpus",
            "GET /api/corpus/{id}",
            "GET /api/schema",
        ],
    }))
}

async fn recommend(body: Bytes) -> Response {
    let v = match body_json(&body) {
        Ok(v) => v,
        Err(r) => return *r,
    };
    let s = match scenario_from_value(v) {
        Ok(s) => s,
        Err(e) => return input_error(e),
    };
    match build_report(&s) {
        Ok(r) => respond(StatusCode::OK, r.to_json()),
        Err(e) => bad_request(json!({ "error": "engine_error", "message": e.to_string() })),
    }
}

async fn diff(body: Bytes) -> Response {
    let mut v = match body_json(&body) {
        Ok(v) => v,
        Err(r) => return *r,
    };
    let (Some(a), Some(b)) = (v.get_mut("a").map(Value::take), v.get_mut("b").map(Value::take)) else {
        return bad_request(json!({ "error": "malformed_request", "message": "expected an object with fields `a` and `b`" }));
    };
    let mut scenarios = Vec::with_capacity(2);
    for (side, value) in [("a", a), ("b", b)] {
        match scenario_from_value(value) {
            Ok(s) => scenarios.push(s),
            Err(e) => {
                let mut body = e.to_value();
                body["side"] = json!(side);
                return bad_request(body);
            }
        }
    }
    match whatif_diff(&scenarios[0], &scenarios[1]) {
        Ok(d) => ok(&d),
        Err(e) => bad_request(json!({ "error": "engine_error", "message": e.to_string() })),
    }
}

async fn corpus_index(State(state): State<Arc<AppState>>) -> Response {
    let items: Vec<Value> = state
        .corpus
        .iter()
        .map(|e| {
            json!({
                "id": e.scenario.id,
                "name": e.name,
                "domain": e.scenario.domain,
                "description": e.scenario.ai_output.description,
                "has_golden": e.golden.is_some(),
            })
        })
        .collect();
    ok(&items)
}

async fn corpus_entry(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Response {
    match state.corpus.iter().find(|e| e.scenario.id == id) {
        Some(e) => ok(&json!({
            "id": e.scenario.id,
            "name": e.name,
            "scenario": e.scenario,
            "xas": serialize_scenario(&e.scenario),
            "golden": e.golden,
        })),
        None => respond(
            StatusCode::NOT_FOUND,
            canonical_json(&json!({ "error": "unknown_scenario", "id": id })),
        ),
    }
}

/// Enum token lists for form generation.
pub fn schema_value() -> Value {
    let labels: serde_json::Map<String, Value> = ContentType::ALL
        .iter()
        .map(|t| (t.token().to_string(), json!(t.label())))
        .collect();
    json!({
        "content_types": ContentType::tokens(),
        "content_type_labels": labels,
        "system_goals": SystemGoal::tokens(),
        "user_goals": UserGoal::tokens(),
        "load_levels": LoadLevel::tokens(),
        "modalities": Modality::tokens(),
        "ai_literacy": AiLiteracy::tokens(),
        "confidence_bands": ConfidenceBand::tokens(),
        "delivery_modes": DeliveryMode::tokens(),
        "formats": Format::tokens(),
        "patterns": Pattern::tokens(),
        "guidelines": Guideline::tokens(),
        "factors": Factor::tokens(),
        "domains": TemplateRegistry::builtin().domains(),
    })
}

async fn schema() -> Response {
    ok(&schema_value())
}
