//! HTTP API. Handlers are thin wrappers over pure functions that return
//! the exact response body, so the CLI can share them.

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::consistency::{ci_table, CiRow};
use crate::error::BwmError;
use crate::io::{json_error, PcsInput, PcsOrGroup};
use crate::model::{PairwiseComparisonSystem, PcsJson};
use crate::report::{analyze_group, render, AnalysisOptions};
use crate::scale::{Level, ScaleId};

/// An error ready to send: status plus a one-line JSON body.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: u16,
    pub body: String,
}

impl ApiError {
    pub fn from_error(e: &BwmError) -> Self {
        let status = if e.is_role_error() { 422 } else { 400 };
        ApiError {
            status,
            body: error_json(e),
        }
    }
}

/// Single-line machine-readable description of an error.
pub fn error_json(e: &BwmError) -> String {
    json!({
        "error": {
            "code": e.code(),
            "message": e.to_string(),
            "field": e.field(),
        }
    })
    .to_string()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub pcs: PcsOrGroup,
    #[serde(default)]
    pub options: AnalysisOptions,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AggregateRequest {
    Wrapped {
        systems: Vec<PcsInput>,
        #[serde(default)]
        options: AnalysisOptions,
    },
    Bare(Vec<PcsInput>),
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateResponse<'a> {
    pub aggregate: PcsJson,
    pub report: &'a crate::report::AnalysisReport,
}

fn resolve_all(inputs: Vec<PcsInput>) -> Result<Vec<PairwiseComparisonSystem>, BwmError> {
    inputs.into_iter().map(|i| i.resolve(None)).collect()
}

/// Body of `POST /api/analyze`.
pub fn analyze_body(body: &str) -> Result<String, ApiError> {
    let run = || -> Result<String, BwmError> {
        let req: AnalyzeRequest = serde_json::from_str(body).map_err(json_error)?;
        let systems = match req.pcs {
            PcsOrGroup::One(p) => vec![p.resolve(None)?],
            PcsOrGroup::Group(g) => {
                if g.len() < 2 {
                    return Err(BwmError::AggregationMismatch(
                        "group mode needs at least two systems".into(),
                    ));
                }
                resolve_all(g)?
            }
        };
        let (_, report) = analyze_group(&systems, &req.options)?;
        Ok(render(&report, req.options.round))
    };
    run().map_err(|e| ApiError::from_error(&e))
}

/// Aggregate and analyze; shared by the CLI and `POST /api/aggregate`.
pub fn aggregate_systems(
    systems: &[PairwiseComparisonSystem],
    options: &AnalysisOptions,
) -> Result<String, BwmError> {
    let (merged, report) = analyze_group(systems, options)?;
    Ok(render(
        &AggregateResponse {
            aggregate: merged.to_json(),
            report: &report,
        },
        options.round,
    ))
}

/// Body of `POST /api/aggregate`.
pub fn aggregate_body(body: &str) -> Result<String, ApiError> {
    let run = || -> Result<String, BwmError> {
        let req: AggregateRequest = serde_json::from_str(body).map_err(json_error)?;
        let (inputs, options) = match req {
            AggregateRequest::Wrapped { systems, options } => (systems, options),
            AggregateRequest::Bare(systems) => (systems, AnalysisOptions::default()),
        };
        aggregate_systems(&resolve_all(inputs)?, &options)
    };
    run().map_err(|e| ApiError::from_error(&e))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
struct ScaleInfo {
    id: ScaleId,
    name: String,
    max_value: f64,
    levels: Vec<Level>,
}

/// Body of `GET /api/scales`.
pub fn scales_body() -> String {
    let scales: Vec<ScaleInfo> = ScaleId::BUILT_IN
        .iter()
        .map(|id| {
            let s = id.scale().expect("built-in");
            ScaleInfo {
                id: *id,
                name: s.name().to_string(),
                max_value: s.max_value(),
                levels: s.levels().to_vec(),
            }
        })
        .collect();
    render(&scales, None)
}

#[derive(Debug, Clone, Serialize)]
pub struct CiTable {
    pub scale: ScaleId,
    pub rows: Vec<CiRow>,
}

pub fn ci_table_for(scale: &str) -> Result<CiTable, BwmError> {
    let id: ScaleId = scale.parse()?;
    let s = id.scale().ok_or_else(|| BwmError::InvalidScale {
        scale: id.to_string(),
        reason: "custom scales have no built-in levels".into(),
    })?;
    Ok(CiTable {
        scale: id,
        rows: ci_table(&s),
    })
}

/// Body of `GET /api/ci?scale=`.
pub fn ci_body(scale: &str) -> Result<String, ApiError> {
    ci_table_for(scale)
        .map(|t| render(&t, None))
        .map_err(|e| ApiError::from_error(&e))
}

fn json_response(result: Result<String, ApiError>) -> Response {
    let (status, body) = match result {
        Ok(body) => (StatusCode::OK, body),
        Err(e) => (
            StatusCode::from_u16(e.status).unwrap_or(StatusCode::BAD_REQUEST),
            e.body,
        ),
    };
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

#[derive(Debug, Deserialize)]
struct CiQuery {
    scale: Option<String>,
}

pub fn router(static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route(
            "/api/analyze",
            post(|body: String| async move { json_response(analyze_body(&body)) }),
        )
        .route(
            "/api/aggregate",
            post(|body: String| async move { json_response(aggregate_body(&body)) }),
        )
        .route(
            "/api/scales",
            get(|| async { json_response(Ok(scales_body())) }),
        )
        .route(
            "/api/ci",
            get(|Query(q): Query<CiQuery>| async move {
                json_response(ci_body(q.scale.as_deref().unwrap_or("saaty")))
            }),
        );
    match static_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    }
}

/// Serve until the process is stopped.
pub async fn serve(addr: SocketAddr, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(static_dir)).await
}
