//! Stateless JSON-over-HTTP evaluation of plenoptic camera designs.
//!
//! Routes, all under `/api/v1` except the health check:
//!
//! - `POST /api/v1/refocus` with `{config, a_list, include_scene}`
//! - `POST /api/v1/triangulate` with `{config, G, dx_list, include_scene}`
//! - `GET /api/v1/defaults`
//! - `GET /healthz`
//!
//! Every JSON response is an [`ApiResponse`]. Invalid requests get 400 with a
//! structured error. When any requested plane fails the whole result is still
//! returned, with per-element errors, under status 422.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};

use plenoptic_core::config::RawConfig;
use plenoptic_core::report::{refocus_report, triangulation_report, ErrorReport, RefocusReport, TriangulationReport};
use plenoptic_core::{build_refocus_scene, build_triangulation_scene, CameraConfig, Error, Scene};

/// Environment variable holding the default bind address.
pub const ADDR_ENV: &str = "SERVE_ADDR";
/// Environment variable holding the allowed CORS origin. Unset means any.
pub const CORS_ENV: &str = "CORS_ORIGIN";
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

/// Error name for bodies that are not valid JSON or do not match the schema.
pub const MALFORMED_REQUEST: &str = "MalformedRequest";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApiResponse<T> {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scene: Option<Scene>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefocusRequest {
    pub config: RawConfig,
    pub a_list: Vec<f64>,
    #[serde(default)]
    pub include_scene: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulateRequest {
    pub config: RawConfig,
    #[serde(rename = "G")]
    pub gap: i32,
    pub dx_list: Vec<f64>,
    #[serde(default)]
    pub include_scene: bool,
}

/// A request that cannot be evaluated.
struct Rejection(StatusCode, ErrorReport);

impl IntoResponse for Rejection {
    fn into_response(self) -> Response {
        json::<()>(self.0, ApiResponse { ok: false, result: None, error: Some(self.1), scene: None })
    }
}

impl From<Error> for Rejection {
    fn from(e: Error) -> Self {
        Rejection(StatusCode::BAD_REQUEST, (&e).into())
    }
}

fn json<T: Serialize>(status: StatusCode, body: ApiResponse<T>) -> Response {
    (status, Json(body)).into_response()
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, Rejection> {
    serde_json::from_slice(body).map_err(|e| {
        Rejection(StatusCode::BAD_REQUEST, ErrorReport { name: MALFORMED_REQUEST.to_string(), message: e.to_string() })
    })
}

/// 200 with `ok = true` or, when some element failed, 422 naming the first
/// failure.
fn completed<T: Serialize>(result: T, first_error: Option<ErrorReport>, scene: Option<Scene>) -> Response {
    let status = if first_error.is_some() { StatusCode::UNPROCESSABLE_ENTITY } else { StatusCode::OK };
    json(status, ApiResponse { ok: first_error.is_none(), result: Some(result), error: first_error, scene })
}

fn respond(outcome: Result<Response, Rejection>) -> Response {
    outcome.unwrap_or_else(IntoResponse::into_response)
}

pub fn evaluate_refocus(body: &[u8]) -> Response {
    respond((|| {
        let req: RefocusRequest = parse(body)?;
        let config = req.config.validate()?;
        let result: Vec<RefocusReport> = refocus_report(&config, &req.a_list)?;
        let scene = if req.include_scene { Some(build_refocus_scene(&config, &req.a_list)?) } else { None };
        let first = result.iter().find_map(|r| r.error.clone());
        Ok(completed(result, first, scene))
    })())
}

pub fn evaluate_triangulation(body: &[u8]) -> Response {
    respond((|| {
        let req: TriangulateRequest = parse(body)?;
        let config = req.config.validate()?;
        let result: TriangulationReport = triangulation_report(&config, req.gap, &req.dx_list)?;
        let scene =
            if req.include_scene { Some(build_triangulation_scene(&config, req.gap, &req.dx_list)?) } else { None };
        let first = result.planes.iter().find_map(|p| p.error.clone());
        Ok(completed(result, first, scene))
    })())
}

async fn refocus(body: Bytes) -> Response {
    evaluate_refocus(&body)
}

async fn triangulate(body: Bytes) -> Response {
    evaluate_triangulation(&body)
}

async fn defaults() -> Response {
    let body = ApiResponse { ok: true, result: Some(CameraConfig::reference().to_raw()), error: None, scene: None };
    json(StatusCode::OK, body)
}

async fn health() -> &'static str {
    "ok"
}

async fn not_found() -> Response {
    let error = ErrorReport { name: "NotFound".into(), message: "no such endpoint".into() };
    Rejection(StatusCode::NOT_FOUND, error).into_response()
}

async fn method_not_allowed() -> Response {
    let error = ErrorReport { name: "MethodNotAllowed".into(), message: "method not allowed for this endpoint".into() };
    Rejection(StatusCode::METHOD_NOT_ALLOWED, error).into_response()
}

/// Router allowing cross-origin requests from `origin`, or from anywhere
/// when `None`.
pub fn router(origin: Option<HeaderValue>) -> Router {
    let cors = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE])
        .allow_origin(match origin {
            Some(o) => AllowOrigin::exact(o),
            None => AllowOrigin::any(),
        });
    Router::new()
        .route("/api/v1/refocus", post(refocus))
        .route("/api/v1/triangulate", post(triangulate))
        .route("/api/v1/defaults", get(defaults))
        .route("/healthz", get(health))
        .fallback(not_found)
        .method_not_allowed_fallback(method_not_allowed)
        .layer(cors)
}

/// Allowed origin from [`CORS_ENV`].
pub fn origin_from_env() -> Result<Option<HeaderValue>, String> {
    match std::env::var(CORS_ENV) {
        Ok(v) if !v.is_empty() && v != "*" => {
            HeaderValue::from_str(&v).map(Some).map_err(|e| format!("invalid {CORS_ENV} {v:?}: {e}"))
        }
        _ => Ok(None),
    }
}

/// Bind address: explicit, else [`ADDR_ENV`], else [`DEFAULT_ADDR`].
pub fn resolve_addr(explicit: Option<&str>) -> Result<SocketAddr, String> {
    let text = match explicit {
        Some(a) => a.to_string(),
        None => std::env::var(ADDR_ENV).unwrap_or_else(|_| DEFAULT_ADDR.to_string()),
    };
    text.parse().map_err(|e| format!("invalid address {text:?}: {e}"))
}

/// Serve until Ctrl-C.
pub async fn serve(addr: SocketAddr, origin: Option<HeaderValue>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(origin))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
