//! Local HTTP scene endpoint for the orbit designer UI.
//!
//! GETs read an immutable snapshot. POSTs are serialized behind an async
//! mutex, recompute off the runtime threads, then swap the snapshot.

use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use orbitnet_core::scene::{SceneDocument, SCENE_SCHEMA_VERSION};
use orbitnet_core::{PlatformSpec, Scenario, TimeInterval};
use serde::Deserialize;
use serde_json::json;
use tokio::sync::Mutex;

use crate::commands::scene_coverage;
use crate::error::CliError;
use crate::scenario_file::{sha256_hex, CorridorBlock, ThresholdEntry};

/// Full parameter set posted by the UI, in SI units and radians. Extra keys
/// are ignored so a client can post back an edited document.
#[derive(Debug, Clone, Deserialize)]
pub struct SceneRequest {
    pub window: TimeInterval,
    pub comm_threshold: f64,
    pub platforms: Vec<PlatformSpec>,
    #[serde(default)]
    pub thresholds: Vec<ThresholdEntry>,
    #[serde(default)]
    pub corridor: Option<CorridorBlock>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BadRequest {
    pub field: Option<String>,
    pub message: String,
}

impl BadRequest {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: Some(field.into()),
            message: message.into(),
        }
    }
}

impl IntoResponse for BadRequest {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.message, "field": self.field });
        (StatusCode::BAD_REQUEST, [(header::CONTENT_TYPE, "application/json")], body.to_string()).into_response()
    }
}

impl SceneRequest {
    pub fn parse(body: &[u8]) -> Result<Self, BadRequest> {
        let de = &mut serde_json::Deserializer::from_slice(body);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = (path != ".").then_some(path);
            BadRequest {
                field,
                message: e.into_inner().to_string(),
            }
        })
    }

    pub fn to_scenario(&self) -> Result<Scenario, BadRequest> {
        let window = TimeInterval::new(self.window.start, self.window.end)
            .map_err(|e| BadRequest::new("window", e.to_string()))?;
        let platforms = self
            .platforms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                PlatformSpec::new(
                    p.id.clone(),
                    (p.center_x, p.center_y),
                    p.altitude,
                    p.orbit_radius,
                    p.angular_velocity,
                    p.initial_phase,
                )
                .map_err(|e| match e {
                    orbitnet_core::Error::Invalid { field, reason } => {
                        BadRequest::new(format!("platforms[{i}].{field}"), reason)
                    }
                    other => BadRequest::new(format!("platforms[{i}]"), other.to_string()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut scenario = Scenario::new(platforms, window, self.comm_threshold).map_err(|e| match e {
            orbitnet_core::Error::Invalid { field, reason } => BadRequest::new(field, reason),
            other => BadRequest {
                field: None,
                message: other.to_string(),
            },
        })?;
        for (k, t) in self.thresholds.iter().enumerate() {
            let f = |name: &str| format!("thresholds[{k}].{name}");
            let a = scenario.index_of(&t.a).map_err(|e| BadRequest::new(f("a"), e.to_string()))?;
            let b = scenario.index_of(&t.b).map_err(|e| BadRequest::new(f("b"), e.to_string()))?;
            if a == b {
                return Err(BadRequest::new(f("b"), "must differ from a"));
            }
            if !(t.distance.is_finite() && t.distance > 0.0) {
                return Err(BadRequest::new(f("distance"), "must be > 0"));
            }
            scenario.pair_thresholds.insert((a.min(b), a.max(b)), t.distance);
        }
        Ok(scenario)
    }
}

pub struct AppState {
    current: RwLock<Arc<SceneDocument>>,
    writer: Mutex<()>,
}

impl AppState {
    pub fn new(initial: SceneDocument) -> Arc<Self> {
        Arc::new(Self {
            current: RwLock::new(Arc::new(initial)),
            writer: Mutex::new(()),
        })
    }

    pub fn snapshot(&self) -> Arc<SceneDocument> {
        self.current.read().expect("scene lock poisoned").clone()
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

async fn get_scene(State(state): State<Arc<AppState>>) -> Response {
    json_response(StatusCode::OK, state.snapshot().to_canonical_json())
}

fn recompute(body: &[u8], revision: u64) -> Result<SceneDocument, Response> {
    let request = SceneRequest::parse(body).map_err(IntoResponse::into_response)?;
    let scenario = request.to_scenario().map_err(IntoResponse::into_response)?;
    let coverage = scene_coverage(request.corridor.as_ref()).map_err(|e| match e {
        CliError::Input(i) => BadRequest {
            field: i.field().map(str::to_string),
            message: i.to_string(),
        }
        .into_response(),
        other => BadRequest::new("corridor", other.to_string()).into_response(),
    })?;
    let mut doc = SceneDocument::build(&scenario, revision, coverage)
        .map_err(|e| BadRequest::new("platforms", e.to_string()).into_response())?;
    doc.input_sha256 = Some(sha256_hex(body));
    Ok(doc)
}

async fn post_scene(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let _guard = state.writer.lock().await;
    let revision = state.snapshot().revision + 1;
    let result = tokio::task::spawn_blocking(move || recompute(&body, revision)).await;
    match result {
        Ok(Ok(doc)) => {
            let doc = Arc::new(doc);
            *state.current.write().expect("scene lock poisoned") = doc.clone();
            json_response(StatusCode::OK, doc.to_canonical_json())
        }
        Ok(Err(resp)) => resp,
        Err(e) => json_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            json!({ "error": format!("recompute failed: {e}") }).to_string(),
        ),
    }
}

async fn health(State(state): State<Arc<AppState>>) -> Response {
    let doc = state.snapshot();
    json_response(
        StatusCode::OK,
        json!({ "status": "ok", "revision": doc.revision, "schema_version": SCENE_SCHEMA_VERSION }).to_string(),
    )
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/scene", get(get_scene).post(post_scene))
        .route("/health", get(health))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, state: Arc<AppState>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("serving scene on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
