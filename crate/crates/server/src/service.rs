//! HTTP routes over a [`Pipeline`] and a [`Store`].
//!
//! | method | path | |
//! |---|---|---|
//! | POST | `/v1/parse` | multipart field `file`; query `preprocess`, `postprocess` or `version` |
//! | GET | `/v1/results/{id}` | stored result |
//! | POST | `/v1/results/{id}/confirm` | body `{"SUBJECT": mark, ...}` |
//! | GET | `/v1/health` | `{"status": "ok", "version": ...}` |

use crate::store::{is_valid_id, Store, StoreError};
use axum::body::Bytes;
use axum::extract::multipart::MultipartRejection;
use axum::extract::{DefaultBodyLimit, Multipart, Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use marksheet_core::preprocess::PreprocessError;
use marksheet_core::{EngineConfig, Lexicon, Pipeline, PipelineConfig, PipelineError, VersionPreset};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use tower_http::cors::{Any, CorsLayer};

/// Uploads larger than this are refused.
pub const MAX_UPLOAD_BYTES: usize = 32 * 1024 * 1024;

/// Settings read from the environment.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    pub bind_addr: SocketAddr,
    pub engine_cmd: Option<String>,
    pub lexicon_path: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            data_dir: PathBuf::from("data"),
            bind_addr: ([127, 0, 0, 1], 8080).into(),
            engine_cmd: None,
            lexicon_path: None,
        }
    }
}

impl ServiceConfig {
    /// `DATA_DIR`, `BIND_ADDR`, `ENGINE_CMD`, `LEXICON_PATH`; unset or empty
    /// variables keep the defaults.
    pub fn from_env() -> anyhow::Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> anyhow::Result<Self> {
        let var = |k: &str| get(k).filter(|v| !v.trim().is_empty());
        let mut cfg = Self::default();
        if let Some(d) = var("DATA_DIR") {
            cfg.data_dir = d.into();
        }
        if let Some(b) = var("BIND_ADDR") {
            cfg.bind_addr = b
                .parse()
                .map_err(|e| anyhow::anyhow!("BIND_ADDR {b:?}: {e}"))?;
        }
        cfg.engine_cmd = var("ENGINE_CMD");
        cfg.lexicon_path = var("LEXICON_PATH").map(PathBuf::from);
        Ok(cfg)
    }

    pub fn load_lexicon(&self) -> anyhow::Result<Lexicon> {
        load_lexicon(self.lexicon_path.as_deref())
    }
}

pub fn load_lexicon(path: Option<&std::path::Path>) -> anyhow::Result<Lexicon> {
    match path {
        None => Ok(Lexicon::builtin()),
        Some(p) => {
            let bytes = std::fs::read(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?;
            Lexicon::from_json(&bytes).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    pipeline: Arc<Pipeline>,
    store: Arc<Store>,
}

impl AppState {
    pub fn new(pipeline: Pipeline, store: Store) -> Self {
        Self {
            pipeline: Arc::new(pipeline),
            store: Arc::new(store),
        }
    }

    pub fn from_config(cfg: &ServiceConfig) -> anyhow::Result<Self> {
        let pipeline_cfg = PipelineConfig {
            engine: cfg.engine_cmd.clone().map(EngineConfig::new),
            ..PipelineConfig::default()
        };
        let pipeline = Pipeline::new(cfg.load_lexicon()?, pipeline_cfg);
        Ok(Self::new(pipeline, Store::open(&cfg.data_dir)?))
    }
}

pub fn router(state: AppState) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods(Any)
        .allow_headers(Any);
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/parse", post(parse))
        .route("/v1/results/{id}", get(get_result))
        .route("/v1/results/{id}/confirm", post(confirm))
        .layer(DefaultBodyLimit::max(MAX_UPLOAD_BYTES))
        .layer(cors)
        .with_state(state)
}

/// Binds and serves until Ctrl-C.
pub async fn serve(cfg: ServiceConfig) -> anyhow::Result<()> {
    let state = AppState::from_config(&cfg)?;
    let listener = tokio::net::TcpListener::bind(cfg.bind_addr).await?;
    tracing::info!(addr = %listener.local_addr()?, data_dir = %cfg.data_dir.display(), "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            body: json!({ "error": message.into() }),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.body[key] = value.into();
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<PipelineError> for ApiError {
    fn from(e: PipelineError) -> Self {
        let msg = e.to_string();
        match e {
            PipelineError::Dump(d) => {
                let err = ApiError::new(StatusCode::BAD_REQUEST, msg);
                match d.record_index() {
                    Some(i) => err.with("record_index", i),
                    None => err,
                }
            }
            PipelineError::UnsupportedInput(_)
            | PipelineError::InputNotFound(_)
            | PipelineError::Preprocess(PreprocessError::Decode(_) | PreprocessError::InvalidImage(_)) => {
                ApiError::new(StatusCode::BAD_REQUEST, msg)
            }
            PipelineError::EngineNotConfigured => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, msg),
            PipelineError::Ocr(_) => ApiError::new(StatusCode::BAD_GATEWAY, msg),
            PipelineError::Preprocess(_) | PipelineError::Io { .. } => {
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, msg)
            }
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let status = match e {
            StoreError::NotFound(_) => StatusCode::NOT_FOUND,
            StoreError::Conflict(_) => StatusCode::CONFLICT,
            StoreError::Corrupt { .. } | StoreError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

fn json_bytes(status: StatusCode, bytes: Vec<u8>) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        bytes,
    )
        .into_response()
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

#[derive(Debug, Default, Deserialize)]
pub struct StageQuery {
    pub version: Option<String>,
    pub preprocess: Option<bool>,
    pub postprocess: Option<bool>,
}

impl StageQuery {
    /// Starts from the version preset (default v4), then applies explicit
    /// toggles.
    fn apply(&self, base: &PipelineConfig) -> Result<PipelineConfig, ApiError> {
        let version = match &self.version {
            Some(v) => v
                .parse::<VersionPreset>()
                .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e))?,
            None => VersionPreset::V4,
        };
        let mut cfg = base.clone();
        cfg.preprocess = self.preprocess.unwrap_or(version.preprocess());
        cfg.postprocess = self.postprocess.unwrap_or(version.postprocess());
        Ok(cfg)
    }
}

async fn parse(
    State(state): State<AppState>,
    Query(query): Query<StageQuery>,
    multipart: Result<Multipart, MultipartRejection>,
) -> Result<Response, ApiError> {
    let mut multipart =
        multipart.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("expected multipart upload: {e}")))?;
    let config = query.apply(state.pipeline.config())?;

    let mut upload: Option<(String, Bytes)> = None;
    while let Some(field) = multipart
        .next_field()
        .await
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.to_string()))?
    {
        let is_file = field.name() == Some("file") || field.file_name().is_some();
        if !is_file || upload.is_some() {
            continue;
        }
        let name = field.file_name().unwrap_or("upload").to_string();
        let data = field
            .bytes()
            .await
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.to_string()))?;
        upload = Some((name, data));
    }
    let Some((name, data)) = upload else {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "missing multipart field \"file\""));
    };
    if data.is_empty() {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "uploaded file is empty"));
    }

    let pipeline = state.pipeline.with_config(config);
    let store = Arc::clone(&state.store);
    let bytes = blocking(move || -> Result<Vec<u8>, ApiError> {
        let result = pipeline.parse_bytes(&name, &data)?;
        let (_, bytes) = store.create(result)?;
        Ok(bytes)
    })
    .await??;
    Ok(json_bytes(StatusCode::OK, bytes))
}

async fn get_result(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let store = Arc::clone(&state.store);
    let bytes = blocking(move || store.get_bytes(&id)).await??;
    Ok(json_bytes(StatusCode::OK, bytes))
}

/// Validates a confirm body: a JSON object of subject → integer 0–100.
pub fn parse_corrections(body: &[u8]) -> Result<BTreeMap<String, u8>, ApiError> {
    let value: Value = if body.iter().all(u8::is_ascii_whitespace) {
        Value::Object(Default::default())
    } else {
        serde_json::from_slice(body)
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, format!("invalid JSON: {e}")))?
    };
    let Value::Object(map) = value else {
        return Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "corrections must be an object of subject to mark",
        ));
    };
    let mut out = BTreeMap::new();
    for (subject, mark) in map {
        let valid = mark.as_u64().filter(|&m| m <= 100);
        let Some(m) = valid else {
            return Err(ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                format!("mark for {subject:?} must be an integer from 0 to 100, got {mark}"),
            )
            .with("subject", subject));
        };
        if subject.trim().is_empty() {
            return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "empty subject name"));
        }
        out.insert(subject, m as u8);
    }
    Ok(out)
}

async fn confirm(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    if !is_valid_id(&id) {
        return Err(StoreError::NotFound(id).into());
    }
    let corrections = parse_corrections(&body)?;
    let store = Arc::clone(&state.store);
    let confirmed = blocking(move || store.confirm(&id, corrections)).await??;
    Ok(json_bytes(StatusCode::OK, confirmed.bytes().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_lookup() {
        let env: BTreeMap<&str, &str> = [("DATA_DIR", "/tmp/x"), ("BIND_ADDR", "0.0.0.0:9000"), ("ENGINE_CMD", " ")].into();
        let cfg = ServiceConfig::from_lookup(|k| env.get(k).map(|v| v.to_string())).unwrap();
        assert_eq!(cfg.data_dir, PathBuf::from("/tmp/x"));
        assert_eq!(cfg.bind_addr.port(), 9000);
        assert_eq!(cfg.engine_cmd, None);
        assert!(ServiceConfig::from_lookup(|k| (k == "BIND_ADDR").then(|| "nope".into())).is_err());
    }

    #[test]
    fn corrections_validation() {
        assert_eq!(parse_corrections(b"").unwrap(), BTreeMap::new());
        assert_eq!(parse_corrections(br#"{"MATHS": 40}"#).unwrap(), [("MATHS".to_string(), 40)].into());
        for bad in [&br#"{"SCIENCE": 150}"#[..], br#"{"SCIENCE": -1}"#, br#"{"SCIENCE": 4.5}"#, br#"{"SCIENCE": "40"}"#, b"[1]"] {
            assert_eq!(parse_corrections(bad).unwrap_err().status, StatusCode::UNPROCESSABLE_ENTITY);
        }
        assert_eq!(parse_corrections(b"{").unwrap_err().status, StatusCode::BAD_REQUEST);
    }

    #[test]
    fn stage_query() {
        let base = PipelineConfig::default();
        let q = StageQuery { version: Some("v3".into()), ..Default::default() };
        let cfg = q.apply(&base).unwrap();
        assert!(!cfg.preprocess && !cfg.postprocess);
        let q = StageQuery { postprocess: Some(false), ..Default::default() };
        let cfg = q.apply(&base).unwrap();
        assert!(cfg.preprocess && !cfg.postprocess);
        assert!(StageQuery { version: Some("v9".into()), ..Default::default() }.apply(&base).is_err());
    }
}
