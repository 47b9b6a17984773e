//! HTTP/JSON API over the engine.
//!
//! Sessions hold a program, an optional interpretation and the last
//! explanation, which is marked stale whenever either input changes.
//! Requests on one session are serialized by its lock; engine calls run on
//! the blocking pool. With a session directory every session is mirrored
//! to `<dir>/<id>/program.lp` and `<dir>/<id>/interpretation.int` and
//! reloaded on startup.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use aspdebug::parser::parse_program_with_warnings;
use aspdebug::{
    enumerate_answer_sets, explain_with, parse_interpretation, Error, ExplainOptions, Interpretation, ParseError,
    Program,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::{Mutex, RwLock};
use tower_http::services::ServeDir;
use uuid::Uuid;

const INDEX: &str = include_str!("../static/index.html");
const PROGRAM_FILE: &str = "program.lp";
const INTERPRETATION_FILE: &str = "interpretation.int";

#[derive(Clone, Debug, Default)]
pub struct ServiceConfig {
    pub static_dir: Option<PathBuf>,
    pub session_dir: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Session {
    pub program_text: String,
    pub program: Program,
    pub interpretation: Option<Interpretation>,
    pub explanation: Option<Value>,
    pub stale: bool,
}

impl Session {
    fn new(program_text: String, program: Program) -> Self {
        Session {
            program_text,
            program,
            interpretation: None,
            explanation: None,
            stale: true,
        }
    }
}

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>,
    session_dir: Option<PathBuf>,
}

type Shared = Arc<AppState>;

#[derive(Debug)]
pub enum ApiError {
    Parse(ParseError),
    BadRequest(String),
    NotFound,
    Budget(String),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        match self {
            ApiError::Parse(e) => (StatusCode::BAD_REQUEST, Json(json!(e))).into_response(),
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, Json(json!({ "error": m }))).into_response(),
            ApiError::NotFound => (StatusCode::NOT_FOUND, Json(json!({ "error": "unknown session" }))).into_response(),
            ApiError::Budget(m) => (StatusCode::CONFLICT, Json(json!({ "error": m }))).into_response(),
            ApiError::Internal(m) => {
                (StatusCode::INTERNAL_SERVER_ERROR, Json(json!({ "error": m }))).into_response()
            }
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => ApiError::Parse(p),
            Error::BudgetExceeded(_) => ApiError::Budget(e.to_string()),
            other => ApiError::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for ApiError {
    fn from(e: std::io::Error) -> Self {
        ApiError::Internal(e.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct RuleView {
    pub index: usize,
    pub text: String,
    pub span: Option<aspdebug::model::Span>,
}

fn rule_views(p: &Program) -> Vec<RuleView> {
    p.rules
        .iter()
        .enumerate()
        .map(|(k, r)| RuleView {
            index: k + 1,
            text: r.to_string(),
            span: r.span,
        })
        .collect()
}

fn literal_strings(i: &Interpretation) -> Vec<String> {
    i.iter().map(ToString::to_string).collect()
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))
}

impl AppState {
    async fn session(&self, id: &str) -> ApiResult<Arc<Mutex<Session>>> {
        let id = Uuid::parse_str(id).map_err(|_| ApiError::NotFound)?;
        self.sessions.read().await.get(&id).cloned().ok_or(ApiError::NotFound)
    }

    fn session_path(&self, id: &Uuid) -> Option<PathBuf> {
        self.session_dir.as_ref().map(|d| d.join(id.to_string()))
    }

    fn save_program(&self, id: &Uuid, text: &str) -> std::io::Result<()> {
        if let Some(dir) = self.session_path(id) {
            std::fs::create_dir_all(&dir)?;
            std::fs::write(dir.join(PROGRAM_FILE), text)?;
        }
        Ok(())
    }

    fn save_interpretation(&self, id: &Uuid, i: &Interpretation) -> std::io::Result<()> {
        if let Some(dir) = self.session_path(id) {
            std::fs::write(dir.join(INTERPRETATION_FILE), format!("{i}\n"))?;
        }
        Ok(())
    }
}

/// Sessions saved under `dir`; unreadable entries are skipped.
fn load_sessions(dir: &Path) -> HashMap<Uuid, Arc<Mutex<Session>>> {
    let mut out = HashMap::new();
    let Ok(entries) = std::fs::read_dir(dir) else {
        return out;
    };
    for entry in entries.flatten() {
        let Some(id) = entry.file_name().to_str().and_then(|n| Uuid::parse_str(n).ok()) else {
            continue;
        };
        let Ok(text) = std::fs::read_to_string(entry.path().join(PROGRAM_FILE)) else {
            continue;
        };
        let Ok((program, _)) = parse_program_with_warnings(&text) else {
            continue;
        };
        let mut s = Session::new(text, program);
        s.interpretation = std::fs::read_to_string(entry.path().join(INTERPRETATION_FILE))
            .ok()
            .and_then(|t| parse_interpretation(&t).ok());
        out.insert(id, Arc::new(Mutex::new(s)));
    }
    out
}

#[derive(Deserialize)]
struct CreateSession {
    program_text: String,
}

async fn create_session(State(state): State<Shared>, Json(body): Json<CreateSession>) -> ApiResult<Response> {
    let text = body.program_text;
    let (program, warnings) = {
        let text = text.clone();
        blocking(move || parse_program_with_warnings(&text)).await?.map_err(ApiError::Parse)?
    };
    let id = Uuid::new_v4();
    state.save_program(&id, &text)?;
    let rules = rule_views(&program);
    state
        .sessions
        .write()
        .await
        .insert(id, Arc::new(Mutex::new(Session::new(text, program))));
    let body = json!({ "id": id.to_string(), "rules": rules, "warnings": warnings });
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_session(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let s = session.lock().await;
    Ok(Json(json!({
        "id": id,
        "program_text": s.program_text,
        "rules": rule_views(&s.program),
        "interpretation": s.interpretation.as_ref().map(literal_strings),
        "explanation": s.explanation,
        "stale": s.stale,
    })))
}

async fn delete_session(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<StatusCode> {
    let uuid = Uuid::parse_str(&id).map_err(|_| ApiError::NotFound)?;
    state.sessions.write().await.remove(&uuid).ok_or(ApiError::NotFound)?;
    if let Some(dir) = state.session_path(&uuid) {
        if dir.exists() {
            std::fs::remove_dir_all(dir)?;
        }
    }
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Deserialize)]
struct SetInterpretation {
    literals: Vec<String>,
}

async fn put_interpretation(
    State(state): State<Shared>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<SetInterpretation>,
) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let text = format!("{{ {} }}", body.literals.join(", "));
    let i = parse_interpretation(&text).map_err(ApiError::Parse)?;
    let mut s = session.lock().await;
    state.save_interpretation(&Uuid::parse_str(&id).expect("validated above"), &i)?;
    s.interpretation = Some(i);
    s.stale = true;
    let i = s.interpretation.as_ref().expect("just set");
    Ok(Json(json!({ "valid": true, "literals": literal_strings(i), "stale": true })))
}

async fn get_interpretation(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let s = session.lock().await;
    Ok(Json(json!({ "literals": s.interpretation.as_ref().map(literal_strings) })))
}

#[derive(Deserialize, Default)]
struct ExplainQuery {
    #[serde(default)]
    minimal_loops: bool,
    #[serde(default)]
    first: bool,
}

async fn explain_session(
    State(state): State<Shared>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<ExplainQuery>,
) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let mut s = session.lock().await;
    let i = s
        .interpretation
        .clone()
        .ok_or_else(|| ApiError::BadRequest("the session has no interpretation".into()))?;
    let p = s.program.clone();
    let opts = ExplainOptions {
        minimal_loops: q.minimal_loops,
        first: q.first,
        ..Default::default()
    };
    let doc = blocking(move || explain_with(&p, &i, &opts).map(|e| e.to_json(&p))).await??;
    s.explanation = Some(doc.clone());
    s.stale = false;
    Ok(Json(doc))
}

#[derive(Deserialize)]
struct AnswerSetQuery {
    limit: Option<usize>,
}

async fn answer_sets(
    State(state): State<Shared>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<AnswerSetQuery>,
) -> ApiResult<Json<Value>> {
    let session = state.session(&id).await?;
    let p = session.lock().await.program.clone();
    let sets = blocking(move || enumerate_answer_sets(&p, q.limit)).await??;
    let sets: Vec<Vec<String>> = sets.iter().map(literal_strings).collect();
    Ok(Json(json!({ "count": sets.len(), "answer_sets": sets })))
}

async fn health() -> &'static str {
    "ok"
}

async fn index() -> impl IntoResponse {
    ([(header::CACHE_CONTROL, "no-cache")], Html(INDEX))
}

pub fn router(config: ServiceConfig) -> Router {
    let sessions = config.session_dir.as_deref().map(load_sessions).unwrap_or_default();
    let state = Arc::new(AppState {
        sessions: RwLock::new(sessions),
        session_dir: config.session_dir,
    });
    let api = Router::new()
        .route("/health", get(health))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/interpretation", get(get_interpretation).put(put_interpretation))
        .route("/sessions/{id}/explain", post(explain_session))
        .route("/sessions/{id}/answer-sets", get(answer_sets))
        .with_state(state);
    match config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index)),
    }
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config)).await
}
