use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use bwythoff::solver::GridExport;
use bwythoff::Move;
use serde::Deserialize;

use crate::error::{ApiError, ApiResult};
use crate::service::{CreateSession, Hint, SessionService, SessionView};

type Shared = Arc<SessionService>;

#[derive(Debug, Deserialize)]
pub struct GridQuery {
    pub beta: String,
    pub n: u64,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::BadRequest(e.body_text()))
}

async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> ApiResult<T> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::BadRequest(format!("worker failed: {e}")))?
}

async fn create(
    State(svc): State<Shared>,
    payload: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let request = body(payload)?;
    let view = blocking(move || svc.create_session(&request)).await?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn show(State(svc): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    svc.session(&id).map(Json)
}

async fn submit(
    State(svc): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<Move>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let mv = body(payload)?;
    blocking(move || svc.submit_move(&id, mv)).await.map(Json)
}

async fn hint(State(svc): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<Hint>> {
    svc.hint(&id).map(Json)
}

async fn grids(
    State(svc): State<Shared>,
    query: Result<Query<GridQuery>, QueryRejection>,
) -> ApiResult<Json<GridExport>> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    blocking(move || svc.grids().slice(&q.beta, q.n))
        .await
        .map(Json)
}

pub fn router(service: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", post(submit))
        .route("/sessions/{id}/hint", get(hint))
        .route("/grids", get(grids))
        .with_state(service)
}

/// Serves the API on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr, service: Shared) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(service)).await
}
