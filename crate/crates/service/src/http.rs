use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::ApiError;
use crate::model::*;
use crate::store::Service;

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self.body())).into_response()
    }
}

type Shared = State<Arc<Service>>;

fn body<T: DeserializeOwned>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::Schema(e.body_text()))
}

/// Runs blocking session work off the async workers.
async fn blocking<T, F>(status: StatusCode, f: F) -> Response
where
    T: Serialize + Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(Ok(v)) => (status, Json(v)).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(e) => ApiError::Internal(e.to_string()).into_response(),
    }
}

async fn list_puzzles(State(svc): Shared) -> Json<PuzzleList> {
    Json(svc.list_puzzles())
}

async fn create_session(State(svc): Shared, payload: Result<Json<CreateSession>, JsonRejection>) -> Response {
    match body(payload) {
        Ok(req) => blocking(StatusCode::CREATED, move || svc.create_session(&req)).await,
        Err(e) => e.into_response(),
    }
}

async fn get_session(State(svc): Shared, Path(id): Path<String>) -> Response {
    blocking(StatusCode::OK, move || svc.state(&id)).await
}

async fn place(State(svc): Shared, Path(id): Path<String>, payload: Result<Json<PlaceRequest>, JsonRejection>) -> Response {
    match body(payload) {
        Ok(req) => blocking(StatusCode::OK, move || svc.place(&id, &req)).await,
        Err(e) => e.into_response(),
    }
}

async fn remove(State(svc): Shared, Path(id): Path<String>, payload: Result<Json<RemoveRequest>, JsonRejection>) -> Response {
    match body(payload) {
        Ok(req) => blocking(StatusCode::OK, move || svc.remove(&id, &req)).await,
        Err(e) => e.into_response(),
    }
}

async fn hint(State(svc): Shared, Path(id): Path<String>) -> Response {
    blocking(StatusCode::OK, move || svc.hint(&id)).await
}

async fn ai_move(State(svc): Shared, Path(id): Path<String>) -> Response {
    blocking(StatusCode::OK, move || svc.ai_move(&id)).await
}

async fn not_found(uri: axum::http::Uri) -> Response {
    ApiError::NoRoute(uri.path().to_string()).into_response()
}

async fn wrong_method() -> Response {
    ApiError::MethodNotAllowed.into_response()
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/puzzles", get(list_puzzles))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/place", post(place))
        .route("/sessions/{id}/remove", post(remove))
        .route("/sessions/{id}/hint", get(hint))
        .route("/sessions/{id}/noku/ai-move", post(ai_move))
        .fallback(not_found)
        .method_not_allowed_fallback(wrong_method)
        .with_state(service)
}

/// Serves until the process is stopped.
pub async fn serve(addr: std::net::SocketAddr, service: Arc<Service>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(service)).await
}
