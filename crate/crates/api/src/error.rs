use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("no session with id `{0}`")]
    UnknownSession(String),
    #[error("{0}")]
    NotYourTurn(String),
    #[error("{0}")]
    BadRequest(String),
    #[error(transparent)]
    Core(#[from] bwythoff::Error),
    #[error("snapshot: {0}")]
    Snapshot(#[from] std::io::Error),
}

pub type ApiResult<T> = Result<T, ApiError>;

impl ApiError {
    pub fn code(&self) -> &'static str {
        match self {
            ApiError::UnknownSession(_) => "UnknownSession",
            ApiError::NotYourTurn(_) => "NotYourTurn",
            ApiError::BadRequest(_) => "BadRequest",
            ApiError::Core(e) => e.code(),
            ApiError::Snapshot(_) => "SnapshotError",
        }
    }

    pub fn status(&self) -> StatusCode {
        use bwythoff::Error as E;
        match self {
            ApiError::UnknownSession(_) => StatusCode::NOT_FOUND,
            ApiError::NotYourTurn(_) => StatusCode::CONFLICT,
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::Core(e) => match e {
                E::IllegalMove(_) => StatusCode::CONFLICT,
                E::Parse { .. } | E::NotIrrational(_) | E::BetaOutOfRange(_) | E::NotVariant => {
                    StatusCode::BAD_REQUEST
                }
                E::CapacityExceeded { .. } | E::OutOfBounds { .. } | E::PrecisionExhausted(_) => {
                    StatusCode::UNPROCESSABLE_ENTITY
                }
                E::Overflow(_) => StatusCode::UNPROCESSABLE_ENTITY,
            },
            ApiError::Snapshot(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.code(), "detail": self.to_string() });
        if let ApiError::Core(bwythoff::Error::IllegalMove(reason)) = &self {
            body["reason"] = json!(reason.as_str());
        }
        if let ApiError::Core(bwythoff::Error::Parse { offset, .. }) = &self {
            body["offset"] = json!(offset);
        }
        (self.status(), Json(body)).into_response()
    }
}
