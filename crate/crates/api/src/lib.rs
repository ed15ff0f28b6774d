//! HTTP session service for playing β-Wythoff Nim against the engine.
//!
//! | method | path | body / query |
//! |---|---|---|
//! | `POST` | `/sessions` | `{"beta", "x", "y", "engine_plays"}` |
//! | `GET` | `/sessions/{id}` | |
//! | `POST` | `/sessions/{id}/moves` | `{"type", "t", "s"?}` |
//! | `GET` | `/sessions/{id}/hint` | |
//! | `GET` | `/grids` | `?beta=<spec>&n=<uint>` |
//!
//! Errors are `{"error": <code>, "detail": <message>}`.

pub mod error;
pub mod grids;
pub mod routes;
pub mod service;
pub mod session;

pub use error::{ApiError, ApiResult};
pub use grids::GridCache;
pub use routes::{router, serve};
pub use service::{CreateSession, Hint, LegalSummary, SessionService, SessionView};
pub use session::{engine_move, EnginePlays, GameSession, HistoryEntry, Mover, Status};
