//! HTTP+JSON sessions for playing tatami puzzles: place and remove tiles
//! with the tatami law enforced, ask for forced-tile hints, and play Noku
//! against the engine.

mod error;
mod http;
pub mod model;
mod session;
mod store;

pub use error::ApiError;
pub use http::{router, serve};
pub use session::{LogEvent, Session, SessionHeader};
pub use store::{Library, Service};
