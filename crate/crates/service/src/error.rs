use thiserror::Error;

use crate::model::{ErrorBody, ErrorDetail, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ApiError {
    #[error("no session {0}")]
    SessionNotFound(String),
    #[error("no puzzle {0}")]
    UnknownPuzzle(String),
    #[error("{0}")]
    Schema(String),
    #[error("it is {0}'s turn")]
    NotYourTurn(String),
    #[error("the puzzle is already complete")]
    PuzzleComplete,
    #[error("{0}")]
    HintUnavailable(String),
    #[error("tiles cannot be removed in Noku")]
    RemovalForbidden,
    #[error("given tile {0} cannot be removed")]
    GivenTile(u32),
    #[error("no tile {0}")]
    UnknownTile(u32),
    #[error("{0}")]
    KindNotAllowed(String),
    #[error("{0}")]
    NotNoku(String),
    #[error("{0}")]
    BudgetExceeded(String),
    #[error("no route {0}")]
    NoRoute(String),
    #[error("method not allowed")]
    MethodNotAllowed,
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    pub fn code(&self) -> &'static str {
        match self {
            ApiError::SessionNotFound(_) => "session_not_found",
            ApiError::UnknownPuzzle(_) => "unknown_puzzle",
            ApiError::Schema(_) => "schema",
            ApiError::NotYourTurn(_) => "not_your_turn",
            ApiError::PuzzleComplete => "puzzle_complete",
            ApiError::HintUnavailable(_) => "hint_unavailable",
            ApiError::RemovalForbidden => "removal_forbidden",
            ApiError::GivenTile(_) => "given_tile",
            ApiError::UnknownTile(_) => "unknown_tile",
            ApiError::KindNotAllowed(_) => "kind_not_allowed",
            ApiError::NotNoku(_) => "not_noku",
            ApiError::BudgetExceeded(_) => "budget_exceeded",
            ApiError::NoRoute(_) => "no_route",
            ApiError::MethodNotAllowed => "method_not_allowed",
            ApiError::Internal(_) => "internal",
        }
    }

    pub fn status(&self) -> u16 {
        match self {
            ApiError::SessionNotFound(_) | ApiError::UnknownPuzzle(_) | ApiError::UnknownTile(_) | ApiError::NoRoute(_) => 404,
            ApiError::MethodNotAllowed => 405,
            ApiError::Schema(_) => 400,
            ApiError::KindNotAllowed(_) | ApiError::BudgetExceeded(_) => 422,
            ApiError::Internal(_) => 500,
            _ => 409,
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            schema_version: SCHEMA_VERSION,
            error: ErrorDetail { code: self.code().to_string(), message: self.to_string() },
        }
    }
}
