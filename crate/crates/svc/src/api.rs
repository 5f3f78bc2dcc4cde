use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};
use zfsolve::grid::random_solvable;
use zfsolve::{solve_board, BoardState, GridSpec};

use crate::AppState;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardBody {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResponse {
    pub rows: usize,
    pub cols: usize,
    pub solvable: bool,
    pub presses: Option<Vec<Vec<u8>>>,
    pub press_count: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HintPress {
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HintResponse {
    pub solvable: bool,
    pub press: Option<HintPress>,
}

pub struct ApiError(StatusCode, String);

impl ApiError {
    fn bad(msg: impl Into<String>) -> Self {
        ApiError(StatusCode::BAD_REQUEST, msg.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

fn check_shape(state: &AppState, rows: usize, cols: usize) -> Result<GridSpec, ApiError> {
    let cap = state.config().max_cells;
    if rows.checked_mul(cols).is_none_or(|cells| cells > cap) {
        return Err(ApiError::bad(format!("board {rows}x{cols} exceeds the {cap}-cell limit")));
    }
    GridSpec::new(rows, cols).map_err(|e| ApiError::bad(e.to_string()))
}

fn parse_board(state: &AppState, body: Result<Bytes, BytesRejection>) -> Result<BoardState, ApiError> {
    let body = body.map_err(|e| ApiError::bad(e.body_text()))?;
    let req: BoardBody = serde_json::from_slice(&body).map_err(|e| ApiError::bad(format!("invalid JSON: {e}")))?;
    check_shape(state, req.rows, req.cols)?;
    if req.cells.len() != req.rows || req.cells.iter().any(|r| r.len() != req.cols) {
        return Err(ApiError::bad(format!("cells must be {} rows of {} values", req.rows, req.cols)));
    }
    if req.cells.iter().flatten().any(|&v| v > 1) {
        return Err(ApiError::bad("cells must be 0 or 1"));
    }
    BoardState::from_rows(&req.cells).map_err(|e| ApiError::bad(e.to_string()))
}

/// Canonical press pattern, or `None` if the board cannot be cleared.
async fn canonical(state: Arc<AppState>, board: BoardState) -> Result<Option<BoardState>, ApiError> {
    tokio::task::spawn_blocking(move || {
        let handle = state.handles().get(board.grid()).map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e))?;
        solve_board(&handle, &board).map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

pub async fn solve(
    State(state): State<Arc<AppState>>,
    body: Result<Bytes, BytesRejection>,
) -> Result<Json<SolveResponse>, ApiError> {
    let board = parse_board(&state, body)?;
    let g = board.grid();
    let presses = canonical(state, board).await?;
    Ok(Json(SolveResponse {
        rows: g.rows(),
        cols: g.cols(),
        solvable: presses.is_some(),
        press_count: presses.as_ref().map(BoardState::lit_count),
        presses: presses.map(|p| p.to_rows()),
    }))
}

pub async fn hint(
    State(state): State<Arc<AppState>>,
    body: Result<Bytes, BytesRejection>,
) -> Result<Json<HintResponse>, ApiError> {
    let board = parse_board(&state, body)?;
    let presses = canonical(state, board).await?;
    Ok(Json(HintResponse {
        solvable: presses.is_some(),
        press: presses.and_then(|p| p.first_lit()).map(|(r, c)| HintPress { row: r + 1, col: c + 1 }),
    }))
}

fn query_number(query: &HashMap<String, String>, key: &str) -> Result<Option<u64>, ApiError> {
    query
        .get(key)
        .map(|v| v.parse().map_err(|_| ApiError::bad(format!("`{key}` must be a non-negative integer, got `{v}`"))))
        .transpose()
}

pub async fn random(
    State(state): State<Arc<AppState>>,
    query: Result<Query<HashMap<String, String>>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<BoardBody>, ApiError> {
    let Query(query) = query.map_err(|e| ApiError::bad(e.body_text()))?;
    let required = |key| query_number(&query, key)?.ok_or_else(|| ApiError::bad(format!("missing `{key}`")));
    let rows = usize::try_from(required("rows")?).map_err(|_| ApiError::bad("`rows` too large"))?;
    let cols = usize::try_from(required("cols")?).map_err(|_| ApiError::bad("`cols` too large"))?;
    let seed = query_number(&query, "seed")?.unwrap_or(0);
    let g = check_shape(&state, rows, cols)?;
    Ok(Json(BoardBody { rows, cols, cells: random_solvable(g, seed).to_rows() }))
}
