use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;
use zfsolve::{dense_gaussian_solve, grid_matrix, BoardState, GridSpec};
use zfsolve_svc::{router, AppState, Config};

fn app(state: &Arc<AppState>) -> Router {
    router(state.clone()).unwrap()
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn post(state: &Arc<AppState>, path: &str, body: impl Into<Body>) -> (StatusCode, Value) {
    let req = Request::post(path).header("content-type", "application/json").body(body.into()).unwrap();
    let (status, bytes) = send(app(state), req).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn get(state: &Arc<AppState>, uri: &str) -> (StatusCode, Vec<u8>) {
    send(app(state), Request::get(uri).body(Body::empty()).unwrap()).await
}

fn board(cells: Vec<Vec<u8>>) -> String {
    json!({ "rows": cells.len(), "cols": cells[0].len(), "cells": cells }).to_string()
}

fn fresh() -> Arc<AppState> {
    AppState::new(Config::default())
}

#[tokio::test]
async fn solve_two_by_two_all_on() {
    let (status, body) = post(&fresh(), "/api/board/solve", board(vec![vec![1, 1], vec![1, 1]])).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({ "rows": 2, "cols": 2, "solvable": true, "presses": [[1, 1], [1, 1]], "pressCount": 4 }));
}

#[tokio::test]
async fn solve_one_by_one_off() {
    let (_, body) = post(&fresh(), "/api/board/solve", board(vec![vec![0]])).await;
    assert_eq!(body, json!({ "rows": 1, "cols": 1, "solvable": true, "presses": [[0]], "pressCount": 0 }));
}

#[tokio::test]
async fn single_light_on_four_by_four_follows_oracle() {
    let mut cells = vec![vec![0u8; 4]; 4];
    cells[0][0] = 1;
    let state = BoardState::from_rows(&cells).unwrap();
    let g = GridSpec::square(4).unwrap();
    let oracle = dense_gaussian_solve(&grid_matrix(g).to_dense(), state.cells()).unwrap();
    let (_, body) = post(&fresh(), "/api/board/solve", board(cells.clone())).await;
    assert_eq!(body["solvable"], json!(oracle.is_some()));
    assert!(oracle.is_none());
    assert_eq!(body["presses"], Value::Null);
    assert_eq!(body["pressCount"], Value::Null);

    let (_, hint) = post(&fresh(), "/api/board/hint", board(cells)).await;
    assert_eq!(hint, json!({ "solvable": false, "press": null }));
}

#[tokio::test]
async fn hints() {
    let state = fresh();
    let (_, body) = post(&state, "/api/board/hint", board(vec![vec![1; 3]; 3])).await;
    assert_eq!(body, json!({ "solvable": true, "press": { "row": 1, "col": 1 } }));
    let (_, body) = post(&state, "/api/board/hint", board(vec![vec![0; 5]; 5])).await;
    assert_eq!(body, json!({ "solvable": true, "press": null }));
}

#[tokio::test]
async fn hint_names_a_pressed_cell_of_the_solution() {
    let state = fresh();
    for seed in 0..20 {
        let (_, raw) = get(&state, &format!("/api/board/random?rows=5&cols=7&seed={seed}")).await;
        let (_, solve) = post(&state, "/api/board/solve", raw.clone()).await;
        let (_, hint) = post(&state, "/api/board/hint", raw).await;
        match hint["press"].as_object() {
            Some(p) => {
                let (r, c) = (p["row"].as_u64().unwrap() as usize, p["col"].as_u64().unwrap() as usize);
                assert_eq!(solve["presses"][r - 1][c - 1], json!(1));
            }
            None => assert_eq!(solve["pressCount"], json!(0)),
        }
    }
}

#[tokio::test]
async fn random_is_deterministic_and_solvable() {
    let state = fresh();
    let (status, first) = get(&state, "/api/board/random?rows=3&cols=3&seed=1").await;
    let (_, second) = get(&state, "/api/board/random?rows=3&cols=3&seed=1").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(first, second);
    for (rows, cols, seed) in [(3, 3, 1), (4, 4, 2), (5, 5, 3), (8, 3, 4), (10, 10, 5)] {
        let (_, raw) = get(&state, &format!("/api/board/random?rows={rows}&cols={cols}&seed={seed}")).await;
        let (_, body) = post(&state, "/api/board/solve", raw.clone()).await;
        assert_eq!(body["solvable"], json!(true), "{rows}x{cols}");
        let cells: Vec<Vec<u8>> =
            serde_json::from_value(serde_json::from_slice::<Value>(&raw).unwrap()["cells"].clone()).unwrap();
        let presses: Vec<Vec<u8>> = serde_json::from_value(body["presses"].clone()).unwrap();
        let after =
            BoardState::from_rows(&cells).unwrap().apply_presses(&BoardState::from_rows(&presses).unwrap()).unwrap();
        assert!(after.is_all_off());
    }
}

#[tokio::test]
async fn healthz() {
    assert_eq!(get(&fresh(), "/healthz").await, (StatusCode::OK, b"ok".to_vec()));
}

#[tokio::test]
async fn malformed_requests_are_rejected() {
    let state = AppState::new(Config { max_cells: 100, allow_origin: None });
    let bad_bodies = [
        "not json".to_string(),
        json!({ "rows": 2, "cols": 2 }).to_string(),
        json!({ "rows": 2, "cols": 2, "cells": [[1, 1], [1]] }).to_string(),
        json!({ "rows": 2, "cols": 2, "cells": [[1, 2], [0, 0]] }).to_string(),
        json!({ "rows": 2, "cols": 2, "cells": [[1, -1], [0, 0]] }).to_string(),
        json!({ "rows": 0, "cols": 0, "cells": [] }).to_string(),
        json!({ "rows": 11, "cols": 10, "cells": vec![vec![0; 10]; 11] }).to_string(),
    ];
    for path in ["/api/board/solve", "/api/board/hint"] {
        for body in &bad_bodies {
            let (status, resp) = post(&state, path, body.clone()).await;
            assert_eq!(status, StatusCode::BAD_REQUEST, "{path} {body}");
            assert!(resp["error"].is_string());
        }
    }
    for uri in ["rows=3", "rows=3&cols=x", "rows=20&cols=20", "rows=0&cols=3", "rows=3&cols=3&seed=-1"] {
        let (status, _) = get(&state, &format!("/api/board/random?{uri}")).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri}");
    }
    assert_eq!(state.handles().builds(), 0);
}

#[tokio::test]
async fn memoization_does_not_change_responses() {
    let warm = fresh();
    let mut requests = Vec::new();
    for seed in 0..6 {
        for (rows, cols) in [(4, 4), (5, 9), (9, 5)] {
            let (_, raw) = get(&warm, &format!("/api/board/random?rows={rows}&cols={cols}&seed={seed}")).await;
            requests.push(raw);
        }
    }
    requests.push(board(vec![vec![1, 0, 0, 0]; 4]).into_bytes());
    let mut warm_responses = Vec::new();
    for body in &requests {
        warm_responses.push(post(&warm, "/api/board/solve", body.clone()).await);
    }
    assert_eq!(warm.handles().builds(), 3);
    // Reverse order against a cold service for every request.
    for (body, expected) in requests.iter().zip(&warm_responses).rev() {
        let cold = fresh();
        assert_eq!(&post(&cold, "/api/board/solve", body.clone()).await, expected);
        assert_eq!(cold.handles().builds(), 1);
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_share_one_build() {
    let state = fresh();
    let body = board(vec![vec![1; 24]; 24]);
    let tasks: Vec<_> = (0..16)
        .map(|_| {
            let state = state.clone();
            let body = body.clone();
            tokio::spawn(async move { post(&state, "/api/board/solve", body).await })
        })
        .collect();
    let mut responses = Vec::new();
    for t in tasks {
        responses.push(t.await.unwrap());
    }
    assert!(responses.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(responses[0].1["solvable"], json!(true));
    assert_eq!(state.handles().builds(), 1);
}

#[tokio::test]
async fn cors_header_for_configured_origin() {
    let state = AppState::new(Config { allow_origin: Some("http://localhost:5173".into()), ..Config::default() });
    let req = Request::get("/healthz").header("origin", "http://localhost:5173").body(Body::empty()).unwrap();
    let resp = app(&state).oneshot(req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "http://localhost:5173");
}
