use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use bwythoff_api::{router, SessionService};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(SessionService::default()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, beta: &str, x: u64, y: u64, side: &str) -> Value {
    let (status, body) = call(
        app,
        "POST",
        "/sessions",
        Some(json!({"beta": beta, "x": x, "y": y, "engine_plays": side})),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body
}

#[tokio::test]
async fn create_as_second_waits_for_the_human() {
    let app = app();
    let s = create(&app, "pi", 10, 12, "second").await;
    assert_eq!(s["position"], json!({"x": 10, "y": 12}));
    assert_eq!(s["status"], "in_progress");
    assert_eq!(s["to_move"], "human");
    assert_eq!(s["k"], 3);
    assert_eq!(s["id"].as_str().unwrap().len(), 32);
    assert!(s["history"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn create_as_first_plays_immediately() {
    let app = app();
    let s = create(&app, "pi", 3, 5, "first").await;
    assert_eq!(s["position"], json!({"x": 3, "y": 1}));
    assert_eq!(
        s["history"][0],
        json!({"mover": "engine", "move": {"type": "nim_y", "t": 4}, "position": {"x": 3, "y": 1}})
    );
    assert_eq!(s["to_move"], "human");
}

#[tokio::test]
async fn degenerate_start_is_already_over() {
    let app = app();
    let s = create(&app, "pi", 0, 0, "first").await;
    assert_eq!(s["status"], "human_won");
    assert_eq!(s["to_move"], Value::Null);
    let s = create(&app, "pi", 0, 0, "second").await;
    assert_eq!(s["status"], "engine_won");
    let id = s["id"].as_str().unwrap();
    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"type": "nim_x", "t": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "NotYourTurn");
}

#[tokio::test]
async fn restricted_diagonal_is_rejected() {
    let app = app();
    let s = create(&app, "pi", 3, 5, "second").await;
    assert_eq!(s["restricted"], true);
    assert_eq!(
        s["legal_moves"],
        json!({"nim_x": 3, "nim_y": 5, "diagonal": 0, "total": 8})
    );
    let id = s["id"].as_str().unwrap();
    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"type": "diagonal", "s": 1, "t": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "IllegalMove");
    assert_eq!(body["reason"], "restriction-active");
    assert!(body["detail"].is_string());

    let (_, after) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(after["position"], json!({"x": 3, "y": 5}));
}

#[tokio::test]
async fn other_illegal_reasons() {
    let app = app();
    let s = create(&app, "pi", 4, 4, "second").await;
    let id = s["id"].as_str().unwrap();
    let uri = format!("/sessions/{id}/moves");
    let (status, body) = call(&app, "POST", &uri, Some(json!({"type": "nim_x", "t": 9}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["reason"], "out-of-bounds");
    let (_, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"type": "diagonal", "s": 4, "t": 1})),
    )
    .await;
    assert_eq!(body["reason"], "diagonal-width");
}

#[tokio::test]
async fn human_taking_the_last_token_wins() {
    let app = app();
    let s = create(&app, "pi", 1, 0, "second").await;
    let id = s["id"].as_str().unwrap();
    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"type": "nim_x", "t": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "human_won");
    assert_eq!(body["position"], json!({"x": 0, "y": 0}));
    assert_eq!(body["history"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn engine_falls_back_from_p_positions() {
    let app = app();
    let s = create(&app, "pi", 4, 4, "second").await;
    let id = s["id"].as_str().unwrap();
    let uri = format!("/sessions/{id}/moves");
    let (status, body) = call(
        &app,
        "POST",
        &uri,
        Some(json!({"type": "diagonal", "s": 3, "t": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["history"][0]["position"], json!({"x": 1, "y": 3}));
    assert_eq!(
        body["history"][1],
        json!({"mover": "engine", "move": {"type": "nim_y", "t": 3}, "position": {"x": 1, "y": 0}})
    );
    let (_, body) = call(&app, "POST", &uri, Some(json!({"type": "nim_x", "t": 1}))).await;
    assert_eq!(body["status"], "human_won");
}

#[tokio::test]
async fn engine_answers_n_positions_into_p_positions() {
    let app = app();
    let s = create(&app, "pi", 10, 12, "second").await;
    let id = s["id"].as_str().unwrap();
    let (_, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"type": "nim_x", "t": 1})),
    )
    .await;
    let (_, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert!(
        body["status"] == "engine_won" || hint["classification"] == "P",
        "{body} {hint}"
    );
}

#[tokio::test]
async fn hints() {
    let app = app();
    let s = create(&app, "pi", 3, 5, "second").await;
    let id = s["id"].as_str().unwrap();
    let (status, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        hint,
        json!({"move": {"type": "nim_y", "t": 4}, "classification": "N"})
    );

    let s = create(&app, "pi", 1, 3, "second").await;
    let id = s["id"].as_str().unwrap();
    let (_, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(hint, json!({"move": null, "classification": "P"}));

    let s = create(&app, "pi", 0, 0, "second").await;
    let id = s["id"].as_str().unwrap();
    let (_, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(hint, json!({"move": null, "classification": "P"}));
}

#[tokio::test]
async fn grid_slices() {
    let app = app();
    let (status, body) = call(&app, "GET", "/grids?beta=pi&n=6", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        body,
        json!({"n_max": 6, "p_positions": [[0,0],[1,3],[2,6],[3,1],[6,2]]})
    );

    let (_, body) = call(&app, "GET", "/grids?beta=pi&n=0", None).await;
    assert_eq!(body["p_positions"], json!([[0, 0]]));

    let (_, body) = call(&app, "GET", "/grids?beta=surd:(2%2B1*sqrt(2))/1&n=10", None).await;
    let cells = body["p_positions"].as_array().unwrap();
    for cell in [[1, 3], [3, 1], [2, 6], [6, 2], [4, 10], [10, 4]] {
        assert!(cells.contains(&json!(cell)), "{cell:?} missing from {body}");
    }

    let (_, body) = call(&app, "GET", "/grids?beta=pi&n=30", None).await;
    let mut expected = vec![json!([0, 0])];
    for (a, b) in [
        (1, 3),
        (2, 6),
        (4, 9),
        (5, 12),
        (7, 15),
        (8, 18),
        (10, 21),
        (11, 25),
        (13, 28),
    ] {
        expected.push(json!([a, b]));
        expected.push(json!([b, a]));
    }
    let mut got = body["p_positions"].as_array().unwrap().clone();
    let key = |v: &Value| (v[0].as_u64().unwrap(), v[1].as_u64().unwrap());
    got.sort_by_key(key);
    expected.sort_by_key(key);
    assert_eq!(got, expected);
}

#[tokio::test]
async fn error_bodies() {
    let app = app();
    let (status, body) = call(&app, "GET", "/sessions/0123/hint", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "UnknownSession");
    let (status, _) = call(&app, "GET", "/sessions/0123", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, body) = call(
        &app,
        "POST",
        "/sessions/0123/moves",
        Some(json!({"type": "nim_x", "t": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "UnknownSession");

    let (status, body) = call(&app, "GET", "/grids?beta=tau&n=6", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "ParseError");
    assert_eq!(body["offset"], 0);

    let (status, body) = call(&app, "GET", "/grids?beta=pi&n=2001", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "CapacityExceeded");

    let (status, body) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"beta": "surd:(1+0*sqrt(3))/1", "x": 1, "y": 1, "engine_plays": "first"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "NotIrrational");

    let (_, body) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"beta": "dec:1.5", "x": 1, "y": 1, "engine_plays": "first"})),
    )
    .await;
    assert_eq!(body["error"], "BetaOutOfRange");

    let (status, body) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"beta": "pi", "x": 5000, "y": 1, "engine_plays": "first"})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "CapacityExceeded");

    let (status, body) = call(&app, "POST", "/sessions", Some(json!({"beta": "pi"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "BadRequest");
}
