#![allow(dead_code)]

use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::Value;
use tatami_core::{Covering, Region, Tile, TileKind};
use tatami_service::model::{Kind, SessionState};
use tatami_service::{router, Library, Service};
use tower::ServiceExt;

pub fn corpus() -> Library {
    Library::load_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../puzzles")).unwrap()
}

pub fn app() -> (Arc<Service>, Router) {
    let svc = Arc::new(Service::new(corpus()));
    (svc.clone(), router(svc))
}

pub async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or_else(|_| panic!("non-JSON body: {:?}", String::from_utf8_lossy(&bytes)));
    (status, value)
}

pub async fn create(app: &Router, body: Value) -> String {
    let (status, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v["session_id"].as_str().unwrap().to_string()
}

/// The covering a state describes, rebuilt from its tile list. Fails if
/// the tiles overlap, leave the region or break the tatami law.
pub fn covering_of(state: &SessionState) -> Covering {
    let region = Region::from_ascii(&state.region.join("\n")).unwrap();
    let tiles: Vec<Tile> = state
        .tiles
        .iter()
        .map(|t| Tile { tag: t.tag.clone(), ..Tile::new(t.id, TileKind::from(t.kind), tatami_core::Cell::new(t.row, t.col)) })
        .collect();
    let c = Covering::from_tiles(region.clone(), &tiles).unwrap();
    assert!(tatami_core::violations(&region, &tiles).is_empty());
    c
}

pub fn kind(k: TileKind) -> Kind {
    k.into()
}
