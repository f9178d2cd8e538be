mod common;

use std::sync::Arc;

use axum::http::StatusCode;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tatami_core::{Cell, PlacementVerdict, TileKind};
use tatami_service::model::SessionState;
use tatami_service::{router, Service, Session};

use common::*;

const NOKU_2X4: &str = "tatami-puzzle 1\nmode: noku\nsize: 2x4\n";

fn random_body(rng: &mut ChaCha8Rng, s: &SessionState) -> Value {
    let kinds = if rng.gen_bool(0.02) { 4 } else { 3 };
    let kind = ["M", "H", "V", "X"][rng.gen_range(0..kinds)];
    let row = rng.gen_range(0..=s.height);
    let col = rng.gen_range(0..=s.width);
    match rng.gen_range(0..20) {
        0 => json!({"kind": kind, "row": row}),
        1 => {
            let player = ["player1", "player2"][rng.gen_range(0..2)];
            json!({"kind": kind, "row": row, "col": col, "player": player})
        }
        _ => json!({"kind": kind, "row": row, "col": col}),
    }
}

/// Random requests against every kind of session. After each one the
/// session's tiles must form a legal covering, and placement verdicts must
/// match the covering's own check on the previous state.
#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn random_requests_never_break_the_tatami_law() {
    let dir = tempfile::tempdir().unwrap();
    let svc = Arc::new(Service::with_log_dir(corpus(), dir.path()).unwrap());
    let app = router(svc.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a7a);
    let mut ids = Vec::new();
    for p in svc.library().summaries() {
        ids.push(create(&app, json!({"puzzle_id": p.id})).await);
    }
    ids.push(create(&app, json!({"document": NOKU_2X4, "vs_ai": true})).await);
    ids.push(create(&app, json!({"document": NOKU_2X4, "vs_ai": true, "human": "player2"})).await);

    let mut requests = 0;
    let mut legal = 0;
    let mut blocked = 0;
    // Counts only the random requests, not the state reads around them.
    while requests < 10_000 {
        let id = ids.choose(&mut rng).unwrap().clone();
        let (_, before) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        let before: SessionState = serde_json::from_value(before).unwrap();
        let prev = covering_of(&before);
        let (status, v) = match rng.gen_range(0..100) {
            0..=59 => {
                let body = random_body(&mut rng, &before);
                call(&app, "POST", &format!("/sessions/{id}/place"), Some(body)).await
            }
            60..=79 => {
                let tile_id = match before.tiles.choose(&mut rng) {
                    Some(t) if rng.gen_bool(0.9) => t.id,
                    _ => rng.gen_range(0..100),
                };
                call(&app, "POST", &format!("/sessions/{id}/remove"), Some(json!({"tile_id": tile_id}))).await
            }
            80..=89 => call(&app, "GET", &format!("/sessions/{id}/hint"), None).await,
            90..=94 => call(&app, "POST", &format!("/sessions/{id}/noku/ai-move"), None).await,
            95..=97 => {
                // A fresh session now and then, so finished games do not
                // leave the stream with nothing to do.
                let p = svc.library().summaries().choose(&mut rng).unwrap().id.clone();
                let (status, v) = call(&app, "POST", "/sessions", Some(json!({"puzzle_id": p}))).await;
                ids.push(v["session_id"].as_str().unwrap().to_string());
                (status, v)
            }
            _ => call(&app, "GET", "/sessions/unknown", None).await,
        };
        requests += 1;
        assert_eq!(v["schema_version"], 1, "{v}");
        if status == StatusCode::INTERNAL_SERVER_ERROR {
            panic!("internal error: {v}");
        }
        if let Some(verdict) = v.get("verdict") {
            let verdict: PlacementVerdict = serde_json::from_value(verdict.clone()).unwrap();
            match &verdict {
                PlacementVerdict::Legal => legal += 1,
                PlacementVerdict::TatamiBlocked { .. } => blocked += 1,
                _ => {}
            }
            if verdict.is_legal() {
                let after: SessionState = serde_json::from_value(v["state"].clone()).unwrap();
                assert!(after.tiles.len() > before.tiles.len());
            } else {
                assert_eq!(serde_json::from_value::<SessionState>(v["state"].clone()).unwrap(), before);
            }
        }
        let (_, after) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        let after: SessionState = serde_json::from_value(after).unwrap();
        let now = covering_of(&after);
        if v.get("verdict").is_some_and(|x| x["type"] == "legal") {
            // The requested tile is the new one with the smallest id; the
            // engine's reply, if any, comes after it.
            let first = now.tiles().filter(|t| prev.tile(t.id).is_none()).min_by_key(|t| t.id).unwrap();
            assert_eq!(prev.can_place(first.kind, first.anchor), PlacementVerdict::Legal);
        }
    }
    assert!(legal > 500 && blocked > 20, "legal {legal}, blocked {blocked}");

    // Every session replays byte for byte, in memory and from its log file.
    let restarted = Service::with_log_dir(corpus(), dir.path()).unwrap();
    for id in &ids {
        let live = serde_json::to_vec(&svc.state(id).unwrap()).unwrap();
        let (header, events) = svc.export(id).unwrap();
        let replayed = Session::replay(&header, &events).unwrap();
        assert_eq!(serde_json::to_vec(&replayed.state()).unwrap(), live);
        assert_eq!(serde_json::to_vec(&restarted.state(id).unwrap()).unwrap(), live);
    }
}

#[test]
fn verdicts_match_the_core_check() {
    let svc = Service::new(corpus());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for puzzle in ["oku-8x8", "oku-stairs", "feature-sampler", "tomoku-6x8-7"] {
        let id = svc.create_session(&tatami_service::model::CreateSession { puzzle_id: Some(puzzle.into()), ..Default::default() }).unwrap().session_id;
        for _ in 0..400 {
            let s = svc.state(&id).unwrap();
            if s.status.solved {
                break;
            }
            let c = covering_of(&s);
            let k = TileKind::ALL[rng.gen_range(0..3)];
            let cell = Cell::new(rng.gen_range(0..s.height), rng.gen_range(0..s.width));
            let req = tatami_service::model::PlaceRequest { kind: k.into(), row: cell.row, col: cell.col, player: None };
            let got = svc.place(&id, &req).unwrap();
            assert_eq!(got.verdict, c.can_place(k, cell));
        }
    }
}
