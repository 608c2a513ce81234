use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use orbitnet::commands::build_scene;
use orbitnet::scenario_file::load_path;
use orbitnet::service::{router, AppState};
use orbitnet_core::IntervalSet;
use serde_json::{json, Value};
use tower::ServiceExt;

fn state() -> Arc<AppState> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/oscillating.toml");
    let input = load_path(&path).unwrap();
    AppState::new(build_scene(&input, 0).unwrap())
}

async fn call(state: &Arc<AppState>, req: Request<Body>) -> (StatusCode, Value) {
    let resp = router(state.clone()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

fn post(body: &Value) -> Request<Body> {
    Request::post("/scene")
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap()
}

fn request_body(threshold: f64) -> Value {
    json!({
        "window": { "start": 0.0, "end": 60.0 },
        "comm_threshold": threshold,
        "platforms": [
            { "id": "a", "center_x": 0.0, "center_y": 0.0, "altitude": 2.0,
              "orbit_radius": 4.0, "angular_velocity": 0.3, "initial_phase": 0.0 },
            { "id": "b", "center_x": 12.0, "center_y": 0.0, "altitude": 2.0,
              "orbit_radius": 4.0, "angular_velocity": -0.2, "initial_phase": 1.0 },
            { "id": "c", "center_x": 6.0, "center_y": 9.0, "altitude": 5.0,
              "orbit_radius": 2.0, "angular_velocity": 0.5, "initial_phase": 2.0 },
        ],
    })
}

fn live_sets(doc: &Value) -> Vec<IntervalSet> {
    doc["links"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| serde_json::from_value::<IntervalSet>(json!({ "intervals": l["live"] })).unwrap())
        .collect()
}

#[tokio::test]
async fn get_scene_has_one_timeline_per_pair() {
    let s = state();
    let (status, doc) = call(&s, get("/scene")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["revision"], 0);
    let n = doc["platforms"].as_array().unwrap().len();
    assert_eq!(doc["links"].as_array().unwrap().len(), n * (n - 1) / 2);
}

#[tokio::test]
async fn health_reports_revision() {
    let s = state();
    let (status, v) = call(&s, get("/health")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["revision"], 0);
}

#[tokio::test]
async fn raising_threshold_grows_live_sets() {
    let s = state();
    let (status, low) = call(&s, post(&request_body(12.0))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(low["revision"], 1);
    let (status, high) = call(&s, post(&request_body(16.0))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(high["revision"], 2);

    let (lo, hi) = (live_sets(&low), live_sets(&high));
    assert_eq!(lo.len(), hi.len());
    for (a, b) in lo.iter().zip(&hi) {
        assert!(a.is_subset_of(b, 1e-6), "{a:?} not within {b:?}");
    }
    assert!(hi.iter().map(IntervalSet::measure).sum::<f64>() > lo.iter().map(IntervalSet::measure).sum::<f64>());

    let (_, current) = call(&s, get("/scene")).await;
    assert_eq!(current, high);
}

#[tokio::test]
async fn negative_radius_is_rejected_with_field() {
    let s = state();
    let mut body = request_body(12.0);
    body["platforms"][0]["orbit_radius"] = json!(-1.0);
    let (status, v) = call(&s, post(&body)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["field"], "platforms[0].orbit_radius");
    // the current document is untouched
    let (_, doc) = call(&s, get("/scene")).await;
    assert_eq!(doc["revision"], 0);
}

#[tokio::test]
async fn malformed_bodies_name_the_field() {
    let s = state();
    let mut body = request_body(12.0);
    body["platforms"][1]["altitude"] = json!("high");
    let (status, v) = call(&s, post(&body)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["field"], "platforms[1].altitude");

    let mut body = request_body(12.0);
    body["thresholds"] = json!([{ "a": "a", "b": "zz", "distance": 3.0 }]);
    let (status, v) = call(&s, post(&body)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["field"], "thresholds[0].b");

    let req = Request::post("/scene").body(Body::from("{not json")).unwrap();
    let (status, _) = call(&s, req).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn per_pair_threshold_is_echoed() {
    let s = state();
    let mut body = request_body(12.0);
    body["thresholds"] = json!([{ "a": "c", "b": "a", "distance": 30.0 }]);
    let (status, doc) = call(&s, post(&body)).await;
    assert_eq!(status, StatusCode::OK);
    let link = doc["links"].as_array().unwrap().iter().find(|l| l["a"] == "a" && l["b"] == "c").unwrap().clone();
    assert_eq!(link["threshold"], 30.0);
    assert_eq!(link["live"], json!([{ "start": 0.0, "end": 60.0 }]));
}

#[tokio::test]
async fn edited_document_can_be_posted_back() {
    let s = state();
    let (_, mut doc) = call(&s, get("/scene")).await;
    doc["comm_threshold"] = json!(25.0);
    let (status, next) = call(&s, post(&doc)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(next["revision"], 1);
    assert_eq!(next["comm_threshold"], 25.0);
    // kinematic fields survive the round trip; reference positions are
    // recomputed from the rounded phases and may move in the last digit
    let strip = |v: &Value| {
        let mut v = v.clone();
        for p in v.as_array_mut().unwrap() {
            p.as_object_mut().unwrap().remove("reference_position");
        }
        v
    };
    assert_eq!(strip(&next["platforms"]), strip(&doc["platforms"]));
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_posts_get_distinct_revisions() {
    let s = state();
    let tasks: Vec<_> = (0..8)
        .map(|k| {
            let s = s.clone();
            tokio::spawn(async move { call(&s, post(&request_body(10.0 + k as f64))).await })
        })
        .collect();
    let mut revisions = Vec::new();
    for t in tasks {
        let (status, doc) = t.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        revisions.push(doc["revision"].as_u64().unwrap());
    }
    revisions.sort();
    assert_eq!(revisions, (1..=8).collect::<Vec<_>>());
    let (_, health) = call(&s, get("/health")).await;
    assert_eq!(health["revision"], 8);
}
