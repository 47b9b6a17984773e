use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use debug_asp::service::{router, ServiceConfig};
use proptest::prelude::*;
use serde_json::{json, Value};
use tower::ServiceExt;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn literals(name: &str) -> Vec<String> {
    aspdebug::parse_interpretation(&fixture(name)).unwrap().iter().map(ToString::to_string).collect()
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let value = serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

async fn new_session(app: &Router, program: &str) -> String {
    let (status, v) = call(app, Method::POST, "/sessions", Some(json!({ "program_text": program }))).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v["id"].as_str().unwrap().to_owned()
}

async fn set_interpretation(app: &Router, id: &str, lits: &[String]) -> (StatusCode, Value) {
    call(app, Method::PUT, &format!("/sessions/{id}/interpretation"), Some(json!({ "literals": lits }))).await
}

#[tokio::test]
async fn lucy_session_finds_the_singleton_loop() {
    let app = router(ServiceConfig::default());
    let id = new_session(&app, &fixture("lucy2.lp")).await;
    let (status, _) = set_interpretation(&app, &id, &literals("e2.int")).await;
    assert_eq!(status, StatusCode::OK);
    let (status, v) = call(&app, Method::POST, &format!("/sessions/{id}/explain"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["verdict"], "not-answer-set");
    assert_eq!(v["unfounded_loops"].as_array().unwrap().len(), 1);
    assert_eq!(v["unfounded_loops"][0]["literals"], json!(["bid(m2,p1,1)"]));
}

#[tokio::test]
async fn explain_payload_equals_cli_json() {
    let app = router(ServiceConfig::default());
    for (p, i) in [("lucy2.lp", "e1.int"), ("lucy2.lp", "e2.int"), ("linus1.lp", "e3.int"), ("patty1.lp", "e4.int")] {
        let id = new_session(&app, &fixture(p)).await;
        set_interpretation(&app, &id, &literals(i)).await;
        let (_, v) = call(&app, Method::POST, &format!("/sessions/{id}/explain"), None).await;
        let golden: Value = serde_json::from_str(&fixture(&format!(
            "golden/{}_{}.json",
            p.trim_end_matches(".lp"),
            i.trim_end_matches(".int")
        )))
        .unwrap();
        assert_eq!(v, golden, "({p}, {i})");
    }
}

#[tokio::test]
async fn create_returns_rules_with_spans() {
    let app = router(ServiceConfig::default());
    let (status, v) = call(&app, Method::POST, "/sessions", Some(json!({ "program_text": "a.\nb :- a." }))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["rules"][1], json!({ "index": 2, "text": "b :- a.", "span": { "start": 3, "end": 10 } }));
    let (status, v) = call(&app, Method::POST, "/sessions", Some(json!({ "program_text": "" }))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["rules"], json!([]));
}

#[tokio::test]
async fn parse_errors_are_bad_requests() {
    let app = router(ServiceConfig::default());
    let (status, v) = call(&app, Method::POST, "/sessions", Some(json!({ "program_text": "a :- b" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["kind"], "syntax");
    assert!(v["line"].is_number() && v["column"].is_number());

    let id = new_session(&app, "a :- not b.").await;
    let (status, v) = set_interpretation(&app, &id, &["a".into(), "-a".into()]).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["kind"], "inconsistent-interpretation");
    let (status, v) = set_interpretation(&app, &id, &["p(X)".into()]).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{v}");
}

#[tokio::test]
async fn unknown_sessions_are_not_found() {
    let app = router(ServiceConfig::default());
    let missing = "00000000-0000-4000-8000-000000000000";
    for (m, uri) in [
        (Method::GET, format!("/sessions/{missing}")),
        (Method::POST, format!("/sessions/{missing}/explain")),
        (Method::GET, "/sessions/not-a-uuid/answer-sets".to_owned()),
    ] {
        assert_eq!(call(&app, m, &uri, None).await.0, StatusCode::NOT_FOUND, "{uri}");
    }
}

#[tokio::test]
async fn explain_without_interpretation_is_rejected() {
    let app = router(ServiceConfig::default());
    let id = new_session(&app, "a.").await;
    let (status, _) = call(&app, Method::POST, &format!("/sessions/{id}/explain"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn budget_exceeded_is_a_conflict() {
    let app = router(ServiceConfig::default());
    let text: String = (0..21).map(|k| format!("a{k} | b{k}.\n")).collect();
    let id = new_session(&app, &text).await;
    let (status, v) = call(&app, Method::GET, &format!("/sessions/{id}/answer-sets"), None).await;
    assert_eq!(status, StatusCode::CONFLICT, "{v}");
}

#[tokio::test]
async fn answer_sets_of_the_corrected_program() {
    let app = router(ServiceConfig::default());
    let id = new_session(&app, &fixture("linus_fixed.lp")).await;
    let (status, v) = call(&app, Method::GET, &format!("/sessions/{id}/answer-sets"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["count"], 9);
    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}/answer-sets?limit=3"), None).await;
    assert_eq!(v["answer_sets"].as_array().unwrap().len(), 3);
}

#[tokio::test]
async fn staleness_follows_edits() {
    let app = router(ServiceConfig::default());
    let id = new_session(&app, "a :- b. b :- a.").await;
    set_interpretation(&app, &id, &["a".into()]).await;
    let (_, s) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(s["stale"], true);
    call(&app, Method::POST, &format!("/sessions/{id}/explain"), None).await;
    let (_, s) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(s["stale"], false);
    assert_eq!(s["explanation"]["verdict"], "not-answer-set");
    set_interpretation(&app, &id, &[]).await;
    let (_, s) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(s["stale"], true);
}

#[tokio::test]
async fn health_and_static_assets() {
    let app = router(ServiceConfig::default());
    assert_eq!(call(&app, Method::GET, "/health", None).await, (StatusCode::OK, json!("ok")));
    let (status, page) = call(&app, Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(page.as_str().unwrap().contains("<html"));

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>workbench</p>").unwrap();
    std::fs::write(dir.path().join("app.js"), "run()").unwrap();
    let app = router(ServiceConfig { static_dir: Some(dir.path().into()), session_dir: None });
    assert_eq!(call(&app, Method::GET, "/", None).await.1, json!("<p>workbench</p>"));
    assert_eq!(call(&app, Method::GET, "/app.js", None).await.1, json!("run()"));
    assert_eq!(call(&app, Method::GET, "/health", None).await.1, json!("ok"));
}

#[tokio::test]
async fn sessions_persist_in_the_session_directory() {
    let dir = tempfile::tempdir().unwrap();
    let config = ServiceConfig { static_dir: None, session_dir: Some(dir.path().into()) };
    let app = router(config.clone());
    let id = new_session(&app, &fixture("lucy2.lp")).await;
    set_interpretation(&app, &id, &literals("e1.int")).await;
    assert!(dir.path().join(&id).join("interpretation.int").exists());

    let reloaded = router(config);
    let (status, s) = call(&reloaded, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["interpretation"], json!(literals("e1.int")));
    let (status, _) = call(&reloaded, Method::DELETE, &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    assert!(!dir.path().join(&id).exists());
}

#[derive(Clone, Debug)]
enum Op {
    Set(usize, Vec<usize>),
    Explain(usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        (0..3usize, proptest::collection::vec(0..4usize, 0..4)).prop_map(|(s, l)| Op::Set(s, l)),
        (0..3usize).prop_map(Op::Explain),
    ]
}

const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sessions_are_isolated(ops in proptest::collection::vec(op(), 1..12)) {
        let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
        rt.block_on(async {
            let app = router(ServiceConfig::default());
            let programs = ["a :- b. b :- a.", "a | b. c :- a.", "d :- not c."];
            let mut ids = Vec::new();
            for p in programs {
                ids.push(new_session(&app, p).await);
            }
            let mut model: Vec<Option<Vec<String>>> = vec![None; 3];
            for op in ops {
                match op {
                    Op::Set(s, lits) => {
                        let mut l: Vec<String> = lits.iter().map(|k| ATOMS[*k].to_owned()).collect();
                        l.sort();
                        l.dedup();
                        set_interpretation(&app, &ids[s], &l).await;
                        model[s] = Some(l);
                    }
                    Op::Explain(s) => {
                        let (status, v) = call(&app, Method::POST, &format!("/sessions/{}/explain", ids[s]), None).await;
                        match &model[s] {
                            None => assert_eq!(status, StatusCode::BAD_REQUEST),
                            Some(l) => {
                                let p = aspdebug::parse_program(programs[s]).unwrap();
                                let i = aspdebug::parse_interpretation(&format!("{{{}}}", l.join(","))).unwrap();
                                assert_eq!(v, aspdebug::explain(&p, &i).unwrap().to_json(&p));
                            }
                        }
                    }
                }
                for (s, id) in ids.iter().enumerate() {
                    let (_, v) = call(&app, Method::GET, &format!("/sessions/{id}/interpretation"), None).await;
                    assert_eq!(v["literals"], json!(model[s]));
                }
            }
        });
    }
}
