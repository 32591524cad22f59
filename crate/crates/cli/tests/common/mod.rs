#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

pub const DEFAULT_FLAGS: [&str; 14] = [
    "--focal-main",
    "16",
    "--focus-dist",
    "1000",
    "--pitch-pixel",
    "0.0014",
    "--pitch-mla",
    "0.0125",
    "--focal-mla",
    "0.025",
    "--micro-res",
    "9",
    "--exit-pupil",
    "100",
];

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plenoptic")).args(args).output().expect("run plenoptic")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn load_schema(name: &str) -> Value {
    let text = std::fs::read_to_string(workspace_root().join("schema").join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Validator for one of the published schemas with its siblings registered.
pub fn validator(name: &str) -> jsonschema::Validator {
    let mut opts = jsonschema::options();
    for sibling in ["design-report.schema.json", "scene.schema.json", "api-response.schema.json"] {
        let schema = load_schema(sibling);
        let id = schema["$id"].as_str().unwrap().to_string();
        opts.with_resource(id, jsonschema::Resource::from_contents(schema).unwrap());
    }
    opts.build(&load_schema(name)).unwrap()
}

pub fn schema_errors(v: &jsonschema::Validator, instance: &Value) -> Vec<String> {
    v.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}

pub async fn http(method: &str, path: &str, body: Option<String>) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(path)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let res = plenoptic_server::router(None).oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}
