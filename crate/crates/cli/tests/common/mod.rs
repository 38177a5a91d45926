#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub fn apodeixis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apodeixis")).args(args).env_remove("APODEIXIS_THREADS").output().unwrap()
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Validates `instance` against one of the definitions in the shipped schema.
pub fn schema_errors(definition: &str, instance: &Value) -> Vec<String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/apodeixis.schema.json");
    let mut schema: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    schema["$ref"] = Value::String(format!("#/$defs/{definition}"));
    let validator = jsonschema::validator_for(&schema).unwrap();
    validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}

pub fn json_stdout(args: &[&str]) -> (i32, Value) {
    let out = apodeixis(args);
    assert!(out.stderr.is_empty() || code(&out) == 0, "{}", stderr(&out));
    (code(&out), serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out))))
}
