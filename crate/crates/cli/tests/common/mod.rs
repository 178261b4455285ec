#![allow(dead_code)]

use std::process::{Command, Output};

use regex::Regex;
use serde_json::Value;

pub fn schema() -> Value {
    serde_json::from_str(mvt_cli::SCHEMA).expect("schema is JSON")
}

pub fn mvt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvt"))
        .args(args)
        .output()
        .expect("spawn mvt")
}

/// Validates `value` against the subset of JSON Schema the report schema
/// uses: type, enum, required, properties, additionalProperties, items,
/// pattern, minimum, minLength and local `$ref`. Returns every violation.
pub fn validate(value: &Value, schema: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(value, schema, schema, "$", &mut errors);
    errors
}

fn resolve<'a>(root: &'a Value, node: &'a Value) -> &'a Value {
    match node.get("$ref").and_then(Value::as_str) {
        Some(r) => {
            let path = r.strip_prefix("#/").expect("local ref");
            path.split('/').fold(root, |v, key| &v[key])
        }
        None => node,
    }
}

fn type_matches(value: &Value, ty: &str) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "null" => value.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(value: &Value, node: &Value, root: &Value, at: &str, errors: &mut Vec<String>) {
    let node = resolve(root, node);
    if let Some(ty) = node.get("type").and_then(Value::as_str) {
        if !type_matches(value, ty) {
            errors.push(format!("{at}: expected {ty}, got {value}"));
            return;
        }
    }
    if let Some(options) = node.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errors.push(format!("{at}: {value} not in enum"));
        }
    }
    if let (Some(p), Some(s)) = (node.get("pattern").and_then(Value::as_str), value.as_str()) {
        if !Regex::new(p).unwrap().is_match(s) {
            errors.push(format!("{at}: {s:?} does not match {p}"));
        }
    }
    if let (Some(n), Some(s)) = (
        node.get("minLength").and_then(Value::as_u64),
        value.as_str(),
    ) {
        if (s.chars().count() as u64) < n {
            errors.push(format!("{at}: shorter than {n}"));
        }
    }
    if let (Some(m), Some(x)) = (node.get("minimum").and_then(Value::as_f64), value.as_f64()) {
        if x < m {
            errors.push(format!("{at}: {x} below minimum {m}"));
        }
    }
    if let Some(obj) = value.as_object() {
        let props = node.get("properties").and_then(Value::as_object);
        if let Some(req) = node.get("required").and_then(Value::as_array) {
            for key in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{at}: missing {key}"));
                }
            }
        }
        for (key, v) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => check(v, sub, root, &format!("{at}.{key}"), errors),
                None if node.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{at}: unexpected key {key}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (node.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            check(v, items, root, &format!("{at}[{i}]"), errors);
        }
    }
}
