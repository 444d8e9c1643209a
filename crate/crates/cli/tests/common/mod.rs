#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub fn cspoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cspoly"))
        .args(args)
        .output()
        .expect("spawn cspoly")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

pub fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("read report")).expect("report is JSON")
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}
