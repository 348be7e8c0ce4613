//! Shared helpers for the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qaffine"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn qaffine")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').expect("name|args");
            GoldenCase {
                name: name.to_string(),
                args: args.split_whitespace().map(str::to_string).collect(),
            }
        })
        .collect()
}

/// Runs every golden case and returns the names whose output differs.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for case in golden_cases() {
        let want = std::fs::read(golden_dir().join(format!("{}.out", case.name))).expect("golden output");
        let out = bin().args(&case.args).output().expect("spawn qaffine");
        if !out.status.success() || out.stdout != want {
            bad.push(case.name);
        }
    }
    bad
}
