//! Command reports: a human-readable body followed by a flat key/value block.
//!
//! ```text
//! task: jacobi
//! status: PASS
//! ...
//! --- machine ---
//! task=jacobi
//! status=PASS
//! input_digest=<sha256 hex>
//! ...
//! --- end ---
//! ```
//!
//! Reports contain no timing, so equal inputs give byte-identical output.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub task: String,
    pub status: Status,
    pub input_digest: String,
    pub details: Vec<String>,
    pub machine: Vec<(String, String)>,
}

pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

impl Report {
    pub fn new(task: &str, input: &str) -> Self {
        Report {
            task: task.to_string(),
            status: Status::Pass,
            input_digest: digest(input),
            details: Vec::new(),
            machine: Vec::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.details.push(text.into());
    }

    /// Values are flattened to one line.
    pub fn key(&mut self, key: impl Into<String>, value: impl ToString) {
        let v = value.to_string().replace('\n', " ");
        self.machine.push((key.into(), v));
    }

    /// Records a sub-check, failing the report when `ok` is false.
    pub fn check(&mut self, key: &str, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
        self.key(key, Status::from_bool(ok).as_str());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
        }
    }

    pub fn machine_block(&self) -> String {
        let mut out = String::from("--- machine ---\n");
        writeln!(out, "task={}", self.task).unwrap();
        writeln!(out, "status={}", self.status.as_str()).unwrap();
        writeln!(out, "input_digest={}", self.input_digest).unwrap();
        for (k, v) in &self.machine {
            writeln!(out, "{k}={v}").unwrap();
        }
        out.push_str("--- end ---\n");
        out
    }

    pub fn render(&self, machine_only: bool) -> String {
        if machine_only {
            return self.machine_block();
        }
        let mut out = String::new();
        writeln!(out, "task: {}", self.task).unwrap();
        writeln!(out, "status: {}", self.status.as_str()).unwrap();
        for d in &self.details {
            writeln!(out, "{d}").unwrap();
        }
        out.push_str(&self.machine_block());
        out
    }

    /// Looks up a machine key.
    pub fn value(&self, key: &str) -> Option<&str> {
        match key {
            "task" => Some(&self.task),
            "status" => Some(self.status.as_str()),
            "input_digest" => Some(&self.input_digest),
            _ => self.machine.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()),
        }
    }
}

/// Parses a machine block back into key/value pairs.
pub fn parse_machine_block(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip_while(|l| *l != "--- machine ---")
        .skip(1)
        .take_while(|l| *l != "--- end ---")
        .filter_map(|l| l.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}
