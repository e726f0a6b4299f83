//! The JSON report every subcommand emits.

use anyhow::{anyhow, Context, Result};
use serde::Serialize;
use slemma_kit::certify::{Verdict, VerdictKind};
use slemma_kit::poly::{parse, Grading, Polynomial};
use slemma_kit::rational::{parse_point, Rational};
use std::collections::BTreeMap;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field order is part of the output format.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub certificate: Option<serde_json::Value>,
    pub derivation_trace: Vec<String>,
    pub timing_ms: u64,
    pub seed: u64,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: Verdict) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            verdict,
            certificate: None,
            derivation_trace: Vec::new(),
            timing_ms: 0,
            seed: 0,
            version: VERSION,
        }
    }

    pub fn input(mut self, name: &str, value: impl ToString) -> Self {
        self.inputs.insert(name.to_string(), value.to_string());
        self
    }

    pub fn certificate<T: Serialize>(mut self, c: &T) -> Self {
        self.certificate = Some(serde_json::to_value(c).expect("serializable certificate"));
        self
    }

    pub fn trace(mut self, steps: impl IntoIterator<Item = String>) -> Self {
        self.derivation_trace.extend(steps);
        self
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict.kind)
    }
}

pub fn exit_code(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Proved => 0,
        VerdictKind::Disproved => 2,
        VerdictKind::Unknown => 3,
    }
}

/// Largest `k` such that `xk` occurs in the text.
fn max_var(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' && i + 1 < b.len() && b[i + 1].is_ascii_digit() {
            let j = (i + 1..b.len())
                .find(|&j| !b[j].is_ascii_digit())
                .unwrap_or(b.len());
            best = best.max(text[i + 1..j].parse().unwrap_or(0));
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

/// Parses polynomials over a common ring whose size is the largest
/// variable index among them (at least `min_vars`).
pub fn parse_polys(named: &[(&str, &str)], min_vars: usize) -> Result<Vec<Polynomial>> {
    let n = named
        .iter()
        .map(|(_, t)| max_var(t))
        .max()
        .unwrap_or(0)
        .max(min_vars)
        .max(1);
    named
        .iter()
        .map(|(flag, text)| parse(text, n).map_err(|e| anyhow!("--{flag} {text:?}: {e}")))
        .collect()
}

pub fn parse_slater(text: &str, n: usize) -> Result<Vec<Rational>> {
    let p = parse_point(text).map_err(|e| anyhow!("--slater {text:?}: {e}"))?;
    if p.len() != n {
        return Err(anyhow!(
            "--slater has {} coordinates, expected {n}",
            p.len()
        ));
    }
    Ok(p)
}

pub fn parse_grading(text: &str) -> Result<Grading> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .with_context(|| format!("--z {text:?}: bad entry {s:?}"))
        })
        .collect::<Result<Vec<_>>>()
        .map(Grading)
}

/// Reads a certificate file: either a bare certificate or a full report,
/// in which case its `certificate` field is used. A solver result wrapping
/// the certificate in an `outcome` object is unwrapped as well.
pub fn read_certificate<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(c) = v.get_mut("certificate").map(serde_json::Value::take) {
        v = c;
    }
    if v.get("outcome").is_some_and(serde_json::Value::is_object) {
        v = v["outcome"].take();
    }
    serde_json::from_value(v).with_context(|| {
        format!(
            "{} does not hold a certificate of the expected kind",
            path.display()
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_size() {
        assert_eq!(max_var("x1^2 - x12*x3"), 12);
        assert_eq!(max_var("3"), 0);
        let ps = parse_polys(&[("f", "x1^2"), ("g", "x1*x3")], 0).unwrap();
        assert_eq!(ps[0].nvars(), 3);
        let err = parse_polys(&[("f", "x1^^2")], 0).unwrap_err().to_string();
        assert!(err.contains("position"), "{err}");
    }

    #[test]
    fn codes() {
        assert_eq!(exit_code(VerdictKind::Proved), 0);
        assert_eq!(exit_code(VerdictKind::Disproved), 2);
        assert_eq!(exit_code(VerdictKind::Unknown), 3);
    }
}
