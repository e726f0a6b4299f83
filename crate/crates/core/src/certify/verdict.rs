//! Three-valued outcomes shared by all checkers.

use crate::poly::Grading;
use crate::rational::{serde_str, serde_vec, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    Proved,
    Disproved,
    Unknown,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Proved => "Proved",
            VerdictKind::Disproved => "Disproved",
            VerdictKind::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// Exact data backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A rational point.
    Point {
        #[serde(with = "serde_vec")]
        x: Vec<Rational>,
    },
    /// The curve `λ ↦ (λ^{z_i} x_i)`, valid for `λ > threshold`.
    Ray {
        #[serde(with = "serde_vec")]
        x: Vec<Rational>,
        z: Grading,
        #[serde(with = "serde_str")]
        threshold: Rational,
    },
    /// Two points of the joint range whose connecting segment meets the
    /// open ray `{s·direction : s > 0}` that the joint range avoids.
    Segment {
        #[serde(with = "serde_vec")]
        x: Vec<Rational>,
        #[serde(with = "serde_vec")]
        y: Vec<Rational>,
        #[serde(with = "serde_vec")]
        direction: Vec<Rational>,
        #[serde(with = "serde_vec")]
        crossing: Vec<Rational>,
    },
}

impl Witness {
    pub fn point(x: Vec<Rational>) -> Self {
        Witness::Point { x }
    }

    pub fn as_point(&self) -> Option<&[Rational]> {
        match self {
            Witness::Point { x } => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    pub reason: String,
}

impl Verdict {
    pub fn proved(reason: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Proved,
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn disproved(witness: Witness, reason: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Disproved,
            witness: Some(witness),
            reason: reason.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Unknown,
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn is_proved(&self) -> bool {
        self.kind == VerdictKind::Proved
    }

    pub fn is_disproved(&self) -> bool {
        self.kind == VerdictKind::Disproved
    }

    pub fn witness_point(&self) -> Option<&[Rational]> {
        self.witness.as_ref().and_then(Witness::as_point)
    }
}
