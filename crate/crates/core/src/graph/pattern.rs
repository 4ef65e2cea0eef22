use serde::{Deserialize, Serialize};

use super::Graph;
use crate::eiglab::SymMatrix;
use crate::error::{MmError, Result};

/// Relative threshold below which an off-diagonal entry counts as zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-9;

/// Relative magnitude every constructed edge entry must reach.
pub const CONSTRUCTION_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Requirement {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub required: Requirement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub is_member: bool,
    pub violations: Vec<Violation>,
    pub zero_threshold: f64,
}

fn scale(a: &SymMatrix) -> f64 {
    a.max_abs().max(1.0)
}

/// Checks `a ∈ S(g)`: off-diagonal `(i, j)` is nonzero iff it is an edge.
pub fn pattern_check(a: &SymMatrix, g: &Graph, zero_threshold: f64) -> Result<PatternReport> {
    if a.n() != g.order() {
        return Err(MmError::DimensionMismatch { expected: g.order(), found: a.n() });
    }
    if !(zero_threshold > 0.0) {
        return Err(MmError::validation("zero threshold must be positive"));
    }
    let cut = zero_threshold * scale(a);
    let mut violations = Vec::new();
    for i in 0..a.n() {
        for j in i + 1..a.n() {
            let value = a.get(i, j);
            let nonzero = value.abs() >= cut;
            let edge = g.has_edge(i, j);
            if nonzero != edge {
                let required = if edge { Requirement::Nonzero } else { Requirement::Zero };
                violations.push(Violation { i, j, value, required });
            }
        }
    }
    Ok(PatternReport { is_member: violations.is_empty(), violations, zero_threshold })
}

/// The graph whose edges are the off-diagonal entries of `a` that count as nonzero.
pub fn pattern_of(a: &SymMatrix, zero_threshold: f64) -> Graph {
    let cut = zero_threshold * scale(a);
    let mut edges = Vec::new();
    for i in 0..a.n() {
        for j in i + 1..a.n() {
            if a.get(i, j).abs() >= cut {
                edges.push((i, j));
            }
        }
    }
    Graph::new(a.n(), edges).expect("pattern edges are in range")
}

/// Stricter membership used by constructions: edges must clear
/// [`CONSTRUCTION_MARGIN`] and non-edges must read as zero.
pub fn clears_margin(a: &SymMatrix, g: &Graph) -> bool {
    if a.n() != g.order() {
        return false;
    }
    let s = scale(a);
    (0..a.n()).all(|i| {
        (i + 1..a.n()).all(|j| {
            let v = a.get(i, j).abs();
            if g.has_edge(i, j) {
                v >= CONSTRUCTION_MARGIN * s
            } else {
                v < DEFAULT_ZERO_THRESHOLD * s
            }
        })
    })
}
