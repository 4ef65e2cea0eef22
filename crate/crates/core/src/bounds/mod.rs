//! Upper bounds and exact values for `Mm(G)`.
//!
//! Every rule here is sound on its own. Facts about `M(G)`, `mr(G)` and `q(G)`
//! are never computed for arbitrary graphs; they enter only as caller-supplied
//! assertions or through the family catalog.

mod known;
mod star;
mod tree;

pub use known::{catalog, known_mm, CatalogEntry};
pub use star::{detect_star, star_bound, star_bound_with_distinct, StarStructure};
pub use tree::{induced_tree_bound, TreeSearch, EXHAUSTIVE_TREE_LIMIT};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::eiglab::Certificate;
use crate::error::{MmError, Result};
use crate::graph::Graph;

/// One rule that contributed to a bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: String,
    /// The statement the rule instantiates, written as a formula.
    pub anchor: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, Value>,
}

impl Provenance {
    pub fn new(rule: &str, anchor: &str) -> Self {
        Provenance { rule: rule.into(), anchor: anchor.into(), inputs: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }
}

/// `lower <= Mm(G) <= upper`. A lower bound above the trivial one always comes
/// with a witness certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub lower: usize,
    pub upper: usize,
    pub provenance: Vec<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Certificate>,
}

impl BoundResult {
    pub fn new(lower: usize, upper: usize, provenance: Provenance) -> Self {
        BoundResult { lower, upper, provenance: vec![provenance], witness: None }
    }

    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }

    /// Intersection of two bound intervals for the same graph. The witness that
    /// supports the larger lower bound is kept.
    pub fn meet(mut self, other: BoundResult) -> Result<BoundResult> {
        if other.lower > self.lower || (other.lower == self.lower && self.witness.is_none()) {
            self.lower = other.lower;
            if other.witness.is_some() {
                self.witness = other.witness;
            }
        }
        self.upper = self.upper.min(other.upper);
        self.provenance.extend(other.provenance);
        if self.lower > self.upper {
            return Err(MmError::Infeasible(format!(
                "inconsistent bounds: lower {} exceeds upper {}",
                self.lower, self.upper
            )));
        }
        Ok(self)
    }
}

/// Bound that holds for every graph: `Mm(G) <= ⌊n/2⌋` once `G` has an edge.
/// Without edges `S(G)` contains the scalar matrices and `Mm(G) = n`.
pub fn default_bound(g: &Graph) -> BoundResult {
    let n = g.order();
    if g.edge_count() == 0 {
        return BoundResult::new(n, n, Provenance::new("edgeless", "Mm(G) = n when S(G) contains scalar matrices").with("n", n));
    }
    BoundResult::new(1, n / 2, Provenance::new("default", "Mm(G) <= ⌊n/2⌋ for graphs with an edge").with("n", n))
}

/// `min(⌊n/2⌋, M(G), ⌊n/q(G)⌋)` for a graph with at least one edge.
pub fn basic_bounds(n: usize, max_mult: Option<usize>, min_distinct: Option<usize>) -> Result<BoundResult> {
    if n < 2 {
        return Err(MmError::validation("a graph with an edge has n >= 2"));
    }
    let mut p = Provenance::new("basic", "Mm(G) <= min(⌊n/2⌋, M(G), ⌊n/q(G)⌋)").with("n", n);
    let mut upper = n / 2;
    if let Some(m) = max_mult {
        if m == 0 || m > n {
            return Err(MmError::validation(format!("M(G) = {m} must lie in 1..={n}")));
        }
        upper = upper.min(m);
        p = p.with("M", m);
    }
    if let Some(q) = min_distinct {
        if q == 0 || q > n {
            return Err(MmError::validation(format!("q(G) = {q} must lie in 1..={n}")));
        }
        upper = upper.min(n / q);
        p = p.with("q", q);
    }
    Ok(BoundResult::new(1, upper, p))
}

/// `Mm(G) = n/2` for a graph on `2·n_half` vertices with `mr(G) = n` and
/// `q(G) = 2`; both facts are asserted by the caller.
pub fn two_value_balance(n_half: usize, full_min_rank: bool, two_distinct: bool) -> Result<usize> {
    if n_half == 0 {
        return Err(MmError::validation("n_half must be positive"));
    }
    if !(full_min_rank && two_distinct) {
        return Err(MmError::precondition("the balance rule needs mr(G) = n and q(G) = 2"));
    }
    Ok(n_half)
}

/// Everything that applies to an arbitrary graph: the default bound, the best
/// induced tree found within `tree_budget`, and the star shapes.
pub fn structural_bounds(g: &Graph, tree_budget: usize) -> Result<BoundResult> {
    let mut b = default_bound(g);
    if g.order() == 0 || g.edge_count() == 0 {
        return Ok(b);
    }
    b = b.meet(induced_tree_bound(g, None, tree_budget)?)?;
    b.meet(star_bound(g))
}
