//! Exact values of `Mm(G)` for catalogued families, with witnesses.

use serde::{Deserialize, Serialize};

use super::{default_bound, BoundResult, Provenance};
use crate::constructors::{
    bipartite_matrix, complete_witness, hypercube_matrix, k10_kpq_matrix, mr_plus_two_matrix,
    parallel_paths_certificate, reorient_bipartite,
};
use crate::eiglab::{Certificate, SpectrumSpec, SymMatrix};
use crate::error::Result;
use crate::graph::{FamilyDescriptor, Graph};

const COMPLETE: &str = "Mm(K_n) = ⌊n/2⌋";
const BIPARTITE_EQUAL: &str = "Mm(K_{m,m}) = m";
const BIPARTITE: &str = "Mm(K_{m,n}) = ⌊(m+n)/3⌋ for m != n";
const BIPARTITE_Q: &str = "q(K_{m,n}) = 3 for m != n, so Mm(K_{m,n}) <= ⌊(m+n)/3⌋";
const HYPERCUBE: &str = "Mm(Q_s) = 2^(s-1)";
const TREE: &str = "Mm(T) = 1 for every tree T";
const MR_PLUS_TWO: &str = "mr+(G) <= 2 and G is not (K_{1,0} ∪ K_{p,q}) ∨ K_r complemented: Mm(G) = ⌊n/2⌋";
const K10: &str = "Mm(((K_{1,0} ∪ K_{p,q}) ∨ K_r)^c) = ⌊n/3⌋";
const PARALLEL: &str = "two parallel paths: Mm(G) = 2";

/// A row of the family table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: String,
    pub formula: String,
    pub anchor: String,
    pub conditions: String,
    pub witness: String,
}

/// The families with a known exact value and how their witnesses are built.
pub fn catalog() -> Vec<CatalogEntry> {
    let row = |family: &str, formula: &str, anchor: &str, conditions: &str, witness: &str| CatalogEntry {
        family: family.into(),
        formula: formula.into(),
        anchor: anchor.into(),
        conditions: conditions.into(),
        witness: witness.into(),
    };
    vec![
        row("Complete(n)", "⌊n/2⌋", COMPLETE, "n >= 2", "complete_witness"),
        row("CompleteBipartite(m,m)", "m", BIPARTITE_EQUAL, "m >= 1", "bipartite_witness"),
        row(
            "CompleteBipartite(m,n)",
            "⌊(m+n)/3⌋",
            BIPARTITE,
            "m < n and ⌊(m+n)/3⌋ <= m; otherwise only bounds are reported",
            "bipartite_witness",
        ),
        row("CompleteBipartite(1,n)", "1", TREE, "the star is a tree", "none"),
        row("Hypercube(s)", "2^(s-1)", HYPERCUBE, "s >= 1", "hypercube_matrix"),
        row("Path(n)", "1", TREE, "n >= 2", "none"),
        row("ComplementForm", "⌊n/2⌋", MR_PLUS_TWO, "(p0, k) != (1, 1), at least one edge", "mr_plus_two_matrix"),
        row("ComplementForm", "⌊n/3⌋", K10, "(p0, k) = (1, 1)", "k10_kpq_matrix"),
        row("ParallelPaths(n,d)", "2", PARALLEL, "n >= 1", "parallel_paths_certificate"),
        row("any edgeless graph", "n", "Mm(G) = n when S(G) contains scalar matrices", "no edges", "none"),
    ]
}

fn exact(value: usize, p: Provenance, witness: Option<Certificate>) -> BoundResult {
    BoundResult { lower: value, upper: value, provenance: vec![p], witness }
}

fn witnessed(value: usize, p: Provenance, witness: Certificate) -> BoundResult {
    let lower = witness.min_multiplicity().min(value);
    BoundResult { lower, upper: value, provenance: vec![p], witness: Some(witness) }
}

/// Relabels a witness on `K_{small,large}` to the descriptor's side order.
fn bipartite(first: usize, second: usize, seed: u64) -> Result<BoundResult> {
    let mut b = bipartite_sorted(first.min(second), first.max(second), seed)?;
    if let Some(w) = b.witness.take() {
        b.witness = Some(reorient_bipartite(w, first, second)?);
    }
    Ok(b)
}

fn bipartite_sorted(m: usize, n: usize, seed: u64) -> Result<BoundResult> {
    let base = Provenance::new("complete_bipartite", BIPARTITE_EQUAL).with("m", m).with("n", n);
    if m == n {
        let w = bipartite_matrix(m, n, &vec![1.0; m], seed)?;
        return Ok(witnessed(m, base, w));
    }
    if m == 1 {
        return Ok(exact(1, Provenance::new("tree", TREE).with("n", n + 1), None));
    }
    let s = (m + n) / 3;
    let mut p = Provenance::new("complete_bipartite", BIPARTITE).with("m", m).with("n", n);
    if s <= m {
        let lambdas: Vec<f64> = (0..m).map(|i| if i < s { 1.0 } else { 0.0 }).collect();
        return Ok(witnessed(s, p, bipartite_matrix(m, n, &lambdas, seed)?));
    }
    // Only m pairs ±λ fit, so the formula's witness does not exist here. The
    // all-ones choice gives multiplicities (m, n - m, m).
    p = Provenance::new("complete_bipartite_bounds", BIPARTITE_Q).with("m", m).with("n", n).with("s", s);
    let w = bipartite_matrix(m, n, &vec![1.0; m], seed)?;
    Ok(BoundResult { lower: w.min_multiplicity(), upper: s, provenance: vec![p], witness: Some(w) })
}

/// Balanced thirds of `n`, largest first.
fn thirds(n: usize) -> [usize; 3] {
    [n.div_ceil(3), (n + 1) / 3, n / 3]
}

fn k10_family(p: usize, q: usize, r: usize, graph: Graph, seed: u64) -> Result<BoundResult> {
    let n = p + q + 1 + r;
    let totals = thirds(n);
    // The core takes as much of each total as it can while keeping one of each.
    let mut core = [1usize; 3];
    let mut left = p + q + 1 - 3;
    for i in 0..3 {
        let take = left.min(totals[i] - 1);
        core[i] += take;
        left -= take;
    }
    let c = k10_kpq_matrix(p, q, core[0], core[1], core[2], seed)?;
    let r3 = 3f64.sqrt();
    let values = [3.0, r3, -r3];
    let mut isolated = Vec::new();
    for i in 0..3 {
        isolated.extend(std::iter::repeat_n(values[i], totals[i] - core[i]));
    }
    let matrix = if isolated.is_empty() { c.matrix } else { c.matrix.direct_sum(&SymMatrix::from_diagonal(&isolated)?) };
    let target = SpectrumSpec::new(&[(-r3, totals[2]), (r3, totals[1]), (3.0, totals[0])])?;
    let mut trace = c.trace;
    if r > 0 {
        trace.push(format!("isolated:{r}"));
    }
    let w = Certificate::assemble(graph, matrix, target, seed, trace)?;
    let p = Provenance::new("k10_kpq", K10).with("n", n).with("r", r);
    Ok(witnessed(n / 3, p, w))
}

fn complement_form(desc: &FamilyDescriptor, graph: Graph, seed: u64) -> Result<BoundResult> {
    let FamilyDescriptor::ComplementForm { p0, pairs, r } = desc else { unreachable!("caller matched") };
    let n = desc.order();
    if *p0 == 1 && pairs.len() == 1 {
        let (p, q) = pairs[0];
        return k10_family(p, q, *r, graph, seed);
    }
    let p = Provenance::new("mr_plus_two", MR_PLUS_TWO).with("n", n).with("p0", *p0).with("k", pairs.len());
    if n < 4 {
        return Ok(exact(n / 2, p, None));
    }
    let n1 = (n - 4) / 2;
    let w = mr_plus_two_matrix(desc, n1, n - 4 - n1, seed)?;
    Ok(witnessed(n / 2, p, w))
}

/// Exact `Mm` for catalogued families, with a constructed witness for the lower
/// bound where a constructor exists. Other descriptors get the default bound,
/// or `1` when their graph is a tree.
pub fn known_mm(desc: &FamilyDescriptor, seed: u64) -> Result<BoundResult> {
    use FamilyDescriptor::*;
    let g = desc.graph()?;
    let n = g.order();
    if g.edge_count() == 0 {
        return Ok(default_bound(&g));
    }
    match desc {
        Complete(n) => {
            let p = Provenance::new("complete", COMPLETE).with("n", *n);
            Ok(witnessed(n / 2, p, complete_witness(*n, seed)?))
        }
        CompleteBipartite(m, k) => bipartite(*m, *k, seed),
        Hypercube(s) => {
            let value = 1usize << (s - 1);
            let p = Provenance::new("hypercube", HYPERCUBE).with("s", *s);
            Ok(witnessed(value, p, hypercube_matrix(*s)?))
        }
        ComplementForm { .. } => complement_form(desc, g, seed),
        ParallelPaths(k, d) => {
            let p = Provenance::new("parallel_paths", PARALLEL).with("n", *k);
            Ok(witnessed(2, p, parallel_paths_certificate(*k, d)?))
        }
        _ if g.is_tree() => Ok(exact(1, Provenance::new("tree", TREE).with("n", n), None)),
        _ => Ok(default_bound(&g)),
    }
}
