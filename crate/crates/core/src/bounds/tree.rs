//! Induced-tree bound: an induced tree on `n - k` vertices gives `Mm(G) <= k + 1`.

use serde::{Deserialize, Serialize};

use super::{BoundResult, Provenance};
use crate::error::{MmError, Result};
use crate::graph::Graph;

/// Graphs up to this order are searched exhaustively for a maximum induced tree.
pub const EXHAUSTIVE_TREE_LIMIT: usize = 12;

const ANCHOR: &str = "induced tree on n - k vertices implies Mm(G) <= k + 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeSearch {
    Supplied,
    Exhaustive,
    Greedy,
}

impl TreeSearch {
    fn label(self) -> &'static str {
        match self {
            TreeSearch::Supplied => "supplied",
            TreeSearch::Exhaustive => "exhaustive",
            TreeSearch::Greedy => "greedy",
        }
    }
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.order()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect()
}

fn induces_tree(adj: &[u32], set: u32) -> bool {
    let size = set.count_ones();
    if size == 0 {
        return false;
    }
    let edges: u32 = (0..adj.len()).filter(|&v| set >> v & 1 == 1).map(|v| (adj[v] & set).count_ones()).sum();
    if edges / 2 + 1 != size {
        return false;
    }
    let mut reached = 1u32 << set.trailing_zeros();
    loop {
        let next = (0..adj.len()).filter(|&v| reached >> v & 1 == 1).fold(reached, |m, v| m | (adj[v] & set));
        if next == reached {
            return reached == set;
        }
        reached = next;
    }
}

/// Largest vertex set inducing a tree, by brute force over all subsets.
fn exhaustive(g: &Graph) -> Vec<usize> {
    let adj = masks(g);
    let n = g.order();
    let mut best = 0u32;
    for set in 1u32..(1 << n) {
        if set.count_ones() > best.count_ones() && induces_tree(&adj, set) {
            best = set;
        }
    }
    (0..n).filter(|&v| best >> v & 1 == 1).collect()
}

/// Grows a tree from each start vertex, adding a vertex with exactly one
/// neighbour inside the tree (so no chord appears), preferring low degree.
/// `budget` caps the number of candidate evaluations.
fn greedy(g: &Graph, budget: usize) -> Vec<usize> {
    let n = g.order();
    let adj = g.adjacency();
    let mut best = vec![0];
    let mut spent = 0usize;
    for start in 0..n {
        let mut inside = vec![false; n];
        inside[start] = true;
        let mut tree = vec![start];
        loop {
            let mut pick: Option<usize> = None;
            for v in (0..n).filter(|&v| !inside[v]) {
                spent += 1;
                let links = tree.iter().filter(|&&u| adj[u][v]).count();
                if links == 1 && pick.is_none_or(|p| g.degree(v) < g.degree(p)) {
                    pick = Some(v);
                }
            }
            match pick {
                Some(v) => {
                    inside[v] = true;
                    tree.push(v);
                }
                None => break,
            }
            if spent >= budget {
                break;
            }
        }
        if tree.len() > best.len() {
            best = tree;
        }
        if spent >= budget {
            break;
        }
    }
    best.sort_unstable();
    best
}

/// Upper bound from an induced tree. With `tree_vertices` the set is checked
/// and used as is; otherwise a maximum induced tree is found exhaustively for
/// `n <= 12` and greedily (within `budget` candidate checks) beyond.
pub fn induced_tree_bound(g: &Graph, tree_vertices: Option<&[usize]>, budget: usize) -> Result<BoundResult> {
    let n = g.order();
    if n == 0 {
        return Err(MmError::validation("graph has no vertices"));
    }
    let (set, mode) = match tree_vertices {
        Some(vs) => {
            let mut sorted = vs.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() {
                return Err(MmError::validation("tree vertices repeat"));
            }
            if !g.induced(&sorted)?.is_tree() {
                return Err(MmError::validation(format!("vertices {sorted:?} do not induce a tree")));
            }
            (sorted, TreeSearch::Supplied)
        }
        None if n <= EXHAUSTIVE_TREE_LIMIT => (exhaustive(g), TreeSearch::Exhaustive),
        None => (greedy(g, budget.max(1)), TreeSearch::Greedy),
    };
    let k = n - set.len();
    let p = Provenance::new("induced_tree", ANCHOR)
        .with("mode", mode.label())
        .with("n", n)
        .with("k", k)
        .with("tree", set.clone());
    Ok(BoundResult::new(1, k + 1, p))
}
