//! Hub-with-pendants shapes.
//!
//! A graph fits when some hub `h` has pendant leaves (vertices whose only
//! neighbour is `h`) and the rest of `V ∖ {h}` splits into blocks with no edges
//! between them. Every matrix in `S(G)` is then an arrow-like matrix: a hub row,
//! a diagonal leaf part whose coupling to the hub has no zeros, and blocks that
//! each reach the hub.

use serde::{Deserialize, Serialize};

use super::{default_bound, BoundResult, Provenance};
use crate::graph::Graph;

const SINGLE_BLOCK: &str = "one block of order n1 with pendant leaves: Mm(G) <= (n1 + 1)/2";
const GENERAL: &str = "p blocks, m leaves, t distinct eigenvalues: Mm(A) <= 2(n - m - p - 1)/(t + 1) + 1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarStructure {
    pub hub: usize,
    /// Connected components of `G - hub - leaves`, each of order at least 2.
    pub blocks: Vec<Vec<usize>>,
    pub leaves: Vec<usize>,
    pub p: usize,
    pub m: usize,
}

impl StarStructure {
    /// Re-checks every structural requirement against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let n = g.order();
        let mut seen = vec![false; n];
        if self.hub >= n || self.p != self.blocks.len() || self.m != self.leaves.len() {
            return false;
        }
        seen[self.hub] = true;
        for &v in self.blocks.iter().flatten().chain(&self.leaves) {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return false;
        }
        let leaves_ok = self.leaves.iter().all(|&l| g.neighbors(l) == [self.hub]);
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            b.iter().for_each(|&v| block_of[v] = i);
        }
        let blocks_ok = self.blocks.iter().enumerate().all(|(i, b)| {
            let has_edge = b.iter().any(|&u| b.iter().any(|&v| g.has_edge(u, v)));
            let reaches_hub = b.iter().any(|&v| g.has_edge(v, self.hub));
            let closed = b.iter().all(|&v| g.neighbors(v).iter().all(|&w| w == self.hub || block_of[w] == i));
            b.len() >= 2 && has_edge && reaches_hub && closed
        });
        leaves_ok && blocks_ok
    }
}

/// Vertices other than `hub` whose only neighbour is `hub`.
fn leaves_of(g: &Graph, hub: usize) -> Vec<usize> {
    (0..g.order()).filter(|&v| v != hub && g.neighbors(v) == [hub]).collect()
}

fn rest_of(g: &Graph, hub: usize, leaves: &[usize]) -> Vec<usize> {
    (0..g.order()).filter(|&v| v != hub && !leaves.contains(&v)).collect()
}

/// The structure with `hub` as centre, if the remaining vertices split into
/// valid blocks.
pub fn detect_star(g: &Graph, hub: usize) -> Option<StarStructure> {
    if hub >= g.order() {
        return None;
    }
    let leaves = leaves_of(g, hub);
    let rest = rest_of(g, hub, &leaves);
    if rest.is_empty() {
        return None;
    }
    let sub = g.induced(&rest).ok()?;
    let blocks: Vec<Vec<usize>> =
        sub.components().into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()).collect();
    let s = StarStructure { hub, p: blocks.len(), m: leaves.len(), blocks, leaves };
    s.holds_in(g).then_some(s)
}

/// Single-block rule: all non-leaf, non-hub vertices form one block `B` of
/// order `n1`, which only needs some edge to the hub.
fn single_block(g: &Graph, hub: usize) -> Option<(usize, usize)> {
    let leaves = leaves_of(g, hub);
    let rest = rest_of(g, hub, &leaves);
    if rest.is_empty() || !rest.iter().any(|&v| g.has_edge(v, hub)) {
        return None;
    }
    Some((rest.len(), leaves.len()))
}

fn general_upper(n: usize, m: usize, p: usize, t: usize) -> usize {
    2 * (n - m - p - 1) / (t + 1) + 1
}

fn search(g: &Graph, distinct: Option<usize>) -> BoundResult {
    let n = g.order();
    let mut best = default_bound(g);
    if g.edge_count() == 0 {
        return best;
    }
    let mut consider = |upper: usize, p: Provenance| {
        if upper < best.upper {
            best = BoundResult::new(1, upper, p);
        }
    };
    for hub in 0..n {
        if let Some((n1, m)) = single_block(g, hub) {
            let p = Provenance::new("star_single_block", SINGLE_BLOCK).with("hub", hub).with("n1", n1).with("m", m);
            consider(n1.div_ceil(2), p);
        }
        let Some(s) = detect_star(g, hub) else { continue };
        // A leaf and any third vertex are joined by a unique path of length 2,
        // which forces at least three distinct eigenvalues.
        let t = match distinct {
            Some(t) => t,
            None if s.m >= 1 => 3,
            None => continue,
        };
        let p = Provenance::new("star_general", GENERAL)
            .with("hub", hub)
            .with("p", s.p)
            .with("m", s.m)
            .with("t", t)
            .with("n", n);
        consider(general_upper(n, s.m, s.p, t), p);
    }
    best
}

/// Best star-shape bound over all hubs. The general form uses `t = 3`, which
/// holds whenever the hub has a leaf; hubs without leaves only use the
/// single-block rule. Returns the default bound when no shape fits.
pub fn star_bound(g: &Graph) -> BoundResult {
    search(g, None)
}

/// As [`star_bound`] with a caller-asserted minimum number `t` of distinct
/// eigenvalues over `S(G)`, applied to every detected shape.
pub fn star_bound_with_distinct(g: &Graph, t: usize) -> BoundResult {
    search(g, Some(t.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hub_block_leaves(block: &Graph, leaves: usize, hub_links: &[usize]) -> Graph {
        let b = block.order();
        let mut edges: Vec<(usize, usize)> = block.edges().map(|(u, v)| (u + 1, v + 1)).collect();
        edges.extend(hub_links.iter().map(|&v| (0, v + 1)));
        edges.extend((0..leaves).map(|l| (0, b + 1 + l)));
        Graph::new(1 + b + leaves, edges).unwrap()
    }

    #[test]
    fn triangle_with_pendants() {
        let g = hub_block_leaves(&Graph::complete(2), 7, &[0, 1]);
        assert_eq!(g.order(), 10);
        let b = star_bound(&g);
        assert_eq!(b.upper, 1);
        let s = detect_star(&g, 0).unwrap();
        assert_eq!((s.p, s.m), (1, 7));
        assert!(s.holds_in(&g));
    }

    #[test]
    fn k3_block_with_four_leaves() {
        let g = hub_block_leaves(&Graph::complete(3), 4, &[0, 1, 2]);
        assert_eq!(star_bound(&g).upper, 2);
    }

    #[test]
    fn no_shape_gives_default() {
        let c5 = Graph::cycle(5);
        let b = star_bound(&c5);
        assert_eq!(b.upper, 2);
        assert_eq!(b.provenance[0].rule, "default");
        // A star has no block at all.
        let star = Graph::complete_bipartite(1, 5);
        assert_eq!(star_bound(&star).provenance[0].rule, "default");
    }

    #[test]
    fn several_blocks() {
        // Hub 0, blocks {1,2} and {3,4,5} (a path), leaves 6 and 7.
        let g = Graph::new(8, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (0, 6), (0, 7)]).unwrap();
        let s = detect_star(&g, 0).unwrap();
        assert_eq!((s.p, s.m), (2, 2));
        // ⌊2(8 - 2 - 2 - 1)/4⌋ + 1 = 2
        assert_eq!(star_bound(&g).upper, 2);
        assert_eq!(star_bound_with_distinct(&g, 2).upper, 3);
    }

    #[test]
    fn tampered_structure_is_rejected() {
        let g = hub_block_leaves(&Graph::complete(3), 2, &[0]);
        let mut s = detect_star(&g, 0).unwrap();
        assert!(s.holds_in(&g));
        s.leaves.push(s.blocks[0].pop().unwrap());
        assert!(!s.holds_in(&g));
    }
}
