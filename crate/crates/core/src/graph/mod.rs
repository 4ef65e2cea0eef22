//! Simple undirected graphs and the operations used to build pattern graphs.

mod census;
mod family;
mod io;
mod pattern;

pub use census::connected_graphs;
pub(crate) use family::check_antisymmetric;
pub use family::{family_graph, FamilyDescriptor};
pub use io::{parse_edge_list, parse_graph6, to_graph6};
pub use pattern::{
    clears_margin, pattern_check, pattern_of, PatternReport, Requirement, Violation,
    CONSTRUCTION_MARGIN, DEFAULT_ZERO_THRESHOLD,
};

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{MmError, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, so adjacency is
/// symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = MmError;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combine {
    Union,
    Join,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Tensor,
    Strong,
}

impl Graph {
    /// Builds a graph, rejecting loops and out-of-range endpoints. Duplicate
    /// edges (in either orientation) collapse to one.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(MmError::validation("graph must have at least one vertex"));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(MmError::validation(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(MmError::validation(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        assert!(n > 0, "graph must have at least one vertex");
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.edges.insert((u - 1, u));
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = Graph::path(n);
        g.edges.insert((0, n - 1));
        g
    }

    /// `K_{m,n}` with the `m` side on vertices `0..m`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Graph::empty(m + n);
        for u in 0..m {
            for v in m..m + n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if adj[u][v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut edges = Vec::new();
        for (a, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(MmError::validation(format!("vertex {u} out of range")));
            }
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(vertices.len(), edges)
    }

    /// Relabels vertex `perm[i]` of `self` as vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(MmError::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.n || inverse[p] != usize::MAX {
                return Err(MmError::validation("not a permutation"));
            }
            inverse[p] = i;
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (inverse[u], inverse[v])))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.edges.contains(&(u, v)) {
                    g.edges.insert((u, v));
                }
            }
        }
        g
    }

    /// Disjoint union or join; vertices of `other` follow those of `self`.
    pub fn combine(&self, other: &Graph, kind: Combine) -> Graph {
        let off = self.n;
        let mut g = Graph::empty(self.n + other.n);
        g.edges.extend(self.edges.iter().copied());
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        if kind == Combine::Join {
            for u in 0..self.n {
                for v in 0..other.n {
                    g.edges.insert((u, v + off));
                }
            }
        }
        g
    }

    pub fn union(&self, other: &Graph) -> Graph {
        self.combine(other, Combine::Union)
    }

    pub fn join(&self, other: &Graph) -> Graph {
        self.combine(other, Combine::Join)
    }

    /// Graph product; vertex `(i, k)` gets index `i * other.order() + k`.
    pub fn product(&self, other: &Graph, kind: ProductKind) -> Graph {
        let m = other.n;
        let mut g = Graph::empty(self.n * m);
        for i in 0..self.n {
            for k in 0..m {
                for j in 0..self.n {
                    for l in 0..m {
                        let (a, b) = (i * m + k, j * m + l);
                        if a >= b {
                            continue;
                        }
                        let cart = (i == j && other.has_edge(k, l))
                            || (k == l && self.has_edge(i, j));
                        let tensor = self.has_edge(i, j) && other.has_edge(k, l);
                        let edge = match kind {
                            ProductKind::Cartesian => cart,
                            ProductKind::Tensor => tensor,
                            ProductKind::Strong => cart || tensor,
                        };
                        if edge {
                            g.edges.insert((a, b));
                        }
                    }
                }
            }
        }
        g
    }

    /// Adds a pendant vertex `n + i` to every vertex `i`.
    pub fn corona(&self) -> Graph {
        let mut g = Graph::empty(2 * self.n);
        g.edges.extend(self.edges.iter().copied());
        for i in 0..self.n {
            g.edges.insert((i, self.n + i));
        }
        g
    }

    /// Upper-triangle adjacency bits, row-major; used for canonical forms of tiny graphs.
    pub(crate) fn bits(&self) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.edges.contains(&(u, v)) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }
}
