use serde::{Deserialize, Serialize};

use super::{Graph, ProductKind};
use crate::error::{MmError, Result};

/// Named graph families with known vertex orderings.
///
/// Serialized externally tagged, e.g. `{"CompleteBipartite":[3,3]}` or
/// `{"ComplementForm":{"p0":1,"pairs":[[1,1]],"r":0}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FamilyDescriptor {
    Complete(usize),
    /// `m` side on vertices `0..m`, `n` side after it.
    CompleteBipartite(usize, usize),
    /// Built as `K2 □ Q_{s-1}`, so the first half of the vertices is one copy of
    /// `Q_{s-1}` and the second half the other.
    Hypercube(u32),
    Path(usize),
    /// `((K_{p0,0} ∪ K_{p1,q1} ∪ ... ∪ K_{pk,qk}) ∨ K_r)^c`.
    ///
    /// Vertex order: the `p0` block, then for each pair its `p_i` vertices followed
    /// by its `q_i` vertices, then the `r` vertices that end up isolated.
    ComplementForm { p0: usize, pairs: Vec<(usize, usize)>, r: usize },
    /// Base vertices first, then pendant `n + i` attached to base vertex `i`.
    Corona(Box<FamilyDescriptor>),
    /// Two paths `0..n` and `n..2n` with rung `(j, n + j)` wherever `d_j != 0`.
    ParallelPaths(usize, Vec<f64>),
    Custom(Graph),
}

impl FamilyDescriptor {
    pub fn validate(&self) -> Result<()> {
        use FamilyDescriptor::*;
        match self {
            Complete(n) | Path(n) if *n == 0 => Err(MmError::validation("family needs n >= 1")),
            CompleteBipartite(m, n) if *m == 0 || *n == 0 => {
                Err(MmError::validation("complete bipartite sides must be nonempty"))
            }
            Hypercube(s) if *s > 16 => Err(MmError::validation("hypercube dimension above 16")),
            ComplementForm { p0, pairs, r } => {
                if pairs.iter().any(|&(p, q)| p == 0 || q == 0) {
                    return Err(MmError::validation("complement-form pairs need p_i, q_i >= 1"));
                }
                if p0 + r + pairs.len() == 0 {
                    return Err(MmError::validation("complement form has no vertices"));
                }
                Ok(())
            }
            Corona(base) => base.validate(),
            ParallelPaths(n, d) => {
                if *n == 0 || d.len() != *n {
                    return Err(MmError::validation(format!(
                        "parallel paths need n >= 1 and {n} coupling values, got {}",
                        d.len()
                    )));
                }
                if d.iter().any(|x| !x.is_finite()) {
                    return Err(MmError::NonFinite);
                }
                check_antisymmetric(d)
            }
            _ => Ok(()),
        }
    }

    /// Vertex count without building the graph.
    pub fn order(&self) -> usize {
        use FamilyDescriptor::*;
        match self {
            Complete(n) | Path(n) => *n,
            CompleteBipartite(m, n) => m + n,
            Hypercube(s) => 1 << s,
            ComplementForm { p0, pairs, r } => {
                p0 + r + pairs.iter().map(|(p, q)| p + q).sum::<usize>()
            }
            Corona(base) => 2 * base.order(),
            ParallelPaths(n, _) => 2 * n,
            Custom(g) => g.order(),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        family_graph(self)
    }
}

/// `d_j = -d_{n-1-j}` up to 1e-12 absolute.
pub(crate) fn check_antisymmetric(d: &[f64]) -> Result<()> {
    let n = d.len();
    for j in 0..n.div_ceil(2) {
        if (d[j] + d[n - 1 - j]).abs() > 1e-12 {
            return Err(MmError::validation(format!(
                "coupling values must satisfy d[{j}] = -d[{}]",
                n - 1 - j
            )));
        }
    }
    Ok(())
}

pub fn family_graph(desc: &FamilyDescriptor) -> Result<Graph> {
    use FamilyDescriptor::*;
    desc.validate()?;
    Ok(match desc {
        Complete(n) => Graph::complete(*n),
        CompleteBipartite(m, n) => Graph::complete_bipartite(*m, *n),
        Hypercube(s) => {
            let mut g = Graph::empty(1);
            for _ in 0..*s {
                g = Graph::complete(2).product(&g, ProductKind::Cartesian);
            }
            g
        }
        Path(n) => Graph::path(*n),
        ComplementForm { p0, pairs, r } => {
            let mut parts: Vec<Graph> = Vec::new();
            if *p0 > 0 {
                parts.push(Graph::empty(*p0));
            }
            parts.extend(pairs.iter().map(|&(p, q)| Graph::complete_bipartite(p, q)));
            let mut c = match parts.split_first() {
                Some((first, rest)) => rest.iter().fold(first.clone(), |acc, g| acc.union(g)),
                None => Graph::complete(*r),
            };
            if !parts.is_empty() && *r > 0 {
                c = c.join(&Graph::complete(*r));
            }
            c.complement()
        }
        Corona(base) => family_graph(base)?.corona(),
        ParallelPaths(n, d) => {
            let mut edges = Vec::new();
            for j in 1..*n {
                edges.push((j - 1, j));
                edges.push((n + j - 1, n + j));
            }
            for (j, &x) in d.iter().enumerate() {
                if x != 0.0 {
                    edges.push((j, n + j));
                }
            }
            Graph::new(2 * n, edges)?
        }
        Custom(g) => g.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hypercube_two_is_c4() {
        let q2 = family_graph(&FamilyDescriptor::Hypercube(2)).unwrap();
        assert_eq!(q2.edge_count(), 4);
        assert!((0..4).all(|v| q2.degree(v) == 2));
        assert!(q2.is_connected());
        let q3 = family_graph(&FamilyDescriptor::Hypercube(3)).unwrap();
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
    }

    #[test]
    fn complement_form_single_pair_is_two_cliques() {
        let d = FamilyDescriptor::ComplementForm { p0: 0, pairs: vec![(2, 3)], r: 0 };
        let g = family_graph(&d).unwrap();
        assert_eq!(g, Graph::complete(2).union(&Graph::complete(3)));
    }

    #[test]
    fn complement_form_r_vertices_are_isolated() {
        let d = FamilyDescriptor::ComplementForm { p0: 1, pairs: vec![(1, 1)], r: 2 };
        let g = family_graph(&d).unwrap();
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.degree(4), 0);
        // (K1 ∪ K11)^c on the first three vertices: 0 adjacent to 1 and 2, 1 and 2 not adjacent
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && !g.has_edge(1, 2));
    }

    #[test]
    fn corona_of_k2() {
        let g = family_graph(&FamilyDescriptor::Corona(Box::new(FamilyDescriptor::Complete(2))))
            .unwrap();
        assert_eq!(g, Graph::new(4, [(0, 1), (0, 2), (1, 3)]).unwrap());
    }

    #[test]
    fn parallel_paths_validation() {
        let ok = FamilyDescriptor::ParallelPaths(3, vec![1.0, 0.0, -1.0]);
        let g = family_graph(&ok).unwrap();
        assert_eq!(g.edge_count(), 4 + 2);
        let bad = FamilyDescriptor::ParallelPaths(2, vec![1.0, 1.0]);
        assert!(family_graph(&bad).is_err());
    }

    #[test]
    fn serde_shapes() {
        let d: FamilyDescriptor = serde_json::from_str(r#"{"CompleteBipartite":[3,3]}"#).unwrap();
        assert_eq!(d, FamilyDescriptor::CompleteBipartite(3, 3));
        let c: FamilyDescriptor =
            serde_json::from_str(r#"{"ComplementForm":{"p0":1,"pairs":[[1,1]],"r":0}}"#).unwrap();
        assert_eq!(c.order(), 3);
    }

    proptest! {
        #[test]
        fn complement_form_order(p0 in 0usize..3, pairs in proptest::collection::vec((1usize..3, 1usize..3), 0..3), r in 0usize..3) {
            let d = FamilyDescriptor::ComplementForm { p0, pairs: pairs.clone(), r };
            prop_assume!(d.validate().is_ok());
            let g = family_graph(&d).unwrap();
            prop_assert_eq!(g.order(), p0 + r + pairs.iter().map(|(p, q)| p + q).sum::<usize>());
            prop_assert_eq!(g.order(), d.order());
        }
    }
}
