use serde::{Deserialize, Serialize};

use super::{cluster_spectrum, eigen_report, Cluster, EigenReport, SpectrumSpec, SymMatrix, CLUSTER_TOL};
use crate::error::Result;
use crate::graph::{pattern_check, Graph, PatternReport, DEFAULT_ZERO_THRESHOLD};

/// Tolerances used when checking a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub cluster: f64,
    pub value: f64,
    pub zero_threshold: f64,
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cluster: CLUSTER_TOL, value: 1e-6, zero_threshold: DEFAULT_ZERO_THRESHOLD, residual: 1e-10 }
    }
}

/// A matrix in `S(graph)` together with the spectrum it is claimed to realize.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: Graph,
    pub matrix: SymMatrix,
    pub target: SpectrumSpec,
    pub eigen: EigenReport,
    pub pattern: PatternReport,
    pub seed: u64,
    pub trace: Vec<String>,
}

impl Certificate {
    /// Computes the eigen and pattern reports with default tolerances.
    pub fn assemble(
        graph: Graph,
        matrix: SymMatrix,
        target: SpectrumSpec,
        seed: u64,
        trace: Vec<String>,
    ) -> Result<Self> {
        let tol = Tolerances::default();
        let eigen = eigen_report(&matrix, tol.cluster)?;
        let pattern = pattern_check(&matrix, &graph, tol.zero_threshold)?;
        Ok(Certificate { graph, matrix, target, eigen, pattern, seed, trace })
    }

    pub fn verify(&self) -> Verification {
        verify_certificate(self)
    }

    pub fn min_multiplicity(&self) -> usize {
        self.eigen.min_multiplicity
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub diagnostics: Vec<String>,
    pub clusters: Vec<Cluster>,
    pub pattern: Option<PatternReport>,
}

pub fn verify_certificate(c: &Certificate) -> Verification {
    verify_certificate_with(c, &Tolerances::default())
}

/// Recomputes everything from the matrix; the stored reports are ignored.
pub fn verify_certificate_with(c: &Certificate, tol: &Tolerances) -> Verification {
    let mut diagnostics = Vec::new();
    let n = c.matrix.n();
    if c.graph.order() != n {
        diagnostics.push(format!("graph has {} vertices but matrix is {n}x{n}", c.graph.order()));
    }
    if c.target.dimension() != n {
        diagnostics.push(format!("target describes {} eigenvalues but matrix is {n}x{n}", c.target.dimension()));
    }
    if !diagnostics.is_empty() {
        return Verification { passed: false, diagnostics, clusters: Vec::new(), pattern: None };
    }

    let pattern = match pattern_check(&c.matrix, &c.graph, tol.zero_threshold) {
        Ok(p) => p,
        Err(e) => {
            return Verification { passed: false, diagnostics: vec![e.to_string()], clusters: Vec::new(), pattern: None }
        }
    };
    for v in pattern.violations.iter().take(10) {
        diagnostics.push(format!("pattern: entry ({}, {}) = {:e} should be {:?}", v.i, v.j, v.value, v.required));
    }
    if pattern.violations.len() > 10 {
        diagnostics.push(format!("pattern: {} more violations", pattern.violations.len() - 10));
    }

    let report = match eigen_report(&c.matrix, tol.cluster) {
        Ok(r) => r,
        Err(e) => {
            return Verification { passed: false, diagnostics: vec![e.to_string()], clusters: Vec::new(), pattern: Some(pattern) }
        }
    };
    if !(report.residual <= tol.residual) {
        diagnostics.push(format!("eigenpair residual {:e} above {:e}", report.residual, tol.residual));
    }
    diagnostics.extend(match_target(&report.clusters, &c.target, tol.value));

    let clusters = cluster_spectrum(&report.eigenvalues, tol.cluster);
    Verification { passed: diagnostics.is_empty(), diagnostics, clusters, pattern: Some(pattern) }
}

/// Fixed target values claim the cluster they match; the remaining clusters must
/// carry exactly the free multiplicities.
fn match_target(clusters: &[Cluster], target: &SpectrumSpec, value_tol: f64) -> Vec<String> {
    let mut out = Vec::new();
    let mut used = vec![false; clusters.len()];
    let mut free = Vec::new();
    for item in target.items() {
        let Some(value) = item.value else {
            free.push(item.multiplicity);
            continue;
        };
        let hit = clusters
            .iter()
            .enumerate()
            .filter(|(k, c)| !used[*k] && (c.value - value).abs() <= value_tol * value.abs().max(1.0))
            .min_by(|a, b| (a.1.value - value).abs().total_cmp(&(b.1.value - value).abs()));
        match hit {
            Some((k, c)) => {
                used[k] = true;
                if c.multiplicity != item.multiplicity {
                    out.push(format!(
                        "cluster at {:.12} has multiplicity {}, target {}",
                        c.value, c.multiplicity, item.multiplicity
                    ));
                }
            }
            None => out.push(format!("no eigenvalue cluster near target value {value}")),
        }
    }
    let mut rest: Vec<usize> =
        clusters.iter().zip(&used).filter(|(_, u)| !**u).map(|(c, _)| c.multiplicity).collect();
    rest.sort_unstable();
    free.sort_unstable();
    if rest != free {
        let stray: Vec<String> = clusters
            .iter()
            .zip(&used)
            .filter(|(_, u)| !**u)
            .map(|(c, _)| format!("{:.12}x{}", c.value, c.multiplicity))
            .collect();
        out.push(format!(
            "unmatched clusters [{}] do not carry the free multiplicities {free:?}",
            stray.join(", ")
        ));
    }
    out
}
