//! Prescribed spectra on complete and complete bipartite graphs.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::eiglab::{complement_basis, random_orthogonal, Certificate, SpectrumSpec, SymMatrix, CLUSTER_TOL};
use crate::error::{MmError, Result};
use crate::graph::{clears_margin, Graph};
use crate::seed;

/// Requested zero/nonzero pattern for one eigenvector of `value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigvecRequest {
    pub value: f64,
    /// `true` where the eigenvector must be nonzero.
    pub pattern: Vec<bool>,
}

/// Seeded unit vector with the given support: magnitudes in `[0.5, 1.5]`,
/// random signs, zeros off the support.
fn patterned_unit(pattern: &[bool], seed: u64) -> Vec<f64> {
    let mut rng = seed::rng(seed);
    let mut u: Vec<f64> = pattern
        .iter()
        .map(|&on| {
            let mag: f64 = rng.random_range(0.5..1.5);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            if on { sign * mag } else { 0.0 }
        })
        .collect();
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    u.iter_mut().for_each(|x| *x /= norm);
    u
}

/// Matrix in `S(K_n)` with eigenvalues `values` (ascending, repeated) and a unit
/// eigenvector for `lambda` supported on `pattern`. Returns the matrix and
/// that eigenvector. `n = 1` is accepted and returns `(values[0])`.
pub(crate) fn complete_tagged(
    values: &[f64],
    lambda: f64,
    pattern: Option<&[bool]>,
    seed: u64,
) -> Result<(SymMatrix, Vec<f64>)> {
    let n = values.len();
    let pos = (0..n)
        .min_by(|&i, &j| (values[i] - lambda).abs().total_cmp(&(values[j] - lambda).abs()))
        .filter(|&i| (values[i] - lambda).abs() <= 1e-6 * lambda.abs().max(1.0))
        .ok_or_else(|| MmError::precondition(format!("{lambda} is not a target eigenvalue")))?;
    if n == 1 {
        return Ok((SymMatrix::from_diagonal(values)?, vec![1.0]));
    }
    if values.iter().all(|&v| (v - values[0]).abs() <= 1e-6 * values[0].abs().max(1.0)) {
        return Err(MmError::Infeasible(
            "a single distinct eigenvalue forces a scalar matrix, which has no edges".into(),
        ));
    }
    let full = vec![true; n];
    let pattern = pattern.unwrap_or(&full);
    if pattern.len() != n {
        return Err(MmError::DimensionMismatch { expected: n, found: pattern.len() });
    }
    if pattern.iter().filter(|&&b| b).count() < 2 {
        return Err(MmError::precondition("eigenvector pattern needs at least two nonzero entries"));
    }
    let rest: Vec<f64> = values.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &v)| v).collect();
    let g = Graph::complete(n);
    let mut tried = Vec::new();
    for s in seed::attempts(seed) {
        tried.push(s);
        let u = patterned_unit(pattern, seed::derive_labeled(s, "u"));
        let w = complement_basis(&u, seed::derive_labeled(s, "w"));
        let uv = DVector::from_column_slice(&u);
        let a = &uv * uv.transpose() * values[pos] + &w * DMatrix::from_diagonal(&DVector::from_vec(rest.clone())) * w.transpose();
        let a = SymMatrix::from_lower(a)?;
        if clears_margin(&a, &g) {
            return Ok((a, u));
        }
    }
    Err(MmError::GenericPosition { stage: "complete_graph_matrix".into(), seeds: tried })
}

/// Certificate on `K_n` realizing `spec`. With a request, some eigenvector of
/// `request.value` is zero exactly off `request.pattern`; without one, the
/// lowest target value gets an eigenvector with no zero entries.
pub fn complete_graph_matrix(spec: &SpectrumSpec, request: Option<&EigvecRequest>, seed: u64) -> Result<Certificate> {
    let values = spec
        .expanded()
        .ok_or_else(|| MmError::validation("complete_graph_matrix needs fixed target values"))?;
    let n = values.len();
    if n < 2 {
        return Err(MmError::validation("complete_graph_matrix needs n >= 2"));
    }
    let lambda = request.map_or(values[0], |r| r.value);
    let (a, _) = complete_tagged(&values, lambda, request.map(|r| r.pattern.as_slice()), seed)?;
    Certificate::assemble(Graph::complete(n), a, spec.clone(), seed, vec!["complete_graph_matrix".into()])
}

/// Witness for `Mm(K_n) = ⌊n/2⌋`: eigenvalues `0` and `1` split as evenly as possible.
pub fn complete_witness(n: usize, seed: u64) -> Result<Certificate> {
    if n < 2 {
        return Err(MmError::validation("complete_witness needs n >= 2"));
    }
    let spec = SpectrumSpec::new(&[(0.0, n.div_ceil(2)), (1.0, n / 2)])?;
    complete_graph_matrix(&spec, None, seed)
}

/// `[[0, B], [Bᵀ, 0]]` on `K_{m,n}` with `B = U [diag(λ) 0] Vᵀ` for seeded
/// orthogonal `U`, `V`. The spectrum is `±λ_i` together with `n - m` zeros.
pub fn bipartite_matrix(m: usize, n: usize, lambdas: &[f64], seed: u64) -> Result<Certificate> {
    if m == 0 || m > n {
        return Err(MmError::validation(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if lambdas.len() != m {
        return Err(MmError::DimensionMismatch { expected: m, found: lambdas.len() });
    }
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(MmError::NonFinite);
    }
    if !(lambdas[0] > 0.0) || lambdas.iter().any(|&l| l < 0.0) {
        return Err(MmError::precondition("need lambda_1 > 0 and lambda_i >= 0"));
    }
    let g = Graph::complete_bipartite(m, n);
    let mut values: Vec<f64> = lambdas.iter().flat_map(|&l| [l, -l]).collect();
    values.extend(std::iter::repeat_n(0.0, n - m));
    values.sort_by(f64::total_cmp);
    let target = SpectrumSpec::from_values(&values, CLUSTER_TOL)?;
    let mut tried = Vec::new();
    for s in seed::attempts(seed) {
        tried.push(s);
        let u = random_orthogonal(m, seed::derive_labeled(s, "u")).into_matrix();
        let v = random_orthogonal(n, seed::derive_labeled(s, "v")).into_matrix();
        let d = DMatrix::from_fn(m, n, |i, j| if i == j { lambdas[i] } else { 0.0 });
        let b = u * d * v.transpose();
        let mut full = DMatrix::zeros(m + n, m + n);
        full.view_mut((m, 0), (n, m)).copy_from(&b.transpose());
        let a = SymMatrix::from_lower(full)?;
        if clears_margin(&a, &g) {
            let trace = vec!["bipartite_matrix".into()];
            return Certificate::assemble(g, a, target, seed, trace);
        }
    }
    Err(MmError::GenericPosition { stage: "bipartite_matrix".into(), seeds: tried })
}

/// Moves a certificate built on `K_{second,first}` (smaller side first) to the
/// vertex order of `K_{first,second}`. A no-op when `first <= second`.
pub fn reorient_bipartite(c: Certificate, first: usize, second: usize) -> Result<Certificate> {
    if first <= second {
        return Ok(c);
    }
    let perm: Vec<usize> = (0..first + second).map(|i| if i < first { second + i } else { i - first }).collect();
    let graph = c.graph.permuted(&perm)?;
    let matrix = c.matrix.permuted(&perm)?;
    Certificate::assemble(graph, matrix, c.target, c.seed, c.trace)
}

/// Witness for the minimal multiplicity on `K_{m,n}` (`m <= n`): all `λ_i = 1`
/// when `m = n`, otherwise `s = ⌊(m+n)/3⌋` ones and `m - s` zeros, which needs
/// `s <= m`.
pub fn bipartite_witness(m: usize, n: usize, seed: u64) -> Result<Certificate> {
    if m == 0 || m > n {
        return Err(MmError::validation(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    let ones = if m == n { m } else { (m + n) / 3 };
    if ones > m || ones == 0 {
        return Err(MmError::Infeasible(format!(
            "K_{{{m},{n}}}: {ones} copies of ±1 do not fit in {m} singular values"
        )));
    }
    let lambdas: Vec<f64> = (0..m).map(|i| if i < ones { 1.0 } else { 0.0 }).collect();
    bipartite_matrix(m, n, &lambdas, seed)
}
