//! Constructions that build a matrix for a larger graph from matrices for
//! smaller ones.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::eiglab::{cluster_spectrum, eigh, Certificate, SpectrumSpec, SymMatrix, CLUSTER_TOL};
use crate::error::{MmError, Result};
use crate::graph::{
    check_antisymmetric, clears_margin, family_graph, pattern_of, FamilyDescriptor, Graph, ProductKind,
    DEFAULT_ZERO_THRESHOLD,
};
use crate::seed;

fn blocks(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<SymMatrix> {
    let n = a.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((n, 0), (n, n)).copy_from(b);
    m.view_mut((n, n), (n, n)).copy_from(c);
    SymMatrix::from_lower(m)
}

/// Seeded member of `S(g)`: diagonal in `[-1, 1]`, edge entries `±[0.5, 1.5]`.
fn random_member(g: &Graph, seed: u64) -> SymMatrix {
    let mut rng = seed::rng(seed);
    let n = g.order();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rng.random_range(-1.0..1.0);
    }
    for (u, v) in g.edges() {
        let mag: f64 = rng.random_range(0.5..1.5);
        m[(v, u)] = if rng.random_bool(0.5) { mag } else { -mag };
    }
    SymMatrix::from_lower(m).expect("finite entries")
}

/// `Q = [[M, N], [N, -M]]` on `G ∨ G` with `M ∈ S(G)` scaled into `(0, I)` and
/// `N = sqrt(I - M²)`. `Q² = I` and `trace Q = 0`, so `±1` each have
/// multiplicity `|G|`.
pub fn join_self_matrix(g: &Graph, seed: u64) -> Result<Certificate> {
    if !g.is_connected() {
        return Err(MmError::precondition("join_self_matrix needs a connected graph"));
    }
    let n = g.order();
    let target_graph = g.join(g);
    let mut tried = Vec::new();
    for s in seed::attempts(seed) {
        tried.push(s);
        let m0 = random_member(g, s);
        let e = eigh(&m0)?;
        let (lo, hi) = (e.values[0], e.values[n - 1]);
        // affine map of the spectrum onto [0.1, 0.9]; a scalar matrix goes to 0.5
        let (scale, shift) = if hi - lo > 1e-12 { (0.8 / (hi - lo), 0.1 - 0.8 * lo / (hi - lo)) } else { (0.0, 0.5) };
        let m = m0.affine(scale, shift);
        let q = e.vectors.as_matrix();
        let roots = DVector::from_iterator(n, e.values.iter().map(|x| {
            let mu = scale * x + shift;
            (1.0 - mu * mu).sqrt()
        }));
        let nmat = q * DMatrix::from_diagonal(&roots) * q.transpose();
        let out = blocks(m.as_matrix(), &nmat, &(-m.as_matrix()))?;
        if clears_margin(&out, &target_graph) {
            let target = SpectrumSpec::new(&[(-1.0, n), (1.0, n)])?;
            return Certificate::assemble(target_graph, out, target, seed, vec!["join_self_matrix".into()]);
        }
    }
    Err(MmError::GenericPosition { stage: "join_self_matrix".into(), seeds: tried })
}

/// `B = [[A, I], [I, -A]]`, which satisfies `B² = 2I` when `A² = I`.
/// Vertex `(k, i)` of `K₂ □ G` sits at index `k n + i`.
pub fn cartesian_k2_lift(a: &SymMatrix) -> Result<SymMatrix> {
    let n = a.n();
    let sq = a.as_matrix() * a.as_matrix() - DMatrix::<f64>::identity(n, n);
    if sq.amax() > 1e-8 {
        return Err(MmError::precondition(format!("A² differs from I by {:e}", sq.amax())));
    }
    blocks(a.as_matrix(), &DMatrix::identity(n, n), &(-a.as_matrix()))
}

/// Matrix on the hypercube `Q_s` with eigenvalues `±1`, each of multiplicity
/// `2^(s-1)`: iterated [`cartesian_k2_lift`] rescaled by `1/√2`.
pub fn hypercube_matrix(s: u32) -> Result<Certificate> {
    if s == 0 || s > 12 {
        return Err(MmError::validation("hypercube dimension must be in 1..=12"));
    }
    let mut a = SymMatrix::identity(1);
    let mut trace = Vec::new();
    for _ in 0..s {
        a = cartesian_k2_lift(&a)?.affine(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        trace.push("cartesian_k2_lift".to_string());
    }
    let half = 1usize << (s - 1);
    let target = SpectrumSpec::new(&[(-1.0, half), (1.0, half)])?;
    let g = family_graph(&FamilyDescriptor::Hypercube(s))?;
    Certificate::assemble(g, a, target, 0, trace)
}

/// `B = [[A, I], [I, 0]]` on the corona of the graph of `A`. Each eigenvalue
/// `λ` of `A` becomes the two roots of `μ² - λμ - 1`.
pub fn corona_lift(a: &SymMatrix) -> SymMatrix {
    let n = a.n();
    blocks(a.as_matrix(), &DMatrix::identity(n, n), &DMatrix::zeros(n, n)).expect("finite blocks")
}

fn two_values(a: &SymMatrix, x: f64, y: f64) -> Result<()> {
    let tol = 1e-6 * x.abs().max(y.abs()).max(1.0);
    if (x - y).abs() <= tol {
        return Err(MmError::precondition("the two eigenvalues must differ"));
    }
    let e = eigh(a)?;
    if let Some(v) = e.values.iter().find(|v| (*v - x).abs() > tol && (*v - y).abs() > tol) {
        return Err(MmError::precondition(format!("eigenvalue {v} is neither {x} nor {y}")));
    }
    Ok(())
}

/// `A ⊕ f(B)` where the affine `f` sends `μ1 ↦ λ1` and `μ2 ↦ λ2`.
pub fn union_align(a: &SymMatrix, l1: f64, l2: f64, b: &SymMatrix, m1: f64, m2: f64) -> Result<SymMatrix> {
    two_values(a, l1, l2)?;
    two_values(b, m1, m2)?;
    let scale = (l1 - l2) / (m1 - m2);
    let shift = (m1 * l2 - m2 * l1) / (l1 - l2);
    Ok(a.direct_sum(&b.affine(1.0, shift).affine(scale, 0.0)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductOutcome {
    pub matrix: SymMatrix,
    /// Spectrum predicted from the factor spectra.
    pub spectrum: SpectrumSpec,
    /// `b` was replaced by `scale * b + shift * I` before combining.
    pub scale: f64,
    pub shift: f64,
    pub trace: Vec<String>,
}

fn combine(x: f64, y: f64, kind: ProductKind) -> f64 {
    match kind {
        ProductKind::Cartesian => x + y,
        ProductKind::Tensor => x * y,
        ProductKind::Strong => x + y + x * y,
    }
}

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// Two combined eigenvalues from different pairs of factor clusters that land
/// within `1e-5` relative of each other.
fn has_collision(ca: &[(f64, usize)], cb: &[(f64, usize)], kind: ProductKind) -> bool {
    let mut vals: Vec<f64> = ca.iter().flat_map(|a| cb.iter().map(move |b| combine(a.0, b.0, kind))).collect();
    vals.sort_by(f64::total_cmp);
    vals.windows(2).any(|w| w[1] - w[0] <= 1e-5 * w[0].abs().max(w[1].abs()).max(1.0))
}

/// Cartesian `A⊗I + I⊗B'`, tensor `A⊗B'` or strong (the sum of both) with
/// `B' = s B + c I`. `(s, c)` is seeded; the tensor product keeps `c = 0` and
/// needs both factors to have zero diagonal.
/// Vertex `(i, k)` sits at index `i |B| + k`.
pub fn product_matrix(a: &SymMatrix, b: &SymMatrix, kind: ProductKind, seed: u64) -> Result<ProductOutcome> {
    let (n, m) = (a.n(), b.n());
    if kind == ProductKind::Tensor {
        let cut = DEFAULT_ZERO_THRESHOLD * a.max_abs().max(b.max_abs()).max(1.0);
        if a.diagonal().iter().chain(b.diagonal().iter()).any(|d| d.abs() >= cut) {
            return Err(MmError::precondition(
                "a tensor product stays in the product pattern only for zero-diagonal factors",
            ));
        }
    }
    let ga = pattern_of(a, DEFAULT_ZERO_THRESHOLD);
    let gb = pattern_of(b, DEFAULT_ZERO_THRESHOLD);
    let target_graph = ga.product(&gb, kind);
    let ea = eigh(a)?.values;
    let eb = eigh(b)?.values;
    let ca: Vec<(f64, usize)> = cluster_spectrum(&ea, CLUSTER_TOL).iter().map(|c| (c.value, c.multiplicity)).collect();
    let (ia, ib) = (DMatrix::<f64>::identity(n, n), DMatrix::<f64>::identity(m, m));

    let mut tried = Vec::new();
    let mut fallback = None;
    for s in seed::attempts(seed) {
        tried.push(s);
        let mut rng = seed::rng(s);
        let mag: f64 = rng.random_range(0.5..2.0);
        let scale = if rng.random_bool(0.5) { mag } else { -mag };
        let shift = if kind == ProductKind::Tensor { 0.0 } else { rng.random_range(-1.0..1.0) };
        let bp = b.affine(scale, shift);
        let (am, bm) = (a.as_matrix(), bp.as_matrix());
        let p = match kind {
            ProductKind::Cartesian => kron(am, &ib) + kron(&ia, bm),
            ProductKind::Tensor => kron(am, bm),
            ProductKind::Strong => kron(am, &ib) + kron(&ia, bm) + kron(am, bm),
        };
        let matrix = SymMatrix::from_lower(p)?;
        if !clears_margin(&matrix, &target_graph) {
            continue;
        }
        let ebs: Vec<f64> = eb.iter().map(|x| scale * x + shift).collect();
        let mut sorted = ebs.clone();
        sorted.sort_by(f64::total_cmp);
        let cb: Vec<(f64, usize)> =
            cluster_spectrum(&sorted, CLUSTER_TOL).iter().map(|c| (c.value, c.multiplicity)).collect();
        let values: Vec<f64> = ea.iter().flat_map(|&x| ebs.iter().map(move |&y| combine(x, y, kind))).collect();
        let spectrum = SpectrumSpec::from_values(&values, CLUSTER_TOL)?;
        let name = format!("product_matrix:{kind:?}").to_lowercase();
        if !has_collision(&ca, &cb, kind) {
            return Ok(ProductOutcome { matrix, spectrum, scale, shift, trace: vec![name] });
        }
        if fallback.is_none() {
            let trace = vec![name, "eigenvalue collision accepted".into()];
            fallback = Some(ProductOutcome { matrix, spectrum, scale, shift, trace });
        }
    }
    fallback.ok_or(MmError::GenericPosition { stage: "product_matrix".into(), seeds: tried })
}

/// Product of two certificates on the product of their graphs.
pub fn product_certificate(a: &Certificate, b: &Certificate, kind: ProductKind, seed: u64) -> Result<Certificate> {
    if pattern_of(&a.matrix, DEFAULT_ZERO_THRESHOLD) != a.graph || pattern_of(&b.matrix, DEFAULT_ZERO_THRESHOLD) != b.graph {
        return Err(MmError::precondition("factor matrices must match their graphs"));
    }
    let out = product_matrix(&a.matrix, &b.matrix, kind, seed)?;
    let mut trace = a.trace.clone();
    trace.extend(b.trace.iter().cloned());
    trace.extend(out.trace);
    Certificate::assemble(a.graph.product(&b.graph, kind), out.matrix, out.spectrum, seed, trace)
}

fn tridiagonal_ones(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) <= 1 { 1.0 } else { 0.0 })
}

/// `[[T, D], [D, T]]` with `T` the all-ones tridiagonal matrix and `D = diag(d)`;
/// requires `d_j = -d_{n+1-j}`.
pub fn parallel_paths_matrix(n: usize, d: &[f64]) -> Result<SymMatrix> {
    if n == 0 || d.len() != n {
        return Err(MmError::DimensionMismatch { expected: n, found: d.len() });
    }
    check_antisymmetric(d)?;
    let t = tridiagonal_ones(n);
    blocks(&t, &DMatrix::from_diagonal(&DVector::from_column_slice(d)), &t)
}

/// Certificate for [`parallel_paths_matrix`]. The target is computed separately
/// from `T + D` and `T - D`, whose spectra coincide.
pub fn parallel_paths_certificate(n: usize, d: &[f64]) -> Result<Certificate> {
    let a = parallel_paths_matrix(n, d)?;
    let t = tridiagonal_ones(n);
    let dm = DMatrix::from_diagonal(&DVector::from_column_slice(d));
    let plus = eigh(&SymMatrix::from_lower(&t + &dm)?)?.values;
    let minus = eigh(&SymMatrix::from_lower(&t - &dm)?)?.values;
    let mut values = plus;
    values.extend(minus);
    let target = SpectrumSpec::from_values(&values, CLUSTER_TOL)?;
    let g = family_graph(&FamilyDescriptor::ParallelPaths(n, d.to_vec()))?;
    Certificate::assemble(g, a, target, 0, vec!["parallel_paths_matrix".into()])
}
