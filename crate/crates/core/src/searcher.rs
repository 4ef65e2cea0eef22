//! Numerical search of `S(G)` for matrices with large minimal multiplicity.
//!
//! This is a lower-bound oracle. A target composition of `n` fixes which
//! consecutive eigenvalues (in ascending order) should coincide; the objective is
//! the within-group variance divided by the total variance, minimized by a
//! simplex descent followed by a compass polish. Success is judged only by
//! re-clustering the eigenvalues of the final matrix.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundResult;
use crate::eiglab::{eigh, eigen_report, Certificate, SpectrumSpec, SymMatrix, CLUSTER_TOL};
use crate::error::{MmError, Result};
use crate::graph::{clears_margin, Graph};
use crate::seed;

/// Smallest edge magnitude the parameterization can produce.
pub const EDGE_FLOOR: f64 = 0.1;
const EDGE_SPAN: f64 = 1.9;
const DIAG_SCALE: f64 = 3.0;
/// Orders above this are searched but flagged as slow and unreliable.
pub const SOFT_ORDER_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Multiplicities to aim for; all compositions of `n` are tried when absent.
    pub target_partition: Option<Vec<usize>>,
    pub restarts: usize,
    /// Objective evaluations per phase (simplex, then compass) of each restart.
    pub max_iterations: usize,
    pub initial_step: f64,
    pub shrink: f64,
    pub min_step: f64,
    pub seed: u64,
    pub cluster_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            target_partition: None,
            restarts: 8,
            max_iterations: 6000,
            initial_step: 0.5,
            shrink: 0.5,
            min_step: 1e-9,
            seed: seed::DEFAULT_SEED,
            cluster_tol: CLUSTER_TOL,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.restarts == 0 {
            return Err(MmError::validation("restarts must be at least 1"));
        }
        if !(self.initial_step > 0.0 && self.min_step > 0.0 && self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(MmError::validation("need initial_step, min_step > 0 and 0 < shrink < 1"));
        }
        if !(self.cluster_tol > 0.0) {
            return Err(MmError::validation("cluster_tol must be positive"));
        }
        if let Some(p) = &self.target_partition {
            if p.contains(&0) || p.iter().sum::<usize>() != n {
                return Err(MmError::validation(format!("partition {p:?} must have positive parts summing to {n}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub certificate: Certificate,
    /// Minimal multiplicity of the returned matrix.
    pub achieved: usize,
    /// The composition whose search produced the certificate.
    pub composition: Vec<usize>,
    pub objective: f64,
    pub restart: usize,
    pub warnings: Vec<String>,
}

struct Params<'a> {
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    signs: Vec<f64>,
}

impl Params<'_> {
    fn dim(&self) -> usize {
        self.g.order() + self.edges.len()
    }

    fn matrix(&self, x: &[f64]) -> SymMatrix {
        let n = self.g.order();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = DIAG_SCALE * x[i].tanh();
        }
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            let sigmoid = 1.0 / (1.0 + (-x[n + k]).exp());
            let w = self.signs[k] * (EDGE_FLOOR + EDGE_SPAN * sigmoid);
            m[(u, v)] = w;
            m[(v, u)] = w;
        }
        SymMatrix::from_lower(m).expect("finite parameters")
    }

    fn objective(&self, x: &[f64], composition: &[usize]) -> f64 {
        let Ok(e) = eigh(&self.matrix(x)) else { return f64::INFINITY };
        grouped_variance(&e.values, composition)
    }
}

/// Within-group sum of squares over total sum of squares, groups taken
/// consecutively from ascending `values`.
fn grouped_variance(values: &[f64], composition: &[usize]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let total: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    let mut within = 0.0;
    let mut start = 0;
    for &c in composition {
        let g = &values[start..start + c];
        let m = g.iter().sum::<f64>() / c as f64;
        within += g.iter().map(|v| (v - m).powi(2)).sum::<f64>();
        start += c;
    }
    within / total.max(1e-300)
}

fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], step: f64, budget: usize, min_step: f64) -> (Vec<f64>, f64) {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let fx = f(&x);
        simplex.push((x, fx));
    }
    let mut evals = d + 1;
    let affine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < min_step || simplex[0].1 == 0.0 {
            break;
        }
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            centroid.iter_mut().zip(x).for_each(|(c, v)| *c += v / d as f64);
        }
        let worst = simplex[d].clone();
        let reflected = affine(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < simplex[0].1 {
            let expanded = affine(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            evals += 1;
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                affine(&centroid, &reflected, 0.5)
            } else {
                affine(&centroid, &worst.0, 0.5)
            };
            let fc = f(&contracted);
            evals += 1;
            if fc < worst.1.min(fr) {
                simplex[d] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let x = affine(&best, &item.0, 0.5);
                    let fx = f(&x);
                    *item = (x, fx);
                }
                evals += d;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

fn compass(f: &dyn Fn(&[f64]) -> f64, x0: Vec<f64>, f0: f64, cfg: &SearchConfig) -> (Vec<f64>, f64) {
    let (mut x, mut fx) = (x0, f0);
    let mut step = cfg.initial_step;
    let mut evals = 0;
    while step >= cfg.min_step && evals < cfg.max_iterations && fx > 0.0 {
        let mut improved = false;
        'dirs: for i in 0..x.len() {
            for s in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += s * step;
                let fy = f(&y);
                evals += 1;
                if fy < fx {
                    (x, fx) = (y, fy);
                    improved = true;
                    break 'dirs;
                }
            }
        }
        if !improved {
            step *= cfg.shrink;
        }
    }
    (x, fx)
}

struct Attempt {
    restart: usize,
    matrix: SymMatrix,
    objective: f64,
    achieved: usize,
    clusters: Vec<usize>,
}

fn attempt(g: &Graph, composition: &[usize], restart: usize, cfg: &SearchConfig, optimize: bool) -> Attempt {
    let label = format!("{composition:?}");
    let s = seed::derive_labeled(seed::derive(cfg.seed, restart as u64), &label);
    let mut rng = seed::rng(s);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let signs = edges.iter().map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
    let params = Params { g, edges, signs };
    let x0: Vec<f64> = (0..params.dim()).map(|_| rng.sample(StandardNormal)).collect();
    let f = |x: &[f64]| params.objective(x, composition);
    let (x, fx) = if optimize {
        let (x, fx) = nelder_mead(&f, &x0, cfg.initial_step, cfg.max_iterations, cfg.min_step);
        compass(&f, x, fx, cfg)
    } else {
        let fx = f(&x0);
        (x0, fx)
    };
    let matrix = params.matrix(&x);
    let (achieved, clusters) = match eigen_report(&matrix, cfg.cluster_tol) {
        Ok(r) if clears_margin(&matrix, g) => (r.min_multiplicity, r.multiplicities()),
        _ => (0, Vec::new()),
    };
    Attempt { restart, matrix, objective: fx, achieved, clusters }
}

/// Ordered reduction: higher multiplicity, then lower objective (beyond 1e-12),
/// then lower restart index.
fn better(a: &Attempt, b: &Attempt) -> bool {
    if a.achieved != b.achieved {
        return a.achieved > b.achieved;
    }
    if (a.objective - b.objective).abs() > 1e-12 {
        return a.objective < b.objective;
    }
    a.restart < b.restart
}

fn run_restarts(g: &Graph, composition: &[usize], cfg: &SearchConfig) -> Attempt {
    let all: Vec<Attempt> =
        (0..cfg.restarts).into_par_iter().map(|r| attempt(g, composition, r, cfg, true)).collect();
    all.into_iter().reduce(|best, a| if better(&a, &best) { a } else { best }).expect("restarts >= 1")
}

/// Compositions of `n` into parts in `lo..=hi`, in lexicographic order.
fn compositions(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in lo..=hi.min(left) {
            cur.push(part);
            rec(left - part, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Distinct orderings of a multiset of parts, in lexicographic order.
fn orderings(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut p = parts.to_vec();
    p.sort_unstable();
    let mut out = vec![p.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
        let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("exists");
        p.swap(i, j);
        p[i + 1..].reverse();
        out.push(p.clone());
    }
    out
}

fn finish(g: &Graph, a: Attempt, composition: Vec<usize>, cfg: &SearchConfig, warnings: Vec<String>) -> Result<SearchResult> {
    let target = SpectrumSpec::free(&a.clusters)?;
    let trace = vec![format!("search:{composition:?}:restart{}", a.restart)];
    let certificate = Certificate::assemble(g.clone(), a.matrix, target, cfg.seed, trace)?;
    Ok(SearchResult { certificate, achieved: a.achieved, composition, objective: a.objective, restart: a.restart, warnings })
}

/// Best matrix found in `S(g)`. Without a target partition, minimal
/// multiplicities `k = ⌊n/2⌋, ..., 2` are tried in turn, each over all
/// compositions of `n` into parts between `k` and `2k - 1`; the first success
/// is returned. Deterministic for a fixed configuration.
pub fn search_mm(g: &Graph, cfg: &SearchConfig) -> Result<SearchResult> {
    let n = g.order();
    if n == 0 {
        return Err(MmError::validation("graph has no vertices"));
    }
    cfg.validate(n)?;
    let mut warnings = Vec::new();
    if n > SOFT_ORDER_LIMIT {
        warnings.push(format!("order {n} is above {SOFT_ORDER_LIMIT}; the search is slow and unreliable here"));
    }
    if g.edge_count() == 0 {
        let target = SpectrumSpec::free(&[n])?;
        let certificate = Certificate::assemble(g.clone(), SymMatrix::zeros(n), target, cfg.seed, vec!["search:scalar".into()])?;
        warnings.push("no edges: only diagonal matrices, the scalar one has multiplicity n".into());
        return Ok(SearchResult { certificate, achieved: n, composition: vec![n], objective: 0.0, restart: 0, warnings });
    }

    if let Some(parts) = &cfg.target_partition {
        let goal = *parts.iter().min().expect("nonempty");
        let mut best: Option<(Attempt, Vec<usize>)> = None;
        for comp in orderings(parts) {
            let a = run_restarts(g, &comp, cfg);
            let done = a.achieved >= goal;
            if best.as_ref().is_none_or(|(b, _)| a.achieved > b.achieved) {
                best = Some((a, comp));
            }
            if done {
                break;
            }
        }
        let (a, comp) = best.expect("at least one ordering");
        if a.achieved < goal {
            warnings.push(format!("target minimal multiplicity {goal} not reached"));
        }
        return finish(g, a, comp, cfg, warnings);
    }

    for k in (2..=n / 2).rev() {
        for comp in compositions(n, k, 2 * k - 1) {
            let a = run_restarts(g, &comp, cfg);
            if a.achieved >= k {
                return finish(g, a, comp, cfg, warnings);
            }
        }
    }
    // Generic matrices have simple spectra.
    let comp = vec![1; n];
    let a = attempt(g, &comp, 0, cfg, false);
    finish(g, a, comp, cfg, warnings)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The search reached the upper bound.
    Tight,
    WithinBounds,
    /// The search stayed below a witnessed lower bound; expected now and then.
    Undershoot,
    /// The search beat a claimed upper bound: a bug in a bound or in clustering.
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub found: usize,
    pub lower: usize,
    pub upper: usize,
    pub verdict: Verdict,
}

pub fn cross_check(bound: &BoundResult, found: usize) -> CrossCheck {
    let verdict = if found > bound.upper {
        Verdict::Violation
    } else if found < bound.lower {
        Verdict::Undershoot
    } else if found == bound.upper {
        Verdict::Tight
    } else {
        Verdict::WithinBounds
    };
    CrossCheck { found, lower: bound.lower, upper: bound.upper, verdict }
}
