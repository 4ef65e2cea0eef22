//! Rank-one and block couplings of two symmetric matrices.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{column, has_no_zeros, EigvecTagged};
use crate::eiglab::{OrthMatrix, SymMatrix};
use crate::error::{MmError, Result};
use crate::graph::CONSTRUCTION_MARGIN;
use crate::seed;

fn block(a: &SymMatrix, b: &SymMatrix, cross: &DMatrix<f64>) -> SymMatrix {
    let (n, m) = (a.n(), b.n());
    let mut c = DMatrix::zeros(n + m, n + m);
    c.view_mut((0, 0), (n, n)).copy_from(a.as_matrix());
    c.view_mut((n, n), (m, m)).copy_from(b.as_matrix());
    c.view_mut((n, 0), (m, n)).copy_from(&cross.transpose());
    SymMatrix::from_lower(c).expect("finite blocks")
}

/// `[[A, ρ u vᵀ], [ρ v uᵀ, B]]` for the first tagged vectors `u` of `a` and `v` of `b`.
///
/// The spectrum is that of `A` and `B` with the tagged eigenvalues `α`, `β`
/// replaced by the eigenvalues of `[[α, ρ], [ρ, β]]`.
pub fn fiedler_join(a: &EigvecTagged, b: &EigvecTagged, rho: f64) -> Result<SymMatrix> {
    let (Some(u), Some(v)) = (a.tagged_vectors.first(), b.tagged_vectors.first()) else {
        return Err(MmError::precondition("both inputs need a tagged eigenvector"));
    };
    if !rho.is_finite() {
        return Err(MmError::NonFinite);
    }
    let u = DVector::from_column_slice(u);
    let v = DVector::from_column_slice(v);
    Ok(block(&a.matrix, &b.matrix, &(u * v.transpose() * rho)))
}

/// `[[A, U₁ R V₁ᵀ], [V₁ Rᵀ U₁ᵀ, B]]` where the columns of `U₁` (of `V₁`) are
/// orthonormal and span an invariant subspace of `A` (of `B`).
pub fn gen_fiedler_join(
    a: &SymMatrix,
    b: &SymMatrix,
    u1: &DMatrix<f64>,
    v1: &DMatrix<f64>,
    r: &DMatrix<f64>,
) -> Result<SymMatrix> {
    check_invariant(a, u1, "U1")?;
    check_invariant(b, v1, "V1")?;
    if r.nrows() != u1.ncols() || r.ncols() != v1.ncols() {
        return Err(MmError::DimensionMismatch { expected: u1.ncols(), found: r.nrows() });
    }
    Ok(block(a, b, &(u1 * r * v1.transpose())))
}

fn check_invariant(a: &SymMatrix, u: &DMatrix<f64>, name: &str) -> Result<()> {
    if u.nrows() != a.n() {
        return Err(MmError::DimensionMismatch { expected: a.n(), found: u.nrows() });
    }
    let k = u.ncols();
    let gram = u.transpose() * u - DMatrix::<f64>::identity(k, k);
    if gram.amax() > 1e-8 {
        return Err(MmError::precondition(format!("{name} columns are not orthonormal")));
    }
    let au = a.as_matrix() * u;
    let leak = &au - u * (u.transpose() * &au);
    if leak.amax() > 1e-8 * a.max_abs().max(1.0) {
        return Err(MmError::precondition(format!("{name} does not span an invariant subspace")));
    }
    Ok(())
}

/// Parameters of the 4x4 doubling block.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubleStepParams {
    pub a1: f64,
    pub a2: f64,
    pub t: f64,
    pub alpha: f64,
}

impl DoubleStepParams {
    pub fn new(a1: f64, a2: f64, t: f64, alpha: f64) -> Result<Self> {
        let p = DoubleStepParams { a1, a2, t, alpha };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if ![self.a1, self.a2, self.t, self.alpha].iter().all(|x| x.is_finite()) {
            return Err(MmError::NonFinite);
        }
        if !(self.t > 0.0) {
            return Err(MmError::precondition("t must be positive"));
        }
        if !(self.a1 > self.a2 - self.t) {
            return Err(MmError::precondition(format!(
                "need a1 > a2 - t, got a1 = {}, a2 - t = {}",
                self.a1,
                self.a2 - self.t
            )));
        }
        Ok(())
    }

    /// `sqrt(t (a1 - a2 + t))`.
    pub fn b(&self) -> f64 {
        (self.t * (self.a1 - self.a2 + self.t)).sqrt()
    }

    /// The 2x2 coupling `R`.
    fn r(&self) -> DMatrix<f64> {
        let (b, c, s) = (self.b(), self.alpha.cos(), self.alpha.sin());
        DMatrix::from_row_slice(2, 2, &[b * c, b * s, -b * s, b * c])
    }
}

/// The 4x4 block `D₀ = [[a₁I, R], [Rᵀ, a₂I]]` and the orthogonal `U₀` with
/// `U₀ᵀ D₀ U₀ = diag(a₁+t, a₁+t, a₂-t, a₂-t)`.
pub fn d0_block(p: &DoubleStepParams) -> Result<(SymMatrix, OrthMatrix)> {
    p.check()?;
    let DoubleStepParams { a1, a2, t, alpha } = *p;
    let (b, c, s) = (p.b(), alpha.cos(), alpha.sin());
    let d0 = SymMatrix::from_rows(&[
        vec![a1, 0.0, b * c, b * s],
        vec![0.0, a1, -b * s, b * c],
        vec![b * c, -b * s, a2, 0.0],
        vec![b * s, b * c, 0.0, a2],
    ])?;
    let rt = t.sqrt();
    let k = 1.0 / (a1 - a2 + 2.0 * t).sqrt();
    #[rustfmt::skip]
    let u0 = DMatrix::from_row_slice(4, 4, &[
        b * s / rt, b * c / rt, -rt * s, -rt * c,
        b * c / rt, -b * s / rt, -rt * c, rt * s,
        0.0, rt, 0.0, b / rt,
        rt, 0.0, b / rt, 0.0,
    ]) * k;
    Ok((d0, OrthMatrix::new(u0)?))
}

/// Couples `b1` (tagged double `λ₁`) and `b2` (tagged double `λ₂`) so that the
/// doubles move to `λ₁ + t` and `λ₂ - t` while the rest of both spectra stays.
///
/// The coupling block has no zero entries and both new doubles come with two
/// orthonormal eigenvectors without zero entries. The first attempt uses
/// `alpha`; later attempts draw the angle from `seed`.
pub fn one_step_double(
    b1: &EigvecTagged,
    b2: &EigvecTagged,
    t: f64,
    alpha: f64,
    seed: u64,
) -> Result<(EigvecTagged, EigvecTagged)> {
    if b1.leading_nonzero() < 2 || b2.leading_nonzero() < 2 {
        return Err(MmError::precondition(
            "each block needs two tagged eigenvectors without zero entries",
        ));
    }
    let (l1, l2) = (b1.tagged_value, b2.tagged_value);
    DoubleStepParams::new(l1, l2, t, alpha)?;
    let (n1, n2) = (b1.n(), b2.n());
    let u1 = DMatrix::from_fn(n1, 2, |i, j| b1.tagged_vectors[j][i]);
    let v1 = DMatrix::from_fn(n2, 2, |i, j| b2.tagged_vectors[j][i]);
    let mut w = DMatrix::zeros(n1 + n2, 4);
    w.view_mut((0, 0), (n1, 2)).copy_from(&u1);
    w.view_mut((n1, 2), (n2, 2)).copy_from(&v1);

    let mut tried = Vec::new();
    let angles = std::iter::once((seed, alpha))
        .chain(seed::attempts(seed).skip(1).map(|s| (s, seed::rng(s).random_range(0.0..TAU))));
    for (attempt_seed, angle) in angles {
        tried.push(attempt_seed);
        let p = DoubleStepParams::new(l1, l2, t, angle)?;
        let s = &u1 * p.r() * v1.transpose();
        let c = gen_fiedler_join(&b1.matrix, &b2.matrix, &u1, &v1, &p.r())?;
        let floor = CONSTRUCTION_MARGIN * c.max_abs().max(1.0);
        if s.iter().any(|x| x.abs() < floor) {
            continue;
        }
        let (_, u0) = d0_block(&p)?;
        let vecs = &w * u0.as_matrix();
        let cols: Vec<Vec<f64>> = (0..4).map(|k| column(&vecs, k)).collect();
        if !cols.iter().all(|v| has_no_zeros(v)) {
            continue;
        }
        let up = EigvecTagged::new(c.clone(), l1 + t, cols[..2].to_vec())?;
        let down = EigvecTagged::new(c, l2 - t, cols[2..].to_vec())?;
        return Ok((up, down));
    }
    Err(MmError::GenericPosition { stage: "one_step_double".into(), seeds: tried })
}

/// Glues `b` into `a` through the diagonal entry `a[pivot][pivot] = μ₁`, where
/// `μ₁` is the tagged eigenvalue of `b` with unit eigenvector `u`.
///
/// The result has the spectrum of `a` together with that of `b` minus one copy
/// of `μ₁`. Rows of `b` replace the pivot row, so the layout is
/// `a[..pivot], b, a[pivot+1..]`.
pub fn hs04_join(a: &SymMatrix, pivot: usize, b: &EigvecTagged) -> Result<SymMatrix> {
    let n = a.n();
    if pivot >= n {
        return Err(MmError::validation(format!("pivot {pivot} out of range")));
    }
    let mu = b.tagged_value;
    if (a.get(pivot, pivot) - mu).abs() > 1e-9 * mu.abs().max(1.0) {
        return Err(MmError::precondition(format!(
            "diagonal entry {} does not equal the tagged eigenvalue {mu}",
            a.get(pivot, pivot)
        )));
    }
    let u = b.tagged_vectors.first().ok_or(MmError::precondition("b needs a tagged eigenvector"))?;
    let m = b.n();
    let size = n - 1 + m;
    // position of old index i (i != pivot) in the new layout
    let old_pos = |i: usize| if i < pivot { i } else { i - 1 + m };
    let mut c = DMatrix::zeros(size, size);
    for i in (0..n).filter(|&i| i != pivot) {
        for j in (0..n).filter(|&j| j != pivot) {
            c[(old_pos(i), old_pos(j))] = a.get(i, j);
        }
        for (k, uk) in u.iter().enumerate() {
            let x = a.get(i, pivot) * uk;
            c[(old_pos(i), pivot + k)] = x;
            c[(pivot + k, old_pos(i))] = x;
        }
    }
    c.view_mut((pivot, pivot), (m, m)).copy_from(b.matrix.as_matrix());
    SymMatrix::from_lower(c)
}

/// Eigenvector of the joined matrix coming from an eigenvector `(v, α)` of `a`:
/// the pivot coordinate `α` is spread as `α u` over the inserted block.
pub fn hs04_lift_a_vector(v: &[f64], pivot: usize, u: &[f64]) -> Vec<f64> {
    let alpha = v[pivot];
    let mut out = v[..pivot].to_vec();
    out.extend(u.iter().map(|x| alpha * x));
    out.extend_from_slice(&v[pivot + 1..]);
    out
}

/// Eigenvector of the joined matrix coming from an eigenvector `w ⟂ u` of `b`.
pub fn hs04_lift_b_vector(n_a: usize, pivot: usize, w: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; pivot];
    out.extend_from_slice(w);
    out.extend(std::iter::repeat_n(0.0, n_a - 1 - pivot));
    out
}
