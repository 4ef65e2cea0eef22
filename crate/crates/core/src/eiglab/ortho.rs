use nalgebra::DMatrix;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{MmError, Result};
use crate::seed;

/// Orthogonality tolerance on `max |Q^T Q - I|`.
pub const ORTHO_TOL: f64 = 1e-10;

/// Square matrix with orthonormal columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct OrthMatrix {
    m: DMatrix<f64>,
}

impl TryFrom<Vec<Vec<f64>>> for OrthMatrix {
    type Error = MmError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MmError::validation("orthogonal matrix must be square"));
        }
        OrthMatrix::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }
}

impl From<OrthMatrix> for Vec<Vec<f64>> {
    fn from(q: OrthMatrix) -> Self {
        q.m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }
}

impl OrthMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(MmError::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        let q = OrthMatrix { m };
        let err = q.orthogonality_error();
        if !(err <= ORTHO_TOL) {
            return Err(MmError::validation(format!("not orthogonal: |Q^T Q - I| = {err:e}")));
        }
        Ok(q)
    }

    pub(crate) fn new_unchecked(m: DMatrix<f64>) -> Self {
        OrthMatrix { m }
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.m
    }

    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n();
        (self.m.transpose() * &self.m - DMatrix::<f64>::identity(n, n)).amax()
    }
}

/// Seeded Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal folded into `Q`.
pub fn random_orthogonal(n: usize, seed: u64) -> OrthMatrix {
    assert!(n >= 1, "dimension must be positive");
    let mut rng = seed::rng(seed);
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        if r[(k, k)] < 0.0 {
            col.neg_mut();
        }
    }
    OrthMatrix { m: q }
}

/// Orthonormal basis of the complement of the unit vector `u`, seeded so the
/// basis is generic. Returns an `n x (n-1)` matrix.
pub fn complement_basis(u: &[f64], seed: u64) -> DMatrix<f64> {
    let n = u.len();
    let mut rng = seed::rng(seed);
    let mut g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    g.set_column(0, &nalgebra::DVector::from_column_slice(u));
    let q = g.qr().q();
    q.columns(1, n - 1).into_owned()
}
