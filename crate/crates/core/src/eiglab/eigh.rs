use nalgebra::DMatrix;

use super::{OrthMatrix, SymMatrix};
use crate::error::{MmError, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = Q diag(values) Q^T` with ascending values.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Column `k` is a unit eigenvector for `values[k]`.
    pub vectors: OrthMatrix,
}

impl Eigh {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.as_matrix().column(k).iter().copied().collect()
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps until every off-diagonal magnitude drops below `1e-14 * ||A||_F`.
/// Each eigenvector is signed so that its largest-magnitude entry (first on
/// ties) is positive, which makes the output independent of rotation order
/// details for simple eigenvalues.
pub fn eigh(a: &SymMatrix) -> Result<Eigh> {
    let n = a.n();
    let mut m = a.as_matrix().clone();
    if m.iter().any(|x| !x.is_finite()) {
        return Err(MmError::NonFinite);
    }
    let mut v = DMatrix::<f64>::identity(n, n);
    let tol = 1e-14 * m.norm();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .fold(0.0f64, |acc, (p, q)| acc.max(m[(p, q)].abs()));
        if off < tol || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() < tol {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (kp, kq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * kp - s * kq;
                    m[(k, q)] = s * kp + c * kq;
                }
                for k in 0..n {
                    let (pk, qk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * pk - s * qk;
                    m[(q, k)] = s * pk + c * qk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let (kp, kq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * kp - s * kq;
                    v[(k, q)] = s * kp + c * kq;
                }
            }
        }
    }
    if !converged {
        return Err(MmError::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut q = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    for mut col in q.column_iter_mut() {
        let mut lead = 0;
        for (k, x) in col.iter().enumerate() {
            if x.abs() > col[lead].abs() {
                lead = k;
            }
        }
        if col[lead] < 0.0 {
            col.neg_mut();
        }
    }
    Ok(Eigh { values, vectors: OrthMatrix::new_unchecked(q) })
}
