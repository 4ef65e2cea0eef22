//! Matrix constructions: joins, complete and bipartite realizations, the
//! two-eigenvalue pipeline for complement forms, lifts and parallel paths.

mod complete;
mod constants;
mod joins;
mod lifts;
mod mrplus;

pub use complete::{
    bipartite_matrix, bipartite_witness, complete_graph_matrix, complete_witness, reorient_bipartite, EigvecRequest,
};
pub use constants::{
    complement_pair_base, k10_base, one_zero_pairs_base5, one_zero_pairs_base7, star_example_matrix,
    STAR_EXAMPLE_SPECTRUM,
};
pub use joins::{
    d0_block, fiedler_join, gen_fiedler_join, hs04_join, hs04_lift_a_vector, hs04_lift_b_vector,
    one_step_double, DoubleStepParams,
};
pub use lifts::{
    cartesian_k2_lift, corona_lift, hypercube_matrix, join_self_matrix, parallel_paths_certificate,
    parallel_paths_matrix, product_certificate, product_matrix, union_align, ProductOutcome,
};
pub use mrplus::{helena_extend, k10_kpq_matrix, mr_plus_two_matrix};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::eiglab::{SymMatrix, ORTHO_TOL};
use crate::error::{MmError, Result};

/// Smallest entry magnitude for a unit vector to count as having no zeros.
pub const NONZERO_ENTRY: f64 = 1e-6;

/// Residual tolerance for tagged eigenvectors, relative to `max(1, |A|_F)`.
pub const TAG_RESIDUAL: f64 = 1e-9;

/// A matrix with orthonormal eigenvectors recorded for one eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigvecTagged {
    pub matrix: SymMatrix,
    pub tagged_value: f64,
    pub tagged_vectors: Vec<Vec<f64>>,
    /// Per vector: every entry has magnitude at least [`NONZERO_ENTRY`].
    pub all_nonzero: Vec<bool>,
}

impl EigvecTagged {
    pub fn new(matrix: SymMatrix, tagged_value: f64, tagged_vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.n();
        let scale = matrix.frobenius_norm().max(1.0);
        let vs: Vec<DVector<f64>> = tagged_vectors
            .iter()
            .map(|v| {
                if v.len() != n {
                    Err(MmError::DimensionMismatch { expected: n, found: v.len() })
                } else {
                    Ok(DVector::from_column_slice(v))
                }
            })
            .collect::<Result<_>>()?;
        for (i, v) in vs.iter().enumerate() {
            let r = (matrix.as_matrix() * v - v * tagged_value).norm();
            if !(r <= TAG_RESIDUAL * scale) {
                return Err(MmError::precondition(format!(
                    "tagged vector {i} is not an eigenvector for {tagged_value} (residual {r:e})"
                )));
            }
            for (j, w) in vs.iter().enumerate().take(i + 1) {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (v.dot(w) - expect).abs() > ORTHO_TOL {
                    return Err(MmError::precondition("tagged vectors are not orthonormal"));
                }
            }
        }
        let all_nonzero = tagged_vectors.iter().map(|v| has_no_zeros(v)).collect();
        Ok(EigvecTagged { matrix, tagged_value, tagged_vectors, all_nonzero })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// `f(A) = scale * A + shift * I`; eigenvectors are unchanged.
    pub fn affine(&self, scale: f64, shift: f64) -> EigvecTagged {
        EigvecTagged {
            matrix: self.matrix.affine(scale, shift),
            tagged_value: scale * self.tagged_value + shift,
            tagged_vectors: self.tagged_vectors.clone(),
            all_nonzero: self.all_nonzero.clone(),
        }
    }

    /// Number of leading tagged vectors without zero entries.
    fn leading_nonzero(&self) -> usize {
        self.all_nonzero.iter().take_while(|&&b| b).count()
    }
}

pub(crate) fn has_no_zeros(v: &[f64]) -> bool {
    v.iter().all(|x| x.abs() >= NONZERO_ENTRY)
}

pub(crate) fn column(m: &DMatrix<f64>, k: usize) -> Vec<f64> {
    m.column(k).iter().copied().collect()
}

/// Two orthonormal vectors spanning the same plane as `a`, `b`, rotated by `theta`.
pub(crate) fn rotate_pair(a: &[f64], b: &[f64], theta: f64) -> (Vec<f64>, Vec<f64>) {
    let (c, s) = (theta.cos(), theta.sin());
    let x = a.iter().zip(b).map(|(p, q)| c * p + s * q).collect();
    let y = a.iter().zip(b).map(|(p, q)| -s * p + c * q).collect();
    (x, y)
}
