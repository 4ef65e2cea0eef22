//! Explicit small matrices used as starting points.
//!
//! Entries are closed-form radicals evaluated in double precision. Vertex order
//! follows the complement-form convention: the `p0` block first, then each pair.

use super::{hs04_join, EigvecTagged};
use crate::eiglab::SymMatrix;

fn s(x: f64) -> f64 {
    x.sqrt()
}

/// On `(K_{2,0} ∪ K_{1,1})^c` with eigenvalues `0, 0, 1, 1`. Vertices 0 and 1 form
/// the `p0` block; 2 and 3 are the non-adjacent pair.
pub fn complement_pair_base() -> SymMatrix {
    let r3 = s(3.0);
    let a11 = 2.0 / (2.0 + 3.0 * r3);
    let a12 = (9.0 - 2.0 * r3) / 23.0;
    let a13 = s(21.0 + 26.0 * r3) / 23.0;
    let a14 = 3f64.powf(0.25) * (-11.0 + 5.0 * r3) / 23.0;
    let a24 = s(-330.0 + 196.0 * r3) / 23.0;
    let a33 = -2.0 * (-9.0 + 2.0 * r3) / 23.0;
    let a44 = -4.0 * (-9.0 + 2.0 * r3) / 23.0;
    SymMatrix::from_rows(&[
        vec![a11, a12, a13, a14],
        vec![a12, a11, a13, a24],
        vec![a13, a13, a33, 0.0],
        vec![a14, a24, 0.0, a44],
    ])
    .expect("finite constants")
}

/// Two non-adjacent pairs followed by the vertex adjacent to everything.
fn five_pairs_first() -> SymMatrix {
    let (r2, r3, r6) = (s(2.0), s(3.0), s(6.0));
    let d = 7.0 * (3.0 + r3);
    SymMatrix::from_rows(&[
        vec![(3.0 + r3) / 7.0, 0.0, r3 / 7.0, (1.0 + r3) / 7.0, r6 / d],
        vec![0.0, (3.0 - r3) / 7.0, r3 / 7.0, (1.0 - r3) / 7.0, -r6 * (2.0 + r3) / d],
        vec![r3 / 7.0, r3 / 7.0, 3.0 / 7.0, 0.0, -r6 / 7.0],
        vec![(1.0 + r3) / 7.0, (1.0 - r3) / 7.0, 0.0, 2.0 / 7.0, r2 / 7.0],
        vec![r6 / d, -r6 * (2.0 + r3) / d, -r6 / 7.0, r2 / 7.0, 3.0 / 7.0],
    ])
    .expect("finite constants")
}

/// On `(K_{1,0} ∪ K_{1,1} ∪ K_{1,1})^c` with eigenvalues `1` (twice) and `0` (three
/// times). Vertex 0 is adjacent to all others; (1, 2) and (3, 4) are the pairs.
pub fn one_zero_pairs_base5() -> SymMatrix {
    five_pairs_first().permuted(&[4, 0, 1, 2, 3]).expect("valid permutation")
}

/// 3x3 block on `(K_{1,0} ∪ K_{1,1})^c` with spectrum `0, 3/7, 1` and its unit
/// eigenvector for `3/7`.
fn seven_core() -> EigvecTagged {
    let b = SymMatrix::from_rows(&[
        vec![4.0 / 7.0, s(5.0) / 7.0, s(3.0) / 7.0],
        vec![s(5.0) / 7.0, 5.0 / 7.0, 0.0],
        vec![s(3.0) / 7.0, 0.0, 1.0 / 7.0],
    ])
    .expect("finite constants");
    let u = vec![1.0 / s(3.0), -s(5.0 / 12.0), 0.5];
    EigvecTagged::new(b, 3.0 / 7.0, vec![u]).expect("exact eigenvector")
}

/// On `(K_{1,0} ∪ 3 K_{1,1})^c` with eigenvalues `1` (three times) and `0` (four
/// times): the 3x3 core glued into the five-vertex base through its diagonal
/// entry `3/7`.
pub fn one_zero_pairs_base7() -> SymMatrix {
    let joined = hs04_join(&five_pairs_first(), 4, &seven_core()).expect("pivot matches");
    joined.permuted(&[4, 5, 6, 0, 1, 2, 3]).expect("valid permutation")
}

/// On `(K_{1,0} ∪ K_{1,1})^c` with spectrum `3, √3, -√3`. Vertex 0 is adjacent to
/// both others; vertex 1 carries diagonal 1 and vertex 2 diagonal 2.
pub fn k10_base() -> SymMatrix {
    SymMatrix::from_rows(&[vec![0.0, 2.0, 1.0], vec![2.0, 1.0, 0.0], vec![1.0, 0.0, 2.0]])
        .expect("finite constants")
}

/// Spectrum of [`star_example_matrix`]: `1` and `-1` twice each, `0` with
/// multiplicity `m`.
pub const STAR_EXAMPLE_SPECTRUM: [(f64, usize); 2] = [(1.0, 2), (-1.0, 2)];

/// Hub 0, a triangle on 1..=3, and `m` leaves on 4..m+4 attached to the hub.
/// Spectrum `1, 1, -1, -1` and `0` with multiplicity `m`.
pub fn star_example_matrix(m: usize) -> SymMatrix {
    let n = m + 4;
    let k = 1.0 / s((m + 1) as f64);
    let mut rows = vec![vec![0.0; n]; n];
    let ua = [k / s(3.0), k / s(6.0), k / s(2.0)];
    let off = -1.0 / (3.0 * s(2.0)) - s(2.0) / 3.0;
    let b = [
        [0.0, off, 1.0 / s(6.0)],
        [off, 0.5, 1.0 / (2.0 * s(3.0))],
        [1.0 / s(6.0), 1.0 / (2.0 * s(3.0)), -0.5],
    ];
    for i in 0..3 {
        rows[0][i + 1] = ua[i];
        rows[i + 1][0] = ua[i];
        for j in 0..3 {
            rows[i + 1][j + 1] = b[i][j];
        }
    }
    rows[0][4..].fill(k);
    for row in &mut rows[4..] {
        row[0] = k;
    }
    SymMatrix::from_rows(&rows).expect("finite constants")
}
