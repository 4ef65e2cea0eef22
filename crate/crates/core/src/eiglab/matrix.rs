use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{MmError, Result};

/// Dense real symmetric matrix with finite entries.
///
/// Every constructor copies the lower triangle over the upper one, so
/// `a[(i, j)] == a[(j, i)]` holds bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct SymMatrix {
    m: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl TryFrom<MatrixRepr> for SymMatrix {
    type Error = MmError;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        if r.rows.len() != r.n {
            return Err(MmError::DimensionMismatch { expected: r.n, found: r.rows.len() });
        }
        SymMatrix::from_rows(&r.rows)
    }
}

impl From<SymMatrix> for MatrixRepr {
    fn from(a: SymMatrix) -> Self {
        MatrixRepr { n: a.n(), rows: a.rows() }
    }
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { m: DMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix { m: DMatrix::identity(n, n) }
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self> {
        if d.iter().any(|x| !x.is_finite()) {
            return Err(MmError::NonFinite);
        }
        Ok(SymMatrix { m: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)) })
    }

    /// Rows of a square matrix; only the lower triangle is read.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(MmError::DimensionMismatch { expected: n, found: r.len() });
            }
        }
        Self::from_lower(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Takes the lower triangle of a square matrix as authoritative.
    pub fn from_lower(mut m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(MmError::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        let n = m.nrows();
        for i in 0..n {
            for j in 0..=i {
                if !m[(i, j)].is_finite() {
                    return Err(MmError::NonFinite);
                }
                m[(j, i)] = m[(i, j)];
            }
        }
        Ok(SymMatrix { m })
    }

    /// Builds from `f(i, j)` evaluated for `i >= j`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        Self::from_lower(DMatrix::from_fn(n, n, |i, j| if i >= j { f(i, j) } else { 0.0 }))
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.m[(i, j)]).collect()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.m[(i, i)]).collect()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    /// `scale * A + shift * I`.
    pub fn affine(&self, scale: f64, shift: f64) -> SymMatrix {
        let n = self.n();
        let mut m = &self.m * scale;
        for i in 0..n {
            m[(i, i)] += shift;
        }
        SymMatrix::from_lower(m).expect("affine image of a finite matrix is finite")
    }

    pub fn direct_sum(&self, other: &SymMatrix) -> SymMatrix {
        let (a, b) = (self.n(), other.n());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.m);
        m.view_mut((a, a), (b, b)).copy_from(&other.m);
        SymMatrix { m }
    }

    /// Entry `(i, j)` of the result is entry `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymMatrix> {
        let n = self.n();
        if perm.len() != n {
            return Err(MmError::DimensionMismatch { expected: n, found: perm.len() });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(MmError::validation("not a permutation"));
            }
        }
        Ok(SymMatrix { m: DMatrix::from_fn(n, n, |i, j| self.m[(perm[i], perm[j])]) })
    }

    /// CSV: first line `n,<count>`, then one comma-separated row per line.
    pub fn to_csv(&self) -> String {
        let mut s = format!("n,{}\n", self.n());
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<SymMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(MmError::Parse { line: 1, message: "empty".into() })?;
        let n = header
            .trim()
            .strip_prefix("n,")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or(MmError::Parse { line: 1, message: "expected header `n,<count>`".into() })?;
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines {
            let row = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| MmError::Parse { line: idx + 1, message: e.to_string() })?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(MmError::DimensionMismatch { expected: n, found: rows.len() });
        }
        SymMatrix::from_rows(&rows)
    }
}
