use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{eigh, SymMatrix};
use crate::error::{MmError, Result};

/// Default relative tolerance for grouping eigenvalues.
pub const CLUSTER_TOL: f64 = 1e-6;

/// A target eigenvalue with its multiplicity. `value: None` leaves the value free.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumItem {
    pub value: Option<f64>,
    pub multiplicity: usize,
}

/// Target spectrum as a list of (value, multiplicity) items, sorted by value
/// with free items last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<SpectrumItem>", into = "Vec<SpectrumItem>")]
pub struct SpectrumSpec {
    items: Vec<SpectrumItem>,
}

impl TryFrom<Vec<SpectrumItem>> for SpectrumSpec {
    type Error = MmError;

    fn try_from(items: Vec<SpectrumItem>) -> Result<Self> {
        SpectrumSpec::from_items(items)
    }
}

impl From<SpectrumSpec> for Vec<SpectrumItem> {
    fn from(s: SpectrumSpec) -> Self {
        s.items
    }
}

impl SpectrumSpec {
    pub fn from_items(mut items: Vec<SpectrumItem>) -> Result<Self> {
        if items.is_empty() {
            return Err(MmError::validation("spectrum needs at least one item"));
        }
        if items.iter().any(|it| it.multiplicity == 0) {
            return Err(MmError::validation("multiplicities must be positive"));
        }
        if items.iter().any(|it| it.value.is_some_and(|v| !v.is_finite())) {
            return Err(MmError::NonFinite);
        }
        items.sort_by(|a, b| match (a.value, b.value) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.multiplicity.cmp(&b.multiplicity),
        });
        let fixed: Vec<f64> = items.iter().filter_map(|it| it.value).collect();
        let scale = fixed.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        for w in fixed.windows(2) {
            if w[1] - w[0] < CLUSTER_TOL * scale {
                return Err(MmError::validation(format!(
                    "target values {} and {} are not separated",
                    w[0], w[1]
                )));
            }
        }
        Ok(SpectrumSpec { items })
    }

    /// Fixed values with multiplicities.
    pub fn new(pairs: &[(f64, usize)]) -> Result<Self> {
        Self::from_items(
            pairs.iter().map(|&(v, m)| SpectrumItem { value: Some(v), multiplicity: m }).collect(),
        )
    }

    /// Multiplicities only.
    pub fn free(mults: &[usize]) -> Result<Self> {
        Self::from_items(mults.iter().map(|&m| SpectrumItem { value: None, multiplicity: m }).collect())
    }

    /// Groups a list of eigenvalues with [`cluster_spectrum`].
    pub fn from_values(values: &[f64], tol: f64) -> Result<Self> {
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let pairs: Vec<(f64, usize)> =
            cluster_spectrum(&v, tol).iter().map(|c| (c.value, c.multiplicity)).collect();
        Self::new(&pairs)
    }

    pub fn items(&self) -> &[SpectrumItem] {
        &self.items
    }

    pub fn dimension(&self) -> usize {
        self.items.iter().map(|it| it.multiplicity).sum()
    }

    pub fn min_multiplicity(&self) -> usize {
        self.items.iter().map(|it| it.multiplicity).min().unwrap_or(0)
    }

    /// Fixed values repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Option<Vec<f64>> {
        let mut out = Vec::new();
        for it in &self.items {
            out.extend(std::iter::repeat_n(it.value?, it.multiplicity));
        }
        Some(out)
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.items.iter().map(|it| it.multiplicity).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
    /// Largest minus smallest member.
    pub spread: f64,
}

/// Greedy left-to-right grouping of ascending `values`: a value joins the
/// current cluster when it lies within `tol * max(1, |mean|)` of the mean.
pub fn cluster_spectrum(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut first = f64::NAN;
    let mut sum = 0.0;
    for &x in values {
        if let Some(c) = out.last_mut() {
            if (x - c.value).abs() <= tol * c.value.abs().max(1.0) {
                c.multiplicity += 1;
                sum += x;
                c.value = sum / c.multiplicity as f64;
                c.spread = x - first;
                continue;
            }
        }
        first = x;
        sum = x;
        out.push(Cluster { value: x, multiplicity: 1, spread: 0.0 });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub min_multiplicity: usize,
    /// `max_k |A v_k - λ_k v_k| / max(1, |A|_2)`.
    pub residual: f64,
}

impl EigenReport {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.multiplicity).collect()
    }
}

pub fn eigen_report(a: &SymMatrix, tol: f64) -> Result<EigenReport> {
    let e = eigh(a)?;
    let clusters = cluster_spectrum(&e.values, tol);
    let norm = e.values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let q = e.vectors.as_matrix();
    let mut residual = 0.0f64;
    for (k, &lambda) in e.values.iter().enumerate() {
        let v: DVector<f64> = q.column(k).into_owned();
        let r = a.as_matrix() * &v - &v * lambda;
        residual = residual.max(r.norm() / norm);
    }
    let min_multiplicity = clusters.iter().map(|c| c.multiplicity).min().unwrap_or(0);
    Ok(EigenReport { eigenvalues: e.values, clusters, min_multiplicity, residual })
}

/// Smallest eigenvalue multiplicity of `a` after clustering with `tol`.
pub fn min_multiplicity(a: &SymMatrix, tol: f64) -> Result<usize> {
    Ok(eigen_report(a, tol)?.min_multiplicity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn clustering_examples() {
        let c = cluster_spectrum(&[1.0, 1.0 + 1e-9, 5.0], 1e-6);
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].multiplicity, c[1].multiplicity), (2, 1));
        assert!((c[0].value - 1.0).abs() < 1e-8 && c[1].value == 5.0);
        assert!((c[0].spread - 1e-9).abs() < 1e-15);
        let z = cluster_spectrum(&[0.0; 4], 1e-6);
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 4);
    }

    #[test]
    fn min_multiplicity_examples() {
        assert_eq!(min_multiplicity(&SymMatrix::identity(4), CLUSTER_TOL).unwrap(), 4);
        let d = SymMatrix::from_diagonal(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(min_multiplicity(&d, CLUSTER_TOL).unwrap(), 1);
    }

    #[test]
    fn spec_validation_and_json() {
        assert!(SpectrumSpec::new(&[(1.0, 1), (1.0 + 1e-9, 1)]).is_err());
        assert!(SpectrumSpec::new(&[(1.0, 0)]).is_err());
        let s = SpectrumSpec::new(&[(2.0, 1), (1.0, 2)]).unwrap();
        assert_eq!(s.dimension(), 3);
        assert_eq!(s.expanded().unwrap(), vec![1.0, 1.0, 2.0]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"[{"value":1.0,"multiplicity":2},{"value":2.0,"multiplicity":1}]"#);
        let f: SpectrumSpec =
            serde_json::from_str(r#"[{"value":null,"multiplicity":3}]"#).unwrap();
        assert_eq!(f.expanded(), None);
    }

    proptest! {
        #[test]
        fn clusters_sum_and_idempotent(mut v in proptest::collection::vec(prop_oneof![-3.0..3.0f64, Just(1.0), Just(-2.0)], 1..20)) {
            v.sort_by(f64::total_cmp);
            let c = cluster_spectrum(&v, 1e-6);
            prop_assert_eq!(c.iter().map(|c| c.multiplicity).sum::<usize>(), v.len());
            let reps: Vec<f64> = c.iter().map(|c| c.value).collect();
            let again = cluster_spectrum(&reps, 1e-6);
            prop_assert_eq!(again.len(), c.len());
            for (a, b) in again.iter().zip(&c) {
                prop_assert_eq!(a.value, b.value);
            }
        }
    }
}
