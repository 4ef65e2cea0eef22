//! Python bindings. Structured values cross the boundary as JSON strings in the
//! same format the command line reads and writes.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use mmforge_core::bounds::{catalog as catalog_rows, known_mm as known, structural_bounds as structural};
use mmforge_core::constructors::{bipartite_matrix, complete_graph_matrix, reorient_bipartite};
use mmforge_core::eiglab::{eigh, min_multiplicity as min_mult, verify_certificate};
use mmforge_core::graph::parse_edge_list;
use mmforge_core::searcher::{search_mm, SearchConfig};
use mmforge_core::seed::DEFAULT_SEED;
use mmforge_core::{Certificate, FamilyDescriptor, MmError, SpectrumSpec, SymMatrix};

fn err(e: MmError) -> PyErr {
    match e {
        MmError::GenericPosition { .. } | MmError::NoConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(format!("json: {e}"))
}

fn to_json(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(json_err)
}

fn family(text: &str) -> PyResult<FamilyDescriptor> {
    let desc: FamilyDescriptor = serde_json::from_str(text).map_err(json_err)?;
    desc.validate().map_err(err)?;
    Ok(desc)
}

/// Eigenvalues of a symmetric matrix given as a list of rows, ascending.
#[pyfunction]
fn eigenvalues(rows: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let a = SymMatrix::from_rows(&rows).map_err(err)?;
    Ok(eigh(&a).map_err(err)?.values)
}

/// Smallest cluster size in the spectrum of `rows` at relative tolerance `tol`.
#[pyfunction]
#[pyo3(signature = (rows, tol = 1e-6))]
fn min_multiplicity(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<usize> {
    let a = SymMatrix::from_rows(&rows).map_err(err)?;
    min_mult(&a, tol).map_err(err)
}

/// Catalogued witness for a family descriptor, as certificate JSON.
#[pyfunction]
#[pyo3(signature = (family_json, seed = DEFAULT_SEED))]
fn construct(family_json: &str, seed: u64) -> PyResult<String> {
    let b = known(&family(family_json)?, seed).map_err(err)?;
    let w = b.witness.ok_or_else(|| PyValueError::new_err("no constructor witness for this family"))?;
    to_json(&w)
}

/// Matrix in `S(K_n)` with the given spectrum (JSON list of value/multiplicity items).
#[pyfunction]
#[pyo3(signature = (spectrum_json, seed = DEFAULT_SEED))]
fn complete_matrix(spectrum_json: &str, seed: u64) -> PyResult<String> {
    let spec: SpectrumSpec = serde_json::from_str(spectrum_json).map_err(json_err)?;
    to_json(&complete_graph_matrix(&spec, None, seed).map_err(err)?)
}

/// Matrix in `S(K_{m,n})` with eigenvalues `±λ_i` and zeros.
#[pyfunction]
#[pyo3(signature = (m, n, lambdas, seed = DEFAULT_SEED))]
fn bipartite(m: usize, n: usize, lambdas: Vec<f64>, seed: u64) -> PyResult<String> {
    let c = bipartite_matrix(m.min(n), m.max(n), &lambdas, seed).map_err(err)?;
    to_json(&reorient_bipartite(c, m, n).map_err(err)?)
}

/// Re-checks certificate JSON; returns `(passed, diagnostics)`.
#[pyfunction]
fn verify(cert_json: &str) -> PyResult<(bool, Vec<String>)> {
    let c: Certificate = serde_json::from_str(cert_json).map_err(json_err)?;
    let v = verify_certificate(&c);
    Ok((v.passed, v.diagnostics))
}

/// Known exact value (with witness when one exists) for a family, as JSON.
#[pyfunction]
#[pyo3(signature = (family_json, seed = DEFAULT_SEED))]
fn known_mm(family_json: &str, seed: u64) -> PyResult<String> {
    to_json(&known(&family(family_json)?, seed).map_err(err)?)
}

/// Structural bounds for a graph given as edge-list text, as JSON.
#[pyfunction]
#[pyo3(signature = (edges, tree_budget = 100_000))]
fn structural_bounds(edges: &str, tree_budget: usize) -> PyResult<String> {
    let g = parse_edge_list(edges).map_err(err)?;
    to_json(&structural(&g, tree_budget).map_err(err)?)
}

/// Numerical search on an edge-list graph; returns the search result as JSON.
#[pyfunction]
#[pyo3(signature = (edges, config_json = None))]
fn search(py: Python<'_>, edges: &str, config_json: Option<&str>) -> PyResult<String> {
    let g = parse_edge_list(edges).map_err(err)?;
    let cfg: SearchConfig = match config_json {
        Some(c) => serde_json::from_str(c).map_err(json_err)?,
        None => SearchConfig::default(),
    };
    let found = py.detach(|| search_mm(&g, &cfg)).map_err(err)?;
    to_json(&found)
}

/// Table of families with known exact values, as JSON.
#[pyfunction]
fn catalog() -> PyResult<String> {
    to_json(&catalog_rows())
}

#[pymodule]
fn mmforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(min_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(complete_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(known_mm, m)?)?;
    m.add_function(wrap_pyfunction!(structural_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
