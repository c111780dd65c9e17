//! Python bindings: cells are passed as `(k, n, selector)` with the CLI selector syntax.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use positroid::cli::{bundle, parse_cell, verify_cells};
use positroid::twist::TwistTable;
use positroid::verify::{all_cells, cell_id, Cell, Suite, VerifyOptions};

fn value_error(msg: String) -> PyErr {
    PyValueError::new_err(msg)
}

fn load(k: usize, n: usize, cell: &str) -> PyResult<Cell> {
    let le = parse_cell(k, n, cell).map_err(value_error)?;
    Cell::new(le).map_err(value_error)
}

/// Canonical ids of every cell of Gr(k, n).
#[pyfunction]
fn enumerate(k: usize, n: usize) -> PyResult<Vec<String>> {
    if k == 0 || k > n {
        return Err(value_error(format!("need 1 <= k <= n, got k = {}, n = {}", k, n)));
    }
    Ok(all_cells(k, n).iter().map(cell_id).collect())
}

#[pyfunction]
fn canonical_id(k: usize, n: usize, cell: &str) -> PyResult<String> {
    Ok(load(k, n, cell)?.id())
}

/// The bundle produced by `positroid build`, as a JSON string.
#[pyfunction]
fn build_json(k: usize, n: usize, cell: &str) -> PyResult<String> {
    let c = load(k, n, cell)?;
    let v = bundle(&c).map_err(value_error)?;
    serde_json::to_string(&v).map_err(|e| value_error(e.to_string()))
}

#[pyfunction]
fn quiver_dot(k: usize, n: usize, cell: &str) -> PyResult<String> {
    Ok(load(k, n, cell)?.quiver.to_dot("Q"))
}

/// Face index to twisted minor `q_r` as a monomial in the `t` variables.
#[pyfunction]
fn twist_table(k: usize, n: usize, cell: &str) -> PyResult<BTreeMap<usize, String>> {
    let c = load(k, n, cell)?;
    let table = TwistTable::new(&c.le, &c.graph);
    Ok(table.q_in_t.iter().map(|(r, m)| (*r, m.to_string())).collect())
}

/// Run suites on one cell. Returns `(passed, failures)`.
#[pyfunction]
#[pyo3(signature = (k, n, cell, suites=None, depth=3, samples=20, seed=0))]
fn verify(
    k: usize,
    n: usize,
    cell: &str,
    suites: Option<Vec<String>>,
    depth: usize,
    samples: usize,
    seed: u64,
) -> PyResult<(bool, Vec<String>)> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_, String>>().map_err(value_error)?,
    };
    let le = parse_cell(k, n, cell).map_err(value_error)?;
    let opts = VerifyOptions { depth, samples, seed };
    let outcomes = verify_cells(&[le], &suites, &opts, false).map_err(value_error)?;
    let failures: Vec<String> =
        outcomes.iter().flat_map(|o| o.failures.iter().map(move |f| format!("{}: {}", o.suite, f))).collect();
    Ok((failures.is_empty(), failures))
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

#[pymodule]
fn positroid_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_id, m)?)?;
    m.add_function(wrap_pyfunction!(build_json, m)?)?;
    m.add_function(wrap_pyfunction!(quiver_dot, m)?)?;
    m.add_function(wrap_pyfunction!(twist_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    Ok(())
}
