//! Python bindings: bound records, witness constructions, verification and
//! the bound table.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use permbound_core::bounds::{self, BoundRecord};
use permbound_core::combinatorics::{ball_volume as core_ball_volume, derangement_count};
use permbound_core::constructions::{self, GreedyOrder, VerifyPolicy, Witness};
use permbound_core::gfq::{count_pps_by_degree, make_field, DEFAULT_PP_BUDGET};
use permbound_core::perm::{self, PermutationArray};
use permbound_core::tabulator::{self, CliqueSource, TableOptions};
use permbound_core::{Count, Error, Permutation};

create_exception!(permbound, PermboundError, PyException);
create_exception!(permbound, CapacityError, PermboundError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Capacity { .. } => CapacityError::new_err(e.to_string()),
        _ => PermboundError::new_err(e.to_string()),
    }
}

fn to_pa(n: usize, members: Vec<Vec<usize>>) -> PyResult<PermutationArray> {
    let perms = members.iter().map(|m| Permutation::from_slice(m)).collect::<Result<Vec<_>, _>>().map_err(py_err)?;
    PermutationArray::new(n, perms).map_err(py_err)
}

/// A bound on P(n, d) with the chain of records it was derived from.
#[pyclass(name = "BoundRecord", frozen)]
struct PyBoundRecord {
    inner: Arc<BoundRecord>,
}

#[pymethods]
impl PyBoundRecord {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d
    }

    #[getter]
    fn sense(&self) -> String {
        self.inner.sense.to_string()
    }

    #[getter]
    fn value(&self) -> Count {
        self.inner.value.clone()
    }

    #[getter]
    fn method(&self) -> String {
        self.inner.method.clone()
    }

    #[getter]
    fn note(&self) -> Option<String> {
        self.inner.note.clone()
    }

    #[getter]
    fn inputs(&self) -> Vec<PyBoundRecord> {
        self.inner.inputs.iter().map(|r| PyBoundRecord { inner: r.clone() }).collect()
    }

    fn chain_len(&self) -> usize {
        self.inner.chain_len()
    }

    /// Re-evaluates the derivation chain from scratch.
    fn replay(&self) -> PyResult<Count> {
        bounds::replay(&self.inner).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("BoundRecord({})", self.inner.to_line())
    }
}

/// A constructed permutation array with its verified distance.
#[pyclass(name = "Witness", frozen)]
struct PyWitness {
    inner: Arc<Witness>,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn n(&self) -> usize {
        self.inner.claim().n
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.claim().m
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.claim().d
    }

    #[getter]
    fn tag(&self) -> String {
        self.inner.provenance().tag.clone()
    }

    fn members(&self) -> Vec<Vec<u16>> {
        self.inner.pa().members().iter().map(|p| p.images().to_vec()).collect()
    }

    fn sidecar_json(&self) -> String {
        self.inner.sidecar_json()
    }

    /// The array in the plain-text file format.
    fn to_text(&self) -> String {
        perm::io::to_string(self.inner.pa())
    }

    fn __len__(&self) -> usize {
        self.inner.pa().len()
    }

    fn __repr__(&self) -> String {
        let c = self.inner.claim();
        format!("Witness(tag={:?}, n={}, m={}, d={})", self.inner.provenance().tag, c.n, c.m, c.d)
    }
}

fn wrap(w: permbound_core::Result<Witness>) -> PyResult<PyWitness> {
    w.map(|w| PyWitness { inner: Arc::new(w) }).map_err(py_err)
}

#[pyfunction]
fn ball_volume(n: u64, r: i64) -> PyResult<Count> {
    core_ball_volume(n, r).map_err(py_err)
}

#[pyfunction]
fn derangements(k: u64) -> Count {
    derangement_count(k)
}

#[pyfunction]
fn gv_lower(n: usize, d: usize) -> PyResult<PyBoundRecord> {
    bounds::gv_lower(n, d).map(|r| PyBoundRecord { inner: Arc::new(r) }).map_err(py_err)
}

/// Every formula bound on P(n, d), lower bounds first.
#[pyfunction]
#[pyo3(signature = (n, d, pp_budget = DEFAULT_PP_BUDGET))]
fn all_bounds(n: usize, d: usize, pp_budget: u64) -> PyResult<Vec<PyBoundRecord>> {
    let recs = tabulator::all_bounds(n, d, pp_budget).map_err(py_err)?;
    Ok(recs.into_iter().map(|r| PyBoundRecord { inner: Arc::new(r) }).collect())
}

#[pyfunction]
#[pyo3(signature = (q, seed = 0))]
fn affine_pa(q: u64, seed: u64) -> PyResult<PyWitness> {
    wrap(constructions::affine_pa(q, &VerifyPolicy::with_seed(seed)))
}

#[pyfunction]
fn pgl2_pa(q: u64) -> PyResult<PyWitness> {
    wrap(constructions::pgl2_pa(q))
}

#[pyfunction]
fn mathieu_pa(py: Python<'_>, which: usize) -> PyResult<PyWitness> {
    wrap(py.detach(|| constructions::mathieu_pa(which)))
}

#[pyfunction]
#[pyo3(signature = (witness, seed = 0))]
fn reduce_d3(py: Python<'_>, witness: &PyWitness, seed: u64) -> PyResult<PyWitness> {
    let w = witness.inner.clone();
    wrap(py.detach(|| constructions::reduce_d3(&w, &VerifyPolicy::with_seed(seed))))
}

#[pyfunction]
#[pyo3(signature = (witness, seed = 0))]
fn reduce_d2(py: Python<'_>, witness: &PyWitness, seed: u64) -> PyResult<PyWitness> {
    let w = witness.inner.clone();
    wrap(py.detach(|| constructions::reduce_d2(&w, &VerifyPolicy::with_seed(seed))))
}

/// Lexicographic greedy code, or a shuffled scan when `seed` is given.
#[pyfunction]
#[pyo3(signature = (n, d, seed = None))]
fn greedy_gv(py: Python<'_>, n: usize, d: usize, seed: Option<u64>) -> PyResult<PyWitness> {
    let order = seed.map_or(GreedyOrder::Lex, GreedyOrder::Shuffled);
    wrap(py.detach(|| constructions::greedy_gv(n, d, order, &VerifyPolicy::with_seed(seed.unwrap_or(0)))))
}

#[pyfunction]
#[pyo3(signature = (n, d, budget = constructions::DEFAULT_CLIQUE_BUDGET))]
fn clique_lower(py: Python<'_>, n: usize, d: usize, budget: u64) -> PyResult<PyWitness> {
    wrap(py.detach(|| constructions::clique_lower(n, d, budget)))
}

/// Exact minimum distance of a list of one-line permutations; `None` for
/// fewer than two.
#[pyfunction]
fn min_distance(py: Python<'_>, members: Vec<Vec<usize>>) -> PyResult<Option<usize>> {
    let n = members.first().map_or(0, Vec::len);
    let pa = to_pa(n, members)?;
    Ok(py.detach(|| perm::min_distance(&pa)))
}

/// Numbers of permutation polynomials over GF(q) of degree 1..=max_deg.
#[pyfunction]
#[pyo3(signature = (q, max_deg, monic = false, budget = DEFAULT_PP_BUDGET))]
fn count_pps(q: u64, max_deg: usize, monic: bool, budget: u64) -> PyResult<Vec<Count>> {
    let f = make_field(q).map_err(py_err)?;
    let m = count_pps_by_degree(&f, max_deg, monic, budget).map_err(py_err)?;
    Ok(m.into_values().collect())
}

/// `(n, d, lower, method, upper)`.
type TableRow = (usize, usize, Count, String, Count);

/// Best-known lower bounds as `(n, d, lower, method, upper)` tuples.
#[pyfunction]
#[pyo3(signature = (n_max, mathieu = false, anchor_max_n = 0, clique_max_n = None))]
fn build_table(
    py: Python<'_>,
    n_max: usize,
    mathieu: bool,
    anchor_max_n: usize,
    clique_max_n: Option<usize>,
) -> PyResult<Vec<TableRow>> {
    let opts = TableOptions {
        mathieu,
        anchor_max_n,
        clique: clique_max_n.map(|max_n| CliqueSource { max_n, budget: constructions::DEFAULT_CLIQUE_BUDGET }),
        ..TableOptions::default()
    };
    let t = py.detach(|| tabulator::build_table(n_max, &opts)).map_err(py_err)?;
    Ok(t.cells
        .iter()
        .map(|(&(n, d), c)| (n, d, c.lower.value.clone(), c.lower.method.clone(), c.upper.value.clone()))
        .collect())
}

#[pyfunction]
fn render_comparison(qs: Vec<u64>) -> PyResult<String> {
    tabulator::render_comparison(&qs).map_err(py_err)
}

#[pymodule]
fn permbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PermboundError", m.py().get_type::<PermboundError>())?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add_class::<PyBoundRecord>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(ball_volume, m)?)?;
    m.add_function(wrap_pyfunction!(derangements, m)?)?;
    m.add_function(wrap_pyfunction!(gv_lower, m)?)?;
    m.add_function(wrap_pyfunction!(all_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(affine_pa, m)?)?;
    m.add_function(wrap_pyfunction!(pgl2_pa, m)?)?;
    m.add_function(wrap_pyfunction!(mathieu_pa, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_d3, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_d2, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_gv, m)?)?;
    m.add_function(wrap_pyfunction!(clique_lower, m)?)?;
    m.add_function(wrap_pyfunction!(min_distance, m)?)?;
    m.add_function(wrap_pyfunction!(count_pps, m)?)?;
    m.add_function(wrap_pyfunction!(build_table, m)?)?;
    m.add_function(wrap_pyfunction!(render_comparison, m)?)?;
    Ok(())
}
