//! Python bindings: families, witnesses, exact search, and the chain and
//! cross-support-tree machinery. Reports come back as plain dicts and lists.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use kcross_core::constructions;
use kcross_core::family::{parse_family, serialize_family};
use kcross_core::proof;
use kcross_core::search::{self, SearchOptions, Universe};
use kcross_core::{Mode, SubsetMask};

create_exception!(kcross, KcrossError, PyValueError);

fn err(e: kcross_core::Error) -> PyErr {
    KcrossError::new_err(e.to_string())
}

fn mode(s: &str) -> PyResult<Mode> {
    s.parse().map_err(err)
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (_, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, value_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| KcrossError::new_err(e.to_string()))?;
    value_to_py(py, &v)
}

fn lists(sets: &[SubsetMask]) -> Vec<Vec<u32>> {
    sets.iter().map(|s| s.elements().collect()).collect()
}

/// A family of distinct subsets of `{0, …, n−1}`, kept in canonical order.
#[pyclass(name = "Family", module = "kcross", frozen)]
struct PyFamily(kcross_core::Family);

#[pymethods]
impl PyFamily {
    #[new]
    fn new(n: usize, sets: Vec<Vec<u32>>) -> PyResult<Self> {
        kcross_core::Family::from_lists(n, &sets).map(Self).map_err(err)
    }

    /// Parses the family file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_family(text).map(|p| Self(p.family)).map_err(err)
    }

    fn to_text(&self) -> String {
        serialize_family(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.ground().size()
    }

    #[getter]
    fn sets(&self) -> Vec<Vec<u32>> {
        self.0.to_lists()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Family(n={}, {})", self.0.ground().size(), self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn predicates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.predicates())
    }

    /// The lexicographically least `k` pairwise crossing members, or `None`.
    fn witness(&self, k: usize, mode: &str) -> PyResult<Option<Vec<Vec<u32>>>> {
        if k < 2 {
            return Err(KcrossError::new_err("k must be at least 2"));
        }
        let m = self::mode(mode)?;
        Ok(kcross_core::find_pairwise_crossing_witness(&self.0, k, m).map(|w| lists(w.sets())))
    }

    fn is_cross_free(&self, k: usize, mode: &str) -> PyResult<bool> {
        Ok(self.witness(k, mode)?.is_none())
    }

    /// Minimum chain partition and a maximum antichain of the same size.
    fn dilworth(&self) -> (Vec<Vec<Vec<u32>>>, Vec<Vec<u32>>) {
        let d = kcross_core::dilworth_partition(&self.0);
        (d.chains.iter().map(|c| lists(c)).collect(), lists(&d.max_antichain))
    }

    fn weak_reduce(&self, k: usize) -> PyResult<Self> {
        proof::weak_reduce(&self.0, k).map(Self).map_err(err)
    }
}

/// Relation name of two sets over a ground set of size `n`.
#[pyfunction]
fn classify_pair(a: Vec<u32>, b: Vec<u32>, n: usize) -> PyResult<String> {
    let f = kcross_core::Family::from_lists(n, &[a.clone(), b.clone()]).map_err(err)?;
    let rel = kcross_core::classify_pair(SubsetMask::from_elements(a), SubsetMask::from_elements(b), f.ground());
    Ok(rel.name().to_string())
}

#[pyfunction]
fn gen_laminar_max(n: usize) -> PyResult<PyFamily> {
    constructions::gen_laminar_max(n).map(PyFamily).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, include_trivial = false))]
fn gen_cyclic_intervals(n: usize, include_trivial: bool) -> PyResult<PyFamily> {
    constructions::gen_cyclic_intervals(n, include_trivial)
        .map(PyFamily)
        .map_err(err)
}

#[pyfunction]
fn gen_random_cross_free(n: usize, k: usize, mode: &str, seed: u64) -> PyResult<PyFamily> {
    constructions::gen_random_cross_free(n, k, self::mode(mode)?, seed)
        .map(PyFamily)
        .map_err(err)
}

/// Exact maximum `k`-cross-free subfamily of `universe`.
#[pyfunction]
#[pyo3(signature = (universe, k, mode, threads = 1, node_limit = None))]
fn max_cross_free<'py>(
    py: Python<'py>,
    universe: &PyFamily,
    k: usize,
    mode: &str,
    threads: usize,
    node_limit: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let m = self::mode(mode)?;
    let opts = SearchOptions { threads, node_limit };
    let r = py
        .detach(|| search::max_cross_free(&universe.0, k, m, &opts))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("size", r.size)?;
    d.set_item("proven_optimal", r.proven_optimal)?;
    d.set_item("nodes_explored", r.nodes_explored)?;
    d.set_item("family", PyFamily(r.best))?;
    Ok(d)
}

/// Rows of exact maxima next to the closed-form bounds, `n` and `k` inclusive.
#[pyfunction]
fn bound_table<'py>(
    py: Python<'py>,
    n: (usize, usize),
    k: (usize, usize),
    universe: &str,
    mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let u: Universe = universe.parse().map_err(err)?;
    let m = self::mode(mode)?;
    let rows = py
        .detach(|| search::bound_table(n.0..=n.1, k.0..=k.1, u, m, &SearchOptions::default()))
        .map_err(err)?;
    to_py(py, &rows)
}

/// Disjoint continuous chains sharing one ground set.
#[pyclass(name = "ChainCollection", module = "kcross", frozen)]
struct PyChains(proof::ChainCollection);

#[pymethods]
impl PyChains {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        proof::parse_chains(text).map(Self).map_err(err)
    }

    /// Greedy maximal collection of disjoint chains of length `h`.
    #[staticmethod]
    fn extract(family: &PyFamily, h: usize) -> PyResult<Self> {
        proof::extract_disjoint_chains(&family.0, h).map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        proof::serialize_chains(&self.0)
    }

    /// `(base, added)` per chain.
    #[getter]
    fn chains(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.0
            .chains()
            .iter()
            .map(|c| (c.base.elements().collect(), c.added.clone()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("ChainCollection(n={}, {} chains)", self.0.ground().size(), self.0.len())
    }
}

fn ordering(elements: Vec<u32>) -> PyResult<proof::Ordering> {
    proof::Ordering::new(elements).map_err(err)
}

/// Runs the four filtering stages; returns the surviving indices, the drawn
/// ordering (least first), and the full trace.
#[pyfunction]
#[pyo3(signature = (chains, k, seed, multiplier = proof::selection::DEFAULT_SIZE_MULTIPLIER))]
fn select_conditioned_chains<'py>(
    py: Python<'py>,
    chains: &PyChains,
    k: usize,
    seed: u64,
    multiplier: usize,
) -> PyResult<(Vec<usize>, Vec<u32>, Bound<'py, PyAny>)> {
    let s = proof::select_conditioned_chains(&chains.0, k, multiplier, seed).map_err(err)?;
    Ok((s.indices.clone(), s.ordering.elements().to_vec(), to_py(py, &s.trace)?))
}

#[pyfunction]
#[pyo3(signature = (chains, indices, ordering, k, multiplier = proof::selection::DEFAULT_SIZE_MULTIPLIER))]
fn check_conditions<'py>(
    py: Python<'py>,
    chains: &PyChains,
    indices: Vec<usize>,
    ordering: Vec<u32>,
    k: usize,
    multiplier: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let ord = self::ordering(ordering)?;
    let r = proof::check_conditions(&chains.0, &indices, &ord, k, multiplier).map_err(err)?;
    to_py(py, &r)
}

/// Rooted ordered tree of chain indices with labelled edges.
#[pyclass(name = "CrossSupportTree", module = "kcross", frozen)]
struct PyTree(proof::CrossSupportTree);

#[pymethods]
impl PyTree {
    #[staticmethod]
    fn parse_json(text: &str) -> PyResult<Self> {
        proof::CrossSupportTree::parse_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json_string()
    }

    #[getter]
    fn height(&self) -> Option<usize> {
        self.0.height()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn validate<'py>(&self, py: Python<'py>, chains: &PyChains, ordering: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
        let ord = self::ordering(ordering)?;
        let r = proof::validate_tree(&self.0, &chains.0, &ord).map_err(err)?;
        let d = to_py(py, &r)?;
        d.set_item("valid", r.is_valid())?;
        Ok(d)
    }

    /// Keeps the root children at the given positions.
    fn prune_root_children(&self, keep: Vec<usize>) -> PyResult<Self> {
        proof::prune_root_children(&self.0, &keep).map(Self).map_err(err)
    }

    /// `k` pairwise weakly crossing sets of strictly increasing size.
    fn extract_k_crossing(&self, chains: &PyChains, ordering: Vec<u32>, k: usize) -> PyResult<Vec<Vec<u32>>> {
        let ord = self::ordering(ordering)?;
        proof::extract_k_crossing_from_tree(&self.0, &chains.0, &ord, k)
            .map(|w| lists(w.sets()))
            .map_err(err)
    }
}

/// The bundled nine-element example: `(chains, ordering, tree)`.
#[pyfunction]
fn example_tree() -> (PyChains, Vec<u32>, PyTree) {
    let f = proof::fixtures::fig1();
    (PyChains(f.chains), f.ordering.elements().to_vec(), PyTree(f.tree))
}

#[pymodule]
fn kcross(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("KcrossError", m.py().get_type::<KcrossError>())?;
    m.add_class::<PyFamily>()?;
    m.add_class::<PyChains>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(classify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(gen_laminar_max, m)?)?;
    m.add_function(wrap_pyfunction!(gen_cyclic_intervals, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_cross_free, m)?)?;
    m.add_function(wrap_pyfunction!(max_cross_free, m)?)?;
    m.add_function(wrap_pyfunction!(bound_table, m)?)?;
    m.add_function(wrap_pyfunction!(select_conditioned_chains, m)?)?;
    m.add_function(wrap_pyfunction!(check_conditions, m)?)?;
    m.add_function(wrap_pyfunction!(example_tree, m)?)?;
    Ok(())
}
