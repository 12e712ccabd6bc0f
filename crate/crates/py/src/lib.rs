//! Python bindings. Graphs are `opdi.Graph(n, edges)`; completions come
//! back as plain dicts and infinite distances as `None`.

use opdi_core::{self as core, Completion, Dist, Family, ObstructionSpec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn dist(d: Dist) -> Option<u32> {
    d.finite()
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "opdi", frozen)]
#[derive(Clone)]
struct PyGraph {
    g: core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { g: core::Graph::from_edges(n, edges).map_err(err)? })
    }

    /// Reads the `n m` header plus one edge per line format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { g: core::Graph::parse(text).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed, connected = false))]
    fn random(n: usize, seed: u64, connected: bool) -> Self {
        PyGraph { g: core::random_outerplanar(n, seed, connected) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.g.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.g.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.g.edges().collect()
    }

    fn diameter(&self) -> Option<u32> {
        dist(core::diameter(&self.g))
    }

    fn is_outerplanar(&self) -> bool {
        core::is_outerplanar(&self.g)
    }

    fn is_connected(&self) -> bool {
        self.g.is_connected()
    }

    fn to_edge_list(&self) -> String {
        self.g.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.g.n(), self.g.m())
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.g == other.g
    }
}

fn completion<'py>(py: Python<'py>, c: &Completion) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("added", c.added.clone())?;
    d.set_item("outer_order", c.outer_order.clone())?;
    d.set_item("diameter", dist(c.diameter))?;
    Ok(d)
}

/// Whether `g` has an outerplanar completion of diameter at most `d`.
#[pyfunction]
fn decide(py: Python<'_>, g: &PyGraph, d: u32) -> PyResult<bool> {
    let g = g.g.clone();
    py.detach(move || core::decide(&g, d)).map_err(err)
}

/// A completion of diameter at most `d`, or `None`.
#[pyfunction]
fn complete<'py>(py: Python<'py>, g: &PyGraph, d: u32) -> PyResult<Option<Bound<'py, PyDict>>> {
    let g = g.g.clone();
    let c = py.detach(move || core::complete(&g, d)).map_err(err)?;
    c.map(|c| completion(py, &c)).transpose()
}

/// The optimum bound and a completion attaining it.
#[pyfunction]
fn minimize<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<(u32, Bound<'py, PyDict>)> {
    let g = g.g.clone();
    let (v, c) = py.detach(move || core::minimum_completion(&g)).map_err(err)?;
    Ok((v, completion(py, &c)?))
}

/// Fan triangulation, at most twice the optimum.
#[pyfunction]
fn approx<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let c = core::star_triangulate(&g.g).map_err(err)?;
    completion(py, &c)
}

/// Brute-force answer for small graphs: a bool for a bound `d`, the optimum
/// when `d` is `None`.
#[pyfunction]
#[pyo3(signature = (g, d = None))]
fn oracle(py: Python<'_>, g: &PyGraph, d: Option<u32>) -> PyResult<Py<PyAny>> {
    if g.g.n() > core::ORACLE_CAP {
        return Err(err(format!("the oracle is limited to n <= {}", core::ORACLE_CAP)));
    }
    Ok(match d {
        Some(d) => core::oracle_decide(&g.g, d).map_err(err)?.into_pyobject(py)?.to_owned().into_any().unbind(),
        None => core::oracle_opdi(&g.g).map_err(err)?.into_pyobject(py)?.into_any().unbind(),
    })
}

/// Ordered chords of a maximum parallel matching of a maximal outerplanar
/// graph, and the outer cycle they refer to.
#[pyfunction]
fn matching(g: &PyGraph) -> PyResult<(Vec<(usize, usize)>, Vec<usize>)> {
    let m = core::MaximalOuterplanar::from_graph(&g.g).map_err(err)?;
    let pm = core::maximum_parallel_matching(&m);
    Ok((pm.edges, pm.outer_order))
}

/// Members of obstruction family `"A"` or `"B"` at index `i`.
#[pyfunction]
fn obstruction(family: &str, i: u32) -> PyResult<Vec<PyGraph>> {
    let family = match family {
        "A" | "a" => Family::A,
        "B" | "b" => Family::B,
        other => return Err(err(format!("unknown family {other:?}; expected \"A\" or \"B\""))),
    };
    Ok(core::gen_obstruction(ObstructionSpec { family, index: i }).into_iter().map(|g| PyGraph { g }).collect())
}

#[pymodule]
fn opdi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(approx, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(matching, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction, m)?)?;
    m.add("ORACLE_CAP", core::ORACLE_CAP)?;
    Ok(())
}
