//! Python module `wsat`: graphs, patterns, closure, certificates, the
//! extremal families and exact search.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wsat_core::constructions::{self, FamilyInstance};
use wsat_core::percolation;
use wsat_core::search::{self, SearchConfig};
use wsat_core::{canonical_key, certfile, graph6, Edge, Graph, Pattern, Witness};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "wsat", from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: Graph,
}

impl From<Graph> for PyGraph {
    fn from(inner: Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph::from_edges(n, &edges).map_err(value_err)?.into())
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(graph6::decode(text.trim()).map_err(value_err)?.into())
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(Graph::complete(n).map_err(value_err)?.into())
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Ok(Graph::path(n).map_err(value_err)?.into())
    }

    fn to_graph6(&self) -> String {
        graph6::encode(&self.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().map(|e| (e.u, e.v)).collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.order() && v < self.inner.order() && self.inner.has_edge(u, v)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> PyResult<()> {
        let e = Edge::new(u, v).map_err(value_err)?;
        self.inner.add_edge(e).map_err(value_err)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.order() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn remove_vertex(&self, v: usize) -> PyResult<Self> {
        Ok(self.inner.remove_vertex(v).map_err(value_err)?.into())
    }

    fn canonical_key(&self) -> String {
        canonical_key(&self.inner)
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self == other
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={}, graph6='{}')",
            self.inner.order(),
            self.inner.edge_count(),
            graph6::encode(&self.inner)
        )
    }
}

#[pyclass(name = "Pattern", module = "wsat", from_py_object)]
#[derive(Clone, Copy)]
pub struct PyPattern {
    inner: Pattern,
}

#[pymethods]
impl PyPattern {
    /// `K_{s,t}`; the sides are normalized so that `s <= t`.
    #[staticmethod]
    fn kst(s: usize, t: usize) -> PyResult<Self> {
        Ok(PyPattern {
            inner: Pattern::kst(s, t).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn clique(r: usize) -> PyResult<Self> {
        Ok(PyPattern {
            inner: Pattern::clique(r).map_err(value_err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Pattern({})", self.inner)
    }
}

fn witness_dict<'py>(py: Python<'py>, w: &Witness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match *w {
        Witness::Biclique { side_s, side_t } => {
            d.set_item("side_s", side_s.to_vec())?;
            d.set_item("side_t", side_t.to_vec())?;
        }
        Witness::Clique { vertices } => d.set_item("clique", vertices.to_vec())?,
    }
    Ok(d)
}

/// A copy of the pattern in `g` as a dict of vertex lists, or `None`.
#[pyfunction]
fn find_copy<'py>(
    py: Python<'py>,
    g: &PyGraph,
    p: PyPattern,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    wsat_core::pattern::contains(&g.inner, p.inner)
        .map_err(value_err)?
        .map(|w| witness_dict(py, &w))
        .transpose()
}

/// Bootstrap closure: `{"graph", "complete", "steps"}` with `steps` the
/// added edges in order.
#[pyfunction]
fn closure<'py>(py: Python<'py>, g: &PyGraph, p: PyPattern) -> PyResult<Bound<'py, PyDict>> {
    let out = percolation::closure(&g.inner, p.inner).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("graph", PyGraph::from(out.final_graph).into_pyobject(py)?)?;
    d.set_item("complete", out.complete)?;
    let steps: Vec<(usize, usize)> = out.added.iter().map(|s| (s.edge.u, s.edge.v)).collect();
    d.set_item("steps", steps)?;
    Ok(d)
}

#[pyfunction]
fn is_weakly_saturated(g: &PyGraph, p: PyPattern) -> PyResult<bool> {
    percolation::is_weakly_saturated(&g.inner, p.inner).map_err(value_err)
}

/// Certificate JSON for a weakly saturated graph.
#[pyfunction]
fn extract_certificate(g: &PyGraph, p: PyPattern) -> PyResult<String> {
    let c = percolation::extract_certificate(&g.inner, p.inner).map_err(value_err)?;
    Ok(certfile::to_json(&c))
}

/// `(True, None)` for a valid certificate, else `(False, reason)`.
#[pyfunction]
fn verify_certificate(json: &str) -> (bool, Option<String>) {
    match certfile::from_json(json) {
        Ok(c) => match percolation::verify_certificate(&c) {
            Ok(()) => (true, None),
            Err(v) => (false, Some(v.to_string())),
        },
        Err(e) => (false, Some(e.to_string())),
    }
}

/// Exact `wsat(n, p)` by exhaustive search from `m_lo` edges.
#[pyfunction]
#[pyo3(signature = (n, p, workers = None, dedup = true, m_lo = 0))]
fn wsat_exact<'py>(
    py: Python<'py>,
    n: usize,
    p: PyPattern,
    workers: Option<usize>,
    dedup: bool,
    m_lo: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = SearchConfig::new(n, p.inner).with_dedup(dedup);
    if let Some(w) = workers {
        cfg = cfg.with_workers(w);
    }
    cfg.m_lo = m_lo;
    let res = py.detach(|| search::wsat_exact(&cfg)).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("value", res.value)?;
    d.set_item("witness", res.witness.as_ref().map(graph6::encode))?;
    let all: Vec<String> = res.all_witnesses.iter().map(graph6::encode).collect();
    d.set_item("witnesses", all)?;
    d.set_item("graphs_tested", res.graphs_tested)?;
    d.set_item(
        "certificate",
        res.certificate.as_ref().map(certfile::to_json),
    )?;
    Ok(d)
}

/// Closed-form value of `wsat(n, p)` where one is known.
#[pyfunction]
fn predicted(n: usize, p: PyPattern) -> Option<usize> {
    search::predicted(n, p.inner)
}

fn family_graph(inst: wsat_core::Result<FamilyInstance>) -> PyResult<PyGraph> {
    Ok(inst.map_err(value_err)?.graph.into())
}

#[pyfunction]
fn complement_path(s: usize, t: usize) -> PyResult<PyGraph> {
    family_graph(constructions::complement_path(s, t))
}

#[pyfunction]
fn complement_path_union_k1(s: usize, t: usize) -> PyResult<PyGraph> {
    family_graph(constructions::complement_path_union_k1(s, t))
}

#[pyfunction]
fn gnt(n: usize, t: usize) -> PyResult<PyGraph> {
    family_graph(constructions::gnt(n, t))
}

#[pyfunction]
#[pyo3(signature = (x, y, z = 0))]
fn xyz_graph(x: usize, y: usize, z: usize) -> PyResult<PyGraph> {
    family_graph(constructions::xyz_graph(x, y, z))
}

#[pyfunction]
fn h_graph(x: usize, y1: usize, y2: usize, z: usize) -> PyResult<PyGraph> {
    family_graph(constructions::h_graph(x, y1, y2, z))
}

#[pyfunction]
fn clique_join(n: usize, r: usize) -> PyResult<PyGraph> {
    family_graph(constructions::clique_join(n, r))
}

/// Certificate JSON of the family's own addition order, if it has one.
#[pyfunction]
fn suggested_certificate(family: &str, s: usize, t: usize) -> PyResult<Option<String>> {
    let inst = match family {
        "complement-path" => constructions::complement_path(s, t),
        "complement-path-union-k1" => constructions::complement_path_union_k1(s, t),
        other => return Err(value_err(format!("no addition order for family {other:?}"))),
    }
    .map_err(value_err)?;
    Ok(inst.certificate().as_ref().map(certfile::to_json))
}

#[pyfunction]
fn pendant_extend(g: &PyGraph, targets: Vec<usize>) -> PyResult<PyGraph> {
    Ok(constructions::pendant_extend(&g.inner, &targets)
        .map_err(value_err)?
        .into())
}

#[pymodule]
fn wsat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPattern>()?;
    m.add_function(wrap_pyfunction!(find_copy, m)?)?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(is_weakly_saturated, m)?)?;
    m.add_function(wrap_pyfunction!(extract_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(wsat_exact, m)?)?;
    m.add_function(wrap_pyfunction!(predicted, m)?)?;
    m.add_function(wrap_pyfunction!(complement_path, m)?)?;
    m.add_function(wrap_pyfunction!(complement_path_union_k1, m)?)?;
    m.add_function(wrap_pyfunction!(gnt, m)?)?;
    m.add_function(wrap_pyfunction!(xyz_graph, m)?)?;
    m.add_function(wrap_pyfunction!(h_graph, m)?)?;
    m.add_function(wrap_pyfunction!(clique_join, m)?)?;
    m.add_function(wrap_pyfunction!(suggested_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(pendant_extend, m)?)?;
    Ok(())
}
