//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use hypercone::catalog::{builtin_rays, find_ray};
use hypercone::hypergraph::{min_cut_entropy, universal_reduction, ReductionOptions};
use hypercone::io::{graph_to_json, parse_graph};
use hypercone::rational::{format_rational, parse_rational};
use hypercone::states::{build_state, verify_state_entropies, StateOptions};
use hypercone::{
    builtin_library, decode_f10, encode_f10, entropy_vector, expand_to_unit_weights, find_builtin,
    parse_inequality, search_contraction, verify_contraction, ContractionReport, Error, HypergraphBuilder,
    MinCutOptions, QVector, Rational, RankStatus, SearchOptions, SearchOutcome, Subsystem, VerifyOptions,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) | Error::Internal(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

/// Accepts ints, strings such as `"3/2"`, or anything whose `str()` parses.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text: String = obj.str()?.extract()?;
    parse_rational(&text).map_err(py_err)
}

#[pyclass(name = "Hypergraph", frozen)]
struct PyHypergraph {
    inner: hypercone::Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    /// `Hypergraph(n, [(["A", "s"], 1), (["s", "B", "O"], "1/2")])`. Party
    /// labels name boundary vertices; other names become bulk vertices.
    #[new]
    fn new(n: usize, edges: Vec<(Vec<String>, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let mut b = HypergraphBuilder::new(n);
        for (members, w) in &edges {
            let names: Vec<&str> = members.iter().map(String::as_str).collect();
            b = b.edge(&names, rational(w)?);
        }
        Ok(PyHypergraph { inner: b.build().map_err(py_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyHypergraph { inner: parse_graph(text).map_err(py_err)? })
    }

    fn to_json(&self) -> String {
        graph_to_json(&self.inner).to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    /// Entropies of all subsystems as `{label: Fraction}` in canonical order.
    fn entropy_vector<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = entropy_vector(&self.inner, &MinCutOptions::default()).map_err(py_err)?;
        let d = PyDict::new(py);
        for (label, v) in s.labelled() {
            d.set_item(label, fraction(py, &v)?)?;
        }
        Ok(d)
    }

    /// Min-cut entropy and the included vertex names of a minimal cut.
    fn entropy<'py>(&self, py: Python<'py>, subsystem: &str) -> PyResult<(Bound<'py, PyAny>, Vec<String>)> {
        let sub = Subsystem::parse(subsystem, self.inner.n()).map_err(py_err)?;
        let (v, cut) = min_cut_entropy(&self.inner, sub, &MinCutOptions::default()).map_err(py_err)?;
        Ok((fraction(py, &v)?, cut.names(&self.inner).into_iter().map(String::from).collect()))
    }

    /// `(scale, graph)` with unit-weight edges.
    fn expand_to_unit_weights<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, PyHypergraph)> {
        let (scale, g) = expand_to_unit_weights(&self.inner).map_err(py_err)?;
        Ok((fraction(py, &scale)?, PyHypergraph { inner: g }))
    }

    fn universal_reduction(&self) -> PyResult<PyHypergraph> {
        let g = universal_reduction(&self.inner, &ReductionOptions::default()).map_err(py_err)?;
        Ok(PyHypergraph { inner: g })
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, vertices={}, edges={})",
            self.inner.n(),
            self.inner.vertices().len(),
            self.inner.edges().len()
        )
    }
}

#[pyclass(name = "Inequality", frozen)]
struct PyInequality {
    inner: hypercone::Inequality,
}

#[pymethods]
impl PyInequality {
    #[staticmethod]
    fn parse(text: &str, n: usize) -> PyResult<Self> {
        Ok(PyInequality { inner: parse_inequality(text, n).map_err(py_err)? })
    }

    #[staticmethod]
    fn from_q(n: usize, q: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let entries = q.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        let q = QVector::new(n, entries).map_err(py_err)?;
        Ok(PyInequality { inner: hypercone::Inequality::from_q(&q).map_err(py_err)? })
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let e = find_builtin(name).ok_or_else(|| PyValueError::new_err(format!("unknown built-in `{name}`")))?;
        Ok(PyInequality { inner: e.inequality.clone() })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn l(&self) -> usize {
        self.inner.l()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn alpha_total<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.alpha_total())
    }

    #[getter]
    fn beta_total<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.beta_total())
    }

    fn q<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.to_q().entries().iter().map(|r| fraction(py, r)).collect()
    }

    /// `Q . S` on a graph's entropy vector.
    fn evaluate<'py>(&self, py: Python<'py>, graph: &PyHypergraph) -> PyResult<Bound<'py, PyAny>> {
        let s = entropy_vector(&graph.inner, &MinCutOptions::default()).map_err(py_err)?;
        fraction(py, &self.inner.evaluate(&s).map_err(py_err)?)
    }

    /// `(lhs bits, rhs bits)` per party, purifier last.
    fn occurrence_vectors(&self) -> PyResult<Vec<(String, String)>> {
        let occ = self.inner.occurrence_vectors().map_err(py_err)?;
        Ok(occ.lhs.iter().zip(&occ.rhs).map(|(x, y)| (x.to_string(), y.to_string())).collect())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Inequality({:?}, n={})", self.inner.to_string(), self.inner.n())
    }
}

fn report_dict<'py>(py: Python<'py>, report: &ContractionReport) -> PyResult<Bound<'py, PyDict>> {
    let ranks = PyList::empty(py);
    for r in &report.ranks {
        let d = PyDict::new(py);
        d.set_item("k", r.k)?;
        let status = match r.status {
            RankStatus::Verified => "verified",
            RankStatus::Violated => "violated",
            RankStatus::BudgetExceeded => "budget-exceeded",
        };
        d.set_item("status", status)?;
        d.set_item("examined", r.examined)?;
        d.set_item("pruned", r.pruned)?;
        if let Some(w) = &r.witness {
            let wd = PyDict::new(py);
            wd.set_item("domain", w.domain.iter().map(|b| b.to_string()).collect::<Vec<_>>())?;
            wd.set_item("images", w.images.iter().map(|b| b.to_string()).collect::<Vec<_>>())?;
            wd.set_item("lhs", fraction(py, &w.lhs)?)?;
            wd.set_item("rhs", fraction(py, &w.rhs)?)?;
            d.set_item("witness", wd)?;
        }
        ranks.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("ranks", ranks)?;
    out.set_item("fully_proved", report.fully_proved)?;
    Ok(out)
}

/// Verifies a contraction map. Without `f10` the built-in map of the named
/// inequality is used.
#[pyfunction]
#[pyo3(signature = (ineq, f10=None, kmax=2, prune=true, budget=None))]
fn verify_map<'py>(
    py: Python<'py>,
    ineq: &Bound<'py, PyAny>,
    f10: Option<Vec<u64>>,
    kmax: usize,
    prune: bool,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let (inequality, builtin_map) = match ineq.cast::<PyInequality>() {
        Ok(i) => (i.get().inner.clone(), None),
        Err(_) => {
            let name: String = ineq.extract()?;
            let e = find_builtin(&name).ok_or_else(|| PyValueError::new_err(format!("unknown built-in `{name}`")))?;
            (e.inequality.clone(), e.map.clone())
        }
    };
    let map = match f10 {
        Some(values) => {
            let rp = inequality.expand_rhs().map_err(py_err)?.r();
            decode_f10(&values, inequality.l(), rp).map_err(py_err)?
        }
        None => builtin_map.ok_or_else(|| PyValueError::new_err("no map given and no built-in map"))?,
    };
    let mut opts = VerifyOptions { k_max: kmax, prune, ..Default::default() };
    if let Some(b) = budget {
        opts.budget = b;
    }
    let report = py.detach(|| verify_contraction(&map, &inequality, &opts)).map_err(py_err)?;
    report_dict(py, &report)
}

/// Searches for a contraction map; returns `{"outcome", ...}`.
#[pyfunction]
#[pyo3(signature = (ineq, k_target=2, budget=None))]
fn search_map<'py>(py: Python<'py>, ineq: &PyInequality, k_target: usize, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let mut opts = SearchOptions { k_target, ..Default::default() };
    if let Some(b) = budget {
        opts.budget = b;
    }
    let outcome = py.detach(|| search_contraction(&ineq.inner, &opts)).map_err(py_err)?;
    let d = PyDict::new(py);
    match outcome {
        SearchOutcome::Found { map, .. } => {
            d.set_item("outcome", "found")?;
            d.set_item("f10", encode_f10(&map))?;
        }
        SearchOutcome::Unsatisfiable { k, witness } => {
            d.set_item("outcome", "unsatisfiable")?;
            d.set_item("k", k)?;
            d.set_item("domain", witness.domain.iter().map(|b| b.to_string()).collect::<Vec<_>>())?;
        }
        SearchOutcome::Exhausted { nodes } => {
            d.set_item("outcome", "exhausted")?;
            d.set_item("nodes", nodes)?;
        }
        SearchOutcome::BudgetExceeded { nodes } => {
            d.set_item("outcome", "budget-exceeded")?;
            d.set_item("nodes", nodes)?;
        }
    }
    Ok(d)
}

/// Builds the hypergraph state: `{"d", "norm", "kets": [(digits, (a, b))]}`
/// with amplitude `(a + b w) / sqrt(norm)`, `w = exp(2 pi i / 3)`.
#[pyfunction]
#[pyo3(signature = (graph, explicit_two_edges=false))]
fn state<'py>(py: Python<'py>, graph: &PyHypergraph, explicit_two_edges: bool) -> PyResult<Bound<'py, PyDict>> {
    let opts = StateOptions { explicit_two_edges, ..Default::default() };
    let s = build_state(&graph.inner, &opts).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("d", s.d)?;
    d.set_item("parties", s.party_labels())?;
    d.set_item("norm", s.tensor.norm)?;
    let kets: Vec<(String, (i128, i128))> = s
        .kets()
        .into_iter()
        .map(|(digits, z)| {
            let ket = digits.iter().map(|leg| leg.iter().map(|v| v.to_string()).collect::<String>()).collect::<Vec<_>>();
            (ket.join(";"), (z.a, z.b))
        })
        .collect();
    d.set_item("kets", kets)?;
    Ok(d)
}

/// Compares state entropies with min-cut entropies: `(matched, total, all_flat)`.
#[pyfunction]
fn verify_state(py: Python<'_>, graph: &PyHypergraph) -> PyResult<(usize, usize, bool)> {
    let report = py.detach(|| verify_state_entropies(&graph.inner, &StateOptions::default())).map_err(py_err)?;
    Ok((report.matched(), report.entries.len(), report.all_flat))
}

#[pyfunction]
fn library_names() -> Vec<String> {
    builtin_library().iter().map(|e| e.name.clone()).collect()
}

#[pyfunction]
fn ray_names() -> Vec<String> {
    builtin_rays().iter().map(|r| r.name.clone()).collect()
}

#[pyfunction]
fn ray(name: &str) -> PyResult<PyHypergraph> {
    let r = find_ray(name).ok_or_else(|| PyValueError::new_err(format!("unknown ray `{name}`")))?;
    Ok(PyHypergraph { inner: r.hypergraph.clone() })
}

#[pymodule]
pub fn hypercone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyInequality>()?;
    m.add_function(wrap_pyfunction!(verify_map, m)?)?;
    m.add_function(wrap_pyfunction!(search_map, m)?)?;
    m.add_function(wrap_pyfunction!(state, m)?)?;
    m.add_function(wrap_pyfunction!(verify_state, m)?)?;
    m.add_function(wrap_pyfunction!(library_names, m)?)?;
    m.add_function(wrap_pyfunction!(ray_names, m)?)?;
    m.add_function(wrap_pyfunction!(ray, m)?)?;
    Ok(())
}
