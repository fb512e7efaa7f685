//! Python module `heisenlab`. Structured results come back as plain dicts and
//! lists; exact rationals become `fractions.Fraction`.

use std::collections::BTreeSet;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

use heisenlab::commgraph::{self, CommGraph, Family, Mode, SimpleGraph};
use heisenlab::group::{cap_from_env, erdos_turan_check};
use heisenlab::heisenberg::{self, HeisElem};
use heisenlab::{rado, utgroup, walklab, Heisenberg, PrimeModulus, UnitriangularGroup};

create_exception!(heisenlab, HeisenlabError, PyException, "Invalid input or failed certification.");
create_exception!(heisenlab, SizeCapError, HeisenlabError, "Enumeration would exceed the size cap.");

fn err(e: heisenlab::Error) -> PyErr {
    if e.is_size_error() {
        SizeCapError::new_err(e.to_string())
    } else {
        HeisenlabError::new_err(e.to_string())
    }
}

fn prime(p: u64) -> PyResult<PrimeModulus> {
    PrimeModulus::new(p).map_err(err)
}

fn int_from_str<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((s,))
}

fn number<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::String(s) => int_from_str(py, s),
        other => to_py(py, other),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else if n.is_f64() {
                PyFloat::new(py, n.as_f64().unwrap_or(f64::NAN)).into_any()
            } else {
                int_from_str(py, &n.to_string())?
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            if let (2, Some(num), Some(den)) = (map.len(), map.get("num"), map.get("den")) {
                let fraction = py.import("fractions")?.getattr("Fraction")?;
                return fraction.call1((number(py, num)?, number(py, den)?));
            }
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn export<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| HeisenlabError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// An element `[x, y, z]` of H_{2n+1}(p).
#[pyclass(name = "HeisElem", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyHeisElem {
    inner: HeisElem,
    p: PrimeModulus,
}

#[pymethods]
impl PyHeisElem {
    #[new]
    fn new(x: Vec<i64>, y: Vec<i64>, z: i64, p: u64) -> PyResult<Self> {
        let p = prime(p)?;
        let inner = HeisElem::new(&x, &y, z, p).map_err(err)?;
        Ok(PyHeisElem { inner, p })
    }

    #[staticmethod]
    fn identity(n: usize, p: u64) -> PyResult<Self> {
        Ok(PyHeisElem {
            inner: HeisElem::identity(n),
            p: prime(p)?,
        })
    }

    #[getter]
    fn x(&self) -> Vec<u32> {
        self.inner.x.entries().to_vec()
    }

    #[getter]
    fn y(&self) -> Vec<u32> {
        self.inner.y.entries().to_vec()
    }

    #[getter]
    fn z(&self) -> u32 {
        self.inner.z
    }

    #[getter]
    fn p(&self) -> u32 {
        self.p.get()
    }

    fn __mul__(&self, other: &PyHeisElem) -> PyResult<Self> {
        self.same_group(other)?;
        Ok(self.wrap(heisenberg::h_mul(&self.inner, &other.inner, self.p).map_err(err)?))
    }

    fn inverse(&self) -> Self {
        self.wrap(heisenberg::h_inv(&self.inner, self.p))
    }

    fn __pow__(&self, k: u64, _modulo: Option<u64>) -> Self {
        self.wrap(heisenberg::h_pow(&self.inner, k, self.p))
    }

    fn commutator(&self, other: &PyHeisElem) -> PyResult<Self> {
        self.same_group(other)?;
        Ok(self.wrap(heisenberg::h_commutator(&self.inner, &other.inner, self.p).map_err(err)?))
    }

    fn commutes(&self, other: &PyHeisElem) -> PyResult<bool> {
        self.same_group(other)?;
        heisenberg::h_commutes(&self.inner, &other.inner, self.p).map_err(err)
    }

    fn is_central(&self) -> bool {
        self.inner.is_central()
    }

    /// The conjugacy class label as a dict.
    fn class_label<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        export(py, &heisenberg::class_of(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("HeisElem({:?}, {:?}, {}, p={})", self.x(), self.y(), self.inner.z, self.p.get())
    }
}

impl PyHeisElem {
    fn wrap(&self, inner: HeisElem) -> Self {
        PyHeisElem { inner, p: self.p }
    }

    fn same_group(&self, other: &PyHeisElem) -> PyResult<()> {
        if self.p != other.p {
            return Err(err(heisenlab::Error::Modulus {
                left: self.p.get(),
                right: other.p.get(),
            }));
        }
        Ok(())
    }
}

/// Γ or Γ̃ with a dense adjacency matrix.
#[pyclass(name = "CommGraph", frozen)]
struct PyCommGraph {
    inner: CommGraph,
}

#[pymethods]
impl PyCommGraph {
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn adjacent(&self, v: usize, w: usize) -> PyResult<bool> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.inner.adjacent(v, w))
    }

    fn degree(&self, v: usize) -> PyResult<u64> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn codegree(&self, v: usize, w: usize) -> PyResult<u64> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.inner.codegree(v, w))
    }

    fn ordered_edges(&self) -> u64 {
        self.inner.ordered_edges()
    }

    fn vertex_of(&self, a: &PyHeisElem) -> PyResult<usize> {
        self.inner.vertex_of(&a.inner).map_err(err)
    }

    /// Density, codegree-deviation sum and normalized sum as Fractions.
    fn quasi_stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        export(py, &commgraph::quasi_stats(&self.inner))
    }

    fn bipartite_edge_count<'py>(&self, py: Python<'py>, a: Vec<usize>, b: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        export(py, &commgraph::bipartite_edge_count(&self.inner, &a, &b).map_err(err)?)
    }

    /// The edge list text, as written by the CLI.
    fn edgelist(&self) -> PyResult<String> {
        let mut out = Vec::new();
        self.inner.write_edgelist(&mut out).map_err(|e| err(e.into()))?;
        String::from_utf8(out).map_err(|e| HeisenlabError::new_err(e.to_string()))
    }
}

impl PyCommGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.vertex_count() {
            return Err(HeisenlabError::new_err(format!(
                "vertex {v} out of range 0..{}",
                self.inner.vertex_count()
            )));
        }
        Ok(())
    }
}

/// Build Γ(H_{2k+1}(p)), Γ̃(H_{2k+1}(p)) or Γ(UT(n, p)).
#[pyfunction]
#[pyo3(signature = (p, k=None, n=None, family="heisenberg", mode="quotient", loops=true))]
fn build_graph(
    py: Python<'_>,
    p: u64,
    k: Option<usize>,
    n: Option<usize>,
    family: &str,
    mode: &str,
    loops: bool,
) -> PyResult<PyCommGraph> {
    let p = prime(p)?;
    let family = match (family, k, n) {
        ("heisenberg", Some(k), _) => Family::Heisenberg { k },
        ("ut", _, Some(n)) => Family::Ut { n },
        _ => return Err(HeisenlabError::new_err("need family='heisenberg' with k, or family='ut' with n")),
    };
    let mode = match mode {
        "full" => Mode::Full,
        "quotient" => Mode::Quotient,
        other => return Err(HeisenlabError::new_err(format!("unknown mode {other:?}"))),
    };
    let cap = cap_from_env();
    let inner = py
        .detach(|| commgraph::build_graph(family, p, mode, loops, cap))
        .map_err(err)?;
    Ok(PyCommGraph { inner })
}

/// `e(G)`, `|G|`, `c(G)` and whether `e = |G| c`.
#[pyfunction]
#[pyo3(signature = (p, n, family="heisenberg"))]
fn erdos_turan<'py>(py: Python<'py>, p: u64, n: usize, family: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = prime(p)?;
    let cap = cap_from_env();
    let report = match family {
        "heisenberg" => erdos_turan_check(&Heisenberg::new(n, p), cap),
        "ut" => erdos_turan_check(&UnitriangularGroup::new(n, p), cap),
        other => return Err(HeisenlabError::new_err(format!("unknown family {other:?}"))),
    }
    .map_err(err)?;
    export(py, &report)
}

/// Closure of `gens` (plus the center when asked) with its structure report.
#[pyfunction]
#[pyo3(signature = (gens, include_center=true))]
fn subgroup_report<'py>(py: Python<'py>, gens: Vec<PyHeisElem>, include_center: bool) -> PyResult<Bound<'py, PyAny>> {
    let Some(first) = gens.first() else {
        return Err(HeisenlabError::new_err("need at least one generator"));
    };
    let h = Heisenberg::new(first.inner.dim(), first.p);
    let elems: Vec<HeisElem> = gens.iter().map(|g| g.inner.clone()).collect();
    let (_, report) = heisenberg::subgroup_generated(&h, &elems, include_center, cap_from_env()).map_err(err)?;
    export(py, &report)
}

/// Embed a graph on `k` vertices into H_{2k+1}(p); `edges` are 0-based pairs.
#[pyfunction]
fn embed_graph<'py>(py: Python<'py>, k: usize, edges: Vec<(usize, usize)>, p: u64) -> PyResult<Bound<'py, PyAny>> {
    let g = SimpleGraph::from_edges(k, &edges).map_err(err)?;
    export(py, &commgraph::embed_graph(&g, prime(p)?).map_err(err)?)
}

/// Least bit-model vertex adjacent to all of `u` and none of `v`.
#[pyfunction]
fn extension_witness(u: Vec<u64>, v: Vec<u64>) -> PyResult<u64> {
    let u: BTreeSet<u64> = u.into_iter().collect();
    let v: BTreeSet<u64> = v.into_iter().collect();
    rado::extension_witness(&rado::RadoModel::Bit, &u, &v).map_err(err)
}

#[pyfunction]
fn rado_adjacent(i: u64, j: u64) -> bool {
    rado::rado_adjacent(i, j)
}

/// Q(N(i)): the exact Fraction when available, else None, plus a float.
#[pyfunction]
fn neighborhood_mass<'py>(py: Python<'py>, i: u64) -> PyResult<(Bound<'py, PyAny>, f64)> {
    let m = rado::neighborhood_mass(i);
    let exact = match m.exact() {
        Some(r) => to_py(py, &heisenlab::json::rational_value(&r))?,
        None => py.None().into_bound(py),
    };
    Ok((exact, m.to_f64()))
}

#[pyfunction]
fn detailed_balance<'py>(py: Python<'py>, l: u64) -> PyResult<Bound<'py, PyAny>> {
    export(py, &py.detach(|| rado::detailed_balance(l)))
}

#[pyfunction]
#[pyo3(signature = (start, steps, seed=0))]
fn rado_trajectory(start: u64, steps: usize, seed: u64) -> PyResult<Vec<u64>> {
    rado::trajectory(start, steps, seed).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (start, steps, l=1024))]
fn rado_mixing<'py>(py: Python<'py>, start: u64, steps: usize, l: u64) -> PyResult<Bound<'py, PyAny>> {
    export(py, &py.detach(|| rado::mixing_estimate(start, steps, l)).map_err(err)?)
}

/// Gap, exact stationarity and TV curve of the H_3(p) walk.
#[pyfunction]
#[pyo3(signature = (p, steps=100))]
fn h3_mix_report<'py>(py: Python<'py>, p: u64, steps: usize) -> PyResult<Bound<'py, PyAny>> {
    let p = prime(p)?;
    export(py, &py.detach(|| walklab::h3_mix_report(p, steps)).map_err(err)?)
}

/// σ_A and τ_A of a core given as 1-based `(i, j, value)` triples.
#[pyfunction]
fn sigma_tau<'py>(py: Python<'py>, n: usize, entries: Vec<(usize, usize, u32)>, p: u64) -> PyResult<Bound<'py, PyAny>> {
    let a = utgroup::UtMatrix::from_triples(n, &entries, prime(p)?).map_err(err)?;
    export(py, &utgroup::sigma_tau(&a))
}

#[pyfunction]
fn conjugacy_census<'py>(py: Python<'py>, n: usize, p: u64) -> PyResult<Bound<'py, PyAny>> {
    let p = prime(p)?;
    let cap = cap_from_env();
    export(py, &py.detach(|| utgroup::conjugacy_census(n, p, cap)).map_err(err)?)
}

#[pyfunction]
fn andre_class_check(n: usize, p: u64, k: usize, l: usize) -> PyResult<bool> {
    utgroup::andre_class_check(n, prime(p)?, k, l, cap_from_env()).map_err(err)
}

#[pymodule]
#[pyo3(name = "heisenlab")]
fn heisenlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("HeisenlabError", py.get_type::<HeisenlabError>())?;
    m.add("SizeCapError", py.get_type::<SizeCapError>())?;
    m.add_class::<PyHeisElem>()?;
    m.add_class::<PyCommGraph>()?;
    m.add_function(wrap_pyfunction!(build_graph, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_turan, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup_report, m)?)?;
    m.add_function(wrap_pyfunction!(embed_graph, m)?)?;
    m.add_function(wrap_pyfunction!(extension_witness, m)?)?;
    m.add_function(wrap_pyfunction!(rado_adjacent, m)?)?;
    m.add_function(wrap_pyfunction!(neighborhood_mass, m)?)?;
    m.add_function(wrap_pyfunction!(detailed_balance, m)?)?;
    m.add_function(wrap_pyfunction!(rado_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(rado_mixing, m)?)?;
    m.add_function(wrap_pyfunction!(h3_mix_report, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_tau, m)?)?;
    m.add_function(wrap_pyfunction!(conjugacy_census, m)?)?;
    m.add_function(wrap_pyfunction!(andre_class_check, m)?)?;
    Ok(())
}
