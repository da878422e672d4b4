use std::collections::BTreeSet;
use std::sync::Arc;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use epg_core::suite::{self, Suite, SuiteConfig};
use epg_core::{density, minors, normalize, text, Error, FieldElem, FieldSpec, Label, LabelSet, RepMatroid};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn labels(s: Vec<Label>) -> LabelSet {
    s.into_iter().collect()
}

/// A finite field GF(p^e); elements are integers `0..order`.
#[pyclass(name = "Field", module = "epg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: Arc<FieldSpec>,
}

impl PyField {
    fn elem(&self, v: u32) -> PyResult<FieldElem> {
        self.inner.element(v).map_err(py_err)
    }
}

#[pymethods]
impl PyField {
    #[new]
    fn new(order: u64) -> PyResult<Self> {
        Ok(PyField { inner: Arc::new(FieldSpec::of_order(order).map_err(py_err)?) })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.elem(a)?, self.elem(b)?).value())
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.elem(a)?, self.elem(b)?).value())
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.inv(self.elem(a)?).map_err(py_err)?.value())
    }

    fn pow(&self, a: u32, n: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.elem(a)?, n).value())
    }

    /// Least element outside the subfield of order `q`.
    fn pick_omega(&self, q: u64) -> PyResult<u32> {
        Ok(self.inner.pick_omega(q).map_err(py_err)?.value())
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.order())
    }
}

/// A matroid given by labelled columns of a matrix over a finite field.
#[pyclass(name = "Matroid", module = "epg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatroid {
    inner: RepMatroid,
}

fn wrap(inner: RepMatroid) -> PyMatroid {
    PyMatroid { inner }
}

#[pymethods]
impl PyMatroid {
    #[new]
    #[pyo3(signature = (field, rows, columns, labels=None))]
    fn new(field: &PyField, rows: usize, columns: Vec<Vec<u32>>, labels: Option<Vec<Label>>) -> PyResult<Self> {
        let cols = columns
            .into_iter()
            .map(|c| c.into_iter().map(|v| field.elem(v)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        let labels = labels.unwrap_or_else(|| (0..cols.len() as Label).collect());
        Ok(wrap(RepMatroid::new(field.inner.clone(), rows, cols, labels).map_err(py_err)?))
    }

    #[staticmethod]
    fn from_text(s: &str) -> PyResult<Self> {
        Ok(wrap(text::from_text(s).map_err(py_err)?))
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(wrap(text::read_file(path).map_err(py_err)?))
    }

    fn to_text(&self) -> String {
        text::to_text(&self.inner)
    }

    fn write(&self, path: &str) -> PyResult<()> {
        text::write_file(&self.inner, path).map_err(py_err)
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field().clone() }
    }

    #[getter]
    fn labels(&self) -> Vec<Label> {
        self.inner.labels().to_vec()
    }

    fn columns(&self) -> Vec<Vec<u32>> {
        self.inner.columns().iter().map(|c| c.iter().map(|x| x.value()).collect()).collect()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn rank_of(&self, s: Vec<Label>) -> PyResult<usize> {
        self.inner.rank_of(&s).map_err(py_err)
    }

    fn closure(&self, s: Vec<Label>) -> PyResult<BTreeSet<Label>> {
        self.inner.closure(&s).map_err(py_err)
    }

    /// Number of points of the simplification.
    fn point_count(&self) -> usize {
        self.inner.point_count()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn simplify(&self) -> PyMatroid {
        wrap(self.inner.simplify().0)
    }

    fn contract(&self, s: Vec<Label>) -> PyResult<PyMatroid> {
        Ok(wrap(self.inner.contract(&s).map_err(py_err)?))
    }

    fn delete(&self, s: Vec<Label>) -> PyResult<PyMatroid> {
        Ok(wrap(self.inner.delete(&s).map_err(py_err)?))
    }

    fn restrict(&self, s: Vec<Label>) -> PyResult<PyMatroid> {
        Ok(wrap(self.inner.restrict(&s).map_err(py_err)?))
    }

    fn lines(&self) -> PyResult<Vec<BTreeSet<Label>>> {
        self.inner.lines().map_err(py_err)
    }

    fn is_weakly_round(&self) -> PyResult<bool> {
        density::is_weakly_round(&self.inner).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Matroid(GF({}), rank={}, elements={})",
            self.inner.field().order(),
            self.inner.rank(),
            self.inner.len()
        )
    }
}

#[pyfunction]
fn build_pg(n_minus_1: usize, q: u64) -> PyResult<PyMatroid> {
    Ok(wrap(epg_core::build_pg(n_minus_1, q).map_err(py_err)?))
}

#[pyfunction]
fn build_epg(n_minus_1: usize, q: u64, k: usize) -> PyResult<PyMatroid> {
    Ok(wrap(epg_core::build_epg(n_minus_1, q, k).map_err(py_err)?))
}

#[pyfunction]
fn build_extension_rep(field: &PyField, omega: u32, n: usize) -> PyResult<PyMatroid> {
    let w = field.elem(omega)?;
    Ok(wrap(epg_core::build_extension_rep(field.inner.clone(), w, n).map_err(py_err)?))
}

#[pyfunction]
fn epg_size_formula(n: u64, q: u64, k: u64) -> PyResult<u128> {
    epg_core::epg_size_formula(n, q, k).map_err(py_err)
}

#[pyfunction]
fn growth_rate_formula(n: u64, q: u64, k: u64) -> PyResult<u128> {
    epg_core::growth_rate_formula(n, q, k).map_err(py_err)
}

#[pyfunction]
fn kung_bound(ell: u64, r: u64) -> PyResult<u128> {
    epg_core::kung_bound(ell, r).map_err(py_err)
}

/// Label pairs of an isomorphism between two simple matroids, or None.
#[pyfunction]
fn find_isomorphism(a: &PyMatroid, b: &PyMatroid) -> PyResult<Option<Vec<(Label, Label)>>> {
    epg_core::find_isomorphism(&a.inner, &b.inner).map_err(py_err)
}

#[pyfunction]
fn is_isomorphic(a: &PyMatroid, b: &PyMatroid) -> PyResult<bool> {
    epg_core::matroid_isomorphic(&a.inner, &b.inner).map_err(py_err)
}

/// `(contract, restriction)` for a PG(n-1, q)-minor, or None.
#[pyfunction]
#[pyo3(signature = (m, n, q, max_contract=1))]
fn has_pg_minor(
    m: &PyMatroid,
    n: usize,
    q: u64,
    max_contract: usize,
) -> PyResult<Option<(BTreeSet<Label>, BTreeSet<Label>)>> {
    let w = minors::has_pg_minor(&m.inner, n, q, max_contract).map_err(py_err)?;
    Ok(w.map(|w| (w.contract, w.restriction)))
}

/// Rewrites `m` so the members of a spanning PG(n-1, q) carry GF(q) entries.
#[pyfunction]
#[pyo3(signature = (m, q, members=None))]
fn normalize_spanning_pg(m: &PyMatroid, q: u64, members: Option<Vec<Label>>) -> PyResult<PyMatroid> {
    let r = members.map(labels).unwrap_or_else(|| m.inner.label_set());
    let (out, _, _) = normalize::normalize_spanning_pg(&m.inner, &r, q).map_err(py_err)?;
    Ok(wrap(out))
}

/// Runs property suites and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suites=None, seed=0))]
fn verify<'py>(py: Python<'py>, suites: Option<Vec<String>>, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let chosen: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| n.parse::<Suite>().map_err(|_| PyValueError::new_err(format!("unknown suite {n:?}"))))
            .collect::<PyResult<_>>()?,
    };
    let report = py.detach(|| suite::run(&chosen, &SuiteConfig::new(seed), "python verify"));
    let out = PyDict::new(py);
    out.set_item("seed", report.seed)?;
    out.set_item("pass", report.pass)?;
    let records = report
        .records
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("suite", r.suite.name())?;
            d.set_item("name", &r.name)?;
            d.set_item("parameters", &r.parameters)?;
            d.set_item("expected", &r.expected)?;
            d.set_item("actual", &r.actual)?;
            d.set_item("pass", r.pass)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    out.set_item("records", records)?;
    Ok(out)
}

#[pymodule]
fn epg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyMatroid>()?;
    m.add_function(wrap_pyfunction!(build_pg, m)?)?;
    m.add_function(wrap_pyfunction!(build_epg, m)?)?;
    m.add_function(wrap_pyfunction!(build_extension_rep, m)?)?;
    m.add_function(wrap_pyfunction!(epg_size_formula, m)?)?;
    m.add_function(wrap_pyfunction!(growth_rate_formula, m)?)?;
    m.add_function(wrap_pyfunction!(kung_bound, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(has_pg_minor, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_spanning_pg, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
