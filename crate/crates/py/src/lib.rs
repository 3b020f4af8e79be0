//! Python module `qmap`. Rationals cross the boundary as `"p/q"` strings,
//! which `fractions.Fraction` accepts directly.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qmap_core::{json as qjson, selfcheck, Error, Rational};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidSpec(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(|r| r.to_string()).collect()
}

fn parse(values: &[String]) -> PyResult<Vec<Rational>> {
    values
        .iter()
        .map(|s| qjson::parse_rational(s).map_err(|e| PyValueError::new_err(e.to_string())))
        .collect()
}

#[pyclass(name = "GeometrySpec", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGeometrySpec {
    inner: qmap_core::GeometrySpec,
}

#[pymethods]
impl PyGeometrySpec {
    #[new]
    #[pyo3(signature = (n, l = Vec::new(), lp = Vec::new()))]
    fn new(n: usize, l: Vec<u32>, lp: Vec<u32>) -> PyResult<Self> {
        qmap_core::GeometrySpec::new(n, l, lp)
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn l(&self) -> Vec<u32> {
        self.inner.l.clone()
    }

    #[getter]
    fn lp(&self) -> Vec<u32> {
        self.inner.lp.clone()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn kappa(&self) -> String {
        self.inner.kappa().to_string()
    }

    fn __repr__(&self) -> String {
        format!("GeometrySpec{}", self.inner)
    }
}

/// Truncated power series in `q` with exact rational coefficients.
#[pyclass(name = "PowerSeries", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPowerSeries {
    inner: qmap_core::PowerSeries,
}

impl From<qmap_core::PowerSeries> for PyPowerSeries {
    fn from(inner: qmap_core::PowerSeries) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyPowerSeries {
    /// `coeffs` for `q^0..q^order`: ints, `Fraction`s or `"p/q"` strings.
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        if coeffs.is_empty() {
            return Err(PyValueError::new_err("need at least one coefficient"));
        }
        let text = coeffs
            .iter()
            .map(|c| Ok(c.str()?.to_string()))
            .collect::<PyResult<Vec<String>>>()?;
        Ok(qmap_core::PowerSeries::new(parse(&text)?).into())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn coeffs(&self) -> Vec<String> {
        strings(self.inner.coeffs())
    }

    fn coeff(&self, d: usize) -> String {
        self.inner.coeff(d).to_string()
    }

    fn __add__(&self, other: &Self) -> Self {
        self.inner.add(&other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        self.inner.sub(&other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        self.inner.mul(&other.inner).into()
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn invert(&self) -> PyResult<Self> {
        self.inner.invert().map(Into::into).map_err(to_py)
    }

    fn qddq(&self) -> Self {
        self.inner.qddq().into()
    }

    fn log(&self) -> PyResult<Self> {
        self.inner.log_unit().map(Into::into).map_err(to_py)
    }

    fn exp(&self) -> PyResult<Self> {
        self.inner.exp_nilconst().map(Into::into).map_err(to_py)
    }

    fn compose(&self, inner: &Self) -> PyResult<Self> {
        self.inner
            .compose(&inner.inner)
            .map(Into::into)
            .map_err(to_py)
    }

    fn reversion(&self) -> PyResult<Self> {
        self.inner.reversion().map(Into::into).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// `(I0, I1)` coefficient lists through `q^order`.
#[pyfunction]
fn i_function(spec: &PyGeometrySpec, order: usize) -> PyResult<(Vec<String>, Vec<String>)> {
    let expansion = qmap_core::expand_i(&spec.inner, order, 1).map_err(to_py)?;
    let (i0, i1) = qmap_core::extract_i0_i1(&expansion).map_err(to_py)?;
    Ok((strings(i0.coeffs()), strings(i1.coeffs())))
}

/// `[C_0, ..., C_{n-1}]`, each a coefficient list.
#[pyfunction]
fn compute_ck(spec: &PyGeometrySpec, order: usize) -> PyResult<Vec<Vec<String>>> {
    let c = qmap_core::compute_ck(&spec.inner, order).map_err(to_py)?;
    Ok(c.c.iter().map(|s| strings(s.coeffs())).collect())
}

#[pyfunction]
fn quasimap_potential(spec: &PyGeometrySpec, order: usize) -> PyResult<PyPowerSeries> {
    let c = qmap_core::compute_ck(&spec.inner, order).map_err(to_py)?;
    qmap_core::quasimap_potential(&spec.inner, &c, order)
        .map(Into::into)
        .map_err(to_py)
}

/// Runs the Picard-Fuchs check on the I-function expansion at `w`-order `n`.
#[pyfunction]
fn pf_check(spec: &PyGeometrySpec, order: usize) -> PyResult<bool> {
    let expansion = qmap_core::expand_i(&spec.inner, order, spec.inner.n).map_err(to_py)?;
    qmap_core::pf_check(&spec.inner, &expansion).map_err(to_py)
}

/// `N_1..N_order`.
#[pyfunction]
fn gw_invariants(spec: &PyGeometrySpec, order: usize) -> PyResult<Vec<String>> {
    let report = qmap_core::compute_report(&spec.inner, order).map_err(to_py)?;
    Ok(strings(&report.n_d))
}

/// Full report as canonical JSON text.
#[pyfunction]
fn report_json(spec: &PyGeometrySpec, order: usize) -> PyResult<String> {
    let report = qmap_core::compute_report(&spec.inner, order).map_err(to_py)?;
    Ok(qjson::to_canonical_string(&qjson::report(&report)))
}

#[pyfunction]
fn chern_coefficient(spec: &PyGeometrySpec) -> String {
    qmap_core::chern_coefficient(&spec.inner).to_string()
}

#[pyfunction]
fn euler_characteristic(spec: &PyGeometrySpec) -> Option<String> {
    qmap_core::euler_characteristic(&spec.inner).map(|x| x.to_string())
}

/// Built-in self-checks as `(name, passed, detail)` triples.
#[pyfunction]
fn verify(py: Python<'_>) -> Vec<(String, bool, String)> {
    py.detach(|| {
        selfcheck::run_all()
            .into_iter()
            .map(|c| (c.name, c.passed, c.detail))
            .collect()
    })
}

#[pymodule]
fn qmap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGeometrySpec>()?;
    m.add_class::<PyPowerSeries>()?;
    m.add_function(wrap_pyfunction!(i_function, m)?)?;
    m.add_function(wrap_pyfunction!(compute_ck, m)?)?;
    m.add_function(wrap_pyfunction!(quasimap_potential, m)?)?;
    m.add_function(wrap_pyfunction!(pf_check, m)?)?;
    m.add_function(wrap_pyfunction!(gw_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(chern_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(euler_characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
