//! Python bindings: polynomials, the semi-invariant constructions and the
//! experiments. Experiment results come back as dicts with the same layout
//! as the CLI's JSON reports.

use glhwv_core::invariants::fundamental_invariants;
use glhwv_core::linalg::RationalMatrix;
use glhwv_core::nilcone::ScanMethod;
use glhwv_core::report::{dispatch, Command, RunConfig};
use glhwv_core::semiinv::{basic, phi_involution, verify_semiinvariant, Family};
use glhwv_core::{Characteristic, Ctx, Polynomial, RingContext, Scalar, Weight};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: glhwv_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn context(n: usize, characteristic: Option<u64>) -> PyResult<Ctx> {
    let ch = Characteristic::from_option(characteristic).map_err(err)?;
    RingContext::with(n, ch, Vec::<String>::new()).map_err(err)
}

fn to_dict<'py>(py: Python<'py>, json: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

fn to_fraction<'py>(py: Python<'py>, s: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((s.to_string(),))
}

/// A polynomial in the entries x[i][j] of a generic n×n matrix.
#[pyclass(name = "Polynomial", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    /// Parse the text form, e.g. "x[1][2]*x[2][1] - 2*x[1][1]^2".
    #[new]
    #[pyo3(signature = (n, text, characteristic=None))]
    fn new(n: usize, text: &str, characteristic: Option<u64>) -> PyResult<Self> {
        let ctx = context(n, characteristic)?;
        Ok(PyPolynomial { inner: Polynomial::parse(&ctx, text).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.ctx().n()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn content_hash(&self) -> String {
        self.inner.content_hash()
    }

    /// Torus weight as a list, or an error if the polynomial is not a weight vector.
    fn weight(&self) -> PyResult<Vec<i64>> {
        Ok(self.inner.torus_weight().map_err(err)?.coords().to_vec())
    }

    fn partial_derivative(&self, i: usize, j: usize) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.partial_derivative(i, j).map_err(err)? })
    }

    /// The involution x[i][j] ↦ x[n+1-j][n+1-i].
    fn phi(&self) -> Self {
        PyPolynomial { inner: phi_involution(&self.inner) }
    }

    /// Value at a square matrix of ints, Fractions or strings like "3/4".
    fn evaluate<'py>(&self, py: Python<'py>, matrix: Vec<Vec<Bound<'py, PyAny>>>) -> PyResult<Bound<'py, PyAny>> {
        let rows = matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.str()?.to_cow()?.parse::<Scalar>().map_err(|e| PyValueError::new_err(format!("bad entry: {e}"))))
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        let a = RationalMatrix::from_rows(rows).map_err(err)?;
        to_fraction(py, &self.inner.evaluate(&a).map_err(err)?)
    }

    /// Check semi-invariance of weight `lam`; returns the certificate as a dict.
    fn verify<'py>(&self, py: Python<'py>, lam: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let cert = verify_semiinvariant(&self.inner, &Weight::new(lam)).map_err(err)?;
        let json = serde_json::to_string(&cert).map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_dict(py, &json)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_sub(&other.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.checked_mul(&other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        PyPolynomial { inner: -self.inner.clone() }
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Self {
        PyPolynomial { inner: self.inner.pow(e) }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({}, {:?})", self.n(), self.inner.to_string())
    }
}

/// The fundamental invariants s_1..s_n.
#[pyfunction]
#[pyo3(signature = (n, characteristic=None))]
fn invariants(n: usize, characteristic: Option<u64>) -> PyResult<Vec<PyPolynomial>> {
    let ctx = context(n, characteristic)?;
    Ok(fundamental_invariants(&ctx).into_iter().map(|inner| PyPolynomial { inner }).collect())
}

/// u_{t,I} (family "u") or v_{t,I} (family "v").
#[pyfunction]
#[pyo3(signature = (n, t, set, family="u", characteristic=None))]
fn hwv_build(n: usize, t: usize, set: Vec<usize>, family: &str, characteristic: Option<u64>) -> PyResult<PyPolynomial> {
    let ctx = context(n, characteristic)?;
    let family: Family = family.parse().map_err(err)?;
    Ok(PyPolynomial { inner: basic(&ctx, family, t, &set).map_err(err)?.poly })
}

fn run_command(py: Python<'_>, command: Command, characteristic: Option<u64>, max_degree: Option<u32>, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let config = RunConfig { command, characteristic, max_degree, seed };
    config.validate().map_err(err)?;
    let report = py.detach(|| dispatch(&config)).map_err(err)?;
    to_dict(py, &report.to_json())
}

/// Run an experiment described by a JSON run configuration.
#[pyfunction]
fn run<'py>(py: Python<'py>, config_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let config: RunConfig = serde_json::from_str(config_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    run_command(py, config.command, config.characteristic, config.max_degree, config.seed)
}

#[pyfunction]
#[pyo3(signature = (n, t, randomized=false, seed=0, characteristic=None))]
fn delta(py: Python<'_>, n: usize, t: usize, randomized: bool, seed: u64, characteristic: Option<u64>) -> PyResult<Bound<'_, PyAny>> {
    run_command(py, Command::Delta { n, t, randomized }, characteristic, None, seed)
}

#[pyfunction]
#[pyo3(signature = (n, t, family="u", max_degree=None, characteristic=None))]
fn basis_check<'py>(py: Python<'py>, n: usize, t: usize, family: &str, max_degree: Option<u32>, characteristic: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let family: Family = family.parse().map_err(err)?;
    run_command(py, Command::Basis { n, t, family }, characteristic, max_degree, 0)
}

#[pyfunction]
fn jacobian(py: Python<'_>, n: usize, t: usize) -> PyResult<Bound<'_, PyAny>> {
    run_command(py, Command::Jacobian { n, t }, None, None, 0)
}

#[pyfunction]
#[pyo3(signature = (cap=6, seed=0))]
fn gl3(py: Python<'_>, cap: u32, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    run_command(py, Command::Gl3 { cap }, None, None, seed)
}

#[pyfunction]
#[pyo3(signature = (n, t, r, method="auto", max_degree=None, characteristic=None))]
fn scan<'py>(py: Python<'py>, n: usize, t: usize, r: u32, method: &str, max_degree: Option<u32>, characteristic: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let method: ScanMethod = method.parse().map_err(err)?;
    run_command(py, Command::Scan { n, t, r, method }, characteristic, max_degree, 0)
}

#[pyfunction]
#[pyo3(signature = (n, lam, tuple_cap=None, max_degree=None, characteristic=None))]
fn question(
    py: Python<'_>,
    n: usize,
    lam: Vec<i64>,
    tuple_cap: Option<usize>,
    max_degree: Option<u32>,
    characteristic: Option<u64>,
) -> PyResult<Bound<'_, PyAny>> {
    run_command(py, Command::Question { n, lambda: Weight::new(lam), tuple_cap }, characteristic, max_degree, 0)
}

#[pymodule]
fn glhwv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(hwv_build, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(basis_check, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(gl3, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(question, m)?)?;
    Ok(())
}
