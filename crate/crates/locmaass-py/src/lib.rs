// The pyo3 macros expand to error conversions that trip this lint.
#![allow(clippy::useless_conversion)]

//! Python bindings for the locmaass library: the main types (forms, points,
//! evaluation results) and the main operations (kernels, lattice-sum
//! evaluators, theta kernels, Poincare series, jump prediction, verification
//! suites).

use locmaass::error::Error;
use locmaass::evaluators::{self, EvalResult, SumConfig};
use locmaass::geodesics::{self, ArcKind};
use locmaass::hecke;
use locmaass::poincare::{self, PoincareSpec};
use locmaass::qforms;
use locmaass::specfun::{self, KernelParams};
use locmaass::theta::{self, ThetaPoint};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Capacity(_) | Error::Convergence(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A binary quadratic form a X^2 + b X Y + c Y^2.
#[pyclass(name = "QForm")]
#[derive(Clone)]
struct PyQForm {
    inner: qforms::QForm,
}

#[pymethods]
impl PyQForm {
    #[new]
    fn new(a: i64, b: i64, c: i64) -> Self {
        Self { inner: qforms::QForm::new(a, b, c) }
    }

    #[getter]
    fn a(&self) -> i64 {
        self.inner.a
    }

    #[getter]
    fn b(&self) -> i64 {
        self.inner.b
    }

    #[getter]
    fn c(&self) -> i64 {
        self.inner.c
    }

    fn disc(&self) -> i64 {
        self.inner.disc()
    }

    /// (Q(z,1), Q_z) at the point z.
    fn values(&self, z: &PyUHPoint) -> (Complex64, f64) {
        self.inner.values(z.inner)
    }

    fn __repr__(&self) -> String {
        format!("QForm({}, {}, {})", self.inner.a, self.inner.b, self.inner.c)
    }
}

/// A point x + iy in the upper half-plane.
#[pyclass(name = "UHPoint")]
#[derive(Clone)]
struct PyUHPoint {
    inner: qforms::UHPoint,
}

#[pymethods]
impl PyUHPoint {
    #[new]
    fn new(x: f64, y: f64) -> PyResult<Self> {
        Ok(Self { inner: qforms::UHPoint::new(x, y).map_err(to_py_err)? })
    }

    #[getter]
    fn x(&self) -> f64 {
        self.inner.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.inner.y
    }

    fn __repr__(&self) -> String {
        format!("UHPoint({}, {})", self.inner.x, self.inner.y)
    }
}

/// Value and error bookkeeping of a truncated lattice sum.
#[pyclass(name = "EvalResult")]
struct PyEvalResult {
    inner: EvalResult,
}

#[pymethods]
impl PyEvalResult {
    #[getter]
    fn value(&self) -> Complex64 {
        self.inner.value
    }

    #[getter]
    fn tail(&self) -> f64 {
        self.inner.tail_estimate
    }

    #[getter]
    fn forms_used(&self) -> usize {
        self.inner.forms_used
    }

    #[getter]
    fn min_abs_qz(&self) -> f64 {
        self.inner.min_abs_qz
    }

    fn __repr__(&self) -> String {
        format!(
            "EvalResult(value={}, tail={:.3e}, forms_used={}, min_abs_qz={:.3e})",
            self.inner.value, self.inner.tail_estimate, self.inner.forms_used,
            self.inner.min_abs_qz
        )
    }
}

fn config(qz2_max: Option<f64>, tol: Option<f64>) -> SumConfig {
    match qz2_max {
        Some(t) => SumConfig::with_qz2_max(t),
        None => SumConfig::with_target_tol(tol.unwrap_or(1e-6)),
    }
}

/// Extended Kronecker symbol (d|n).
#[pyfunction]
fn kronecker(d: i64, n: u64) -> i32 {
    specfun::kronecker(d, n)
}

/// Gauss hypergeometric 2F1(a,b;c;w) for w in [0,1].
#[pyfunction]
fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, w: f64) -> PyResult<Complex64> {
    specfun::hyp2f1(a, b, c, w).map_err(to_py_err)
}

/// Normalized Whittaker kernel |t|^{-kappa/2} M_{(kappa/2) sgn t, s-1/2}(|t|).
#[pyfunction]
fn mathcal_m(kappa: f64, s: Complex64, t: f64) -> PyResult<Complex64> {
    specfun::mathcal_m(kappa, s, t).map_err(to_py_err)
}

/// Lower incomplete beta function beta(v; a, b).
#[pyfunction]
fn incomplete_beta(v: f64, a: Complex64, b: Complex64) -> PyResult<Complex64> {
    specfun::incomplete_beta(v, a, b).map_err(to_py_err)
}

/// psi(v) = (1/2) beta(v; k-1/2, 1/2).
#[pyfunction]
fn psi_kernel(k: u32, v: f64) -> PyResult<f64> {
    specfun::psi_kernel(k, v).map_err(to_py_err)
}

/// phi_s(w), the radial kernel of the weight-2k family.
#[pyfunction]
fn phi_kernel(k: u32, s: Complex64, d: i64, w: f64) -> PyResult<Complex64> {
    let p = KernelParams::new(k, s, d).map_err(to_py_err)?;
    specfun::phi_kernel(&p, w).map_err(to_py_err)
}

/// phi*_s(w), the radial kernel of the weight-(2-2k) family.
#[pyfunction]
fn phi_star_kernel(k: u32, s: Complex64, d: i64, w: f64) -> PyResult<Complex64> {
    let p = KernelParams::new(k, s, d).map_err(to_py_err)?;
    specfun::phi_star_kernel(&p, w).map_err(to_py_err)
}

/// f_{k,s,D}(z).
#[pyfunction]
#[pyo3(signature = (k, s, d, z, qz2_max=None, tol=None))]
fn eval_f(
    k: u32,
    s: Complex64,
    d: i64,
    z: PyUHPoint,
    qz2_max: Option<f64>,
    tol: Option<f64>,
) -> PyResult<PyEvalResult> {
    let p = KernelParams::new(k, s, d).map_err(to_py_err)?;
    let res = evaluators::eval_f(&p, z.inner, &config(qz2_max, tol)).map_err(to_py_err)?;
    Ok(PyEvalResult { inner: res })
}

/// f_{k,D}(z), the classically normalized cusp form.
#[pyfunction]
#[pyo3(signature = (k, d, z, qz2_max=None, tol=None))]
fn eval_f_classical(
    k: u32,
    d: i64,
    z: PyUHPoint,
    qz2_max: Option<f64>,
    tol: Option<f64>,
) -> PyResult<PyEvalResult> {
    let res = evaluators::eval_f_classical(k, d, z.inner, &config(qz2_max, tol))
        .map_err(to_py_err)?;
    Ok(PyEvalResult { inner: res })
}

/// F_{1-k,s,D}(z).
#[pyfunction]
#[pyo3(name = "eval_F", signature = (k, s, d, z, qz2_max=None, tol=None))]
fn eval_big_f(
    k: u32,
    s: Complex64,
    d: i64,
    z: PyUHPoint,
    qz2_max: Option<f64>,
    tol: Option<f64>,
) -> PyResult<PyEvalResult> {
    let p = KernelParams::new(k, s, d).map_err(to_py_err)?;
    let res = evaluators::eval_big_f(&p, z.inner, &config(qz2_max, tol)).map_err(to_py_err)?;
    Ok(PyEvalResult { inner: res })
}

/// F_{1-k,D}(z), the locally harmonic member (psi kernel).
#[pyfunction]
#[pyo3(name = "eval_F_harmonic", signature = (k, d, z, qz2_max=None, tol=None))]
fn eval_big_f_harmonic(
    k: u32,
    d: i64,
    z: PyUHPoint,
    qz2_max: Option<f64>,
    tol: Option<f64>,
) -> PyResult<PyEvalResult> {
    let res = evaluators::eval_big_f_harmonic(k, d, z.inner, &config(qz2_max, tol))
        .map_err(to_py_err)?;
    Ok(PyEvalResult { inner: res })
}

/// Theta(z, tau).
#[pyfunction]
#[pyo3(signature = (k, z, tau, tol=1e-12))]
fn eval_theta(k: u32, z: PyUHPoint, tau: PyUHPoint, tol: f64) -> PyResult<Complex64> {
    let pt = ThetaPoint { z: z.inner, tau: tau.inner };
    theta::eval_theta(k, pt, &SumConfig::with_target_tol(tol)).map_err(to_py_err)
}

/// Theta*(z, tau).
#[pyfunction]
#[pyo3(signature = (k, z, tau, tol=1e-12))]
fn eval_theta_star(k: u32, z: PyUHPoint, tau: PyUHPoint, tol: f64) -> PyResult<Complex64> {
    let pt = ThetaPoint { z: z.inner, tau: tau.inner };
    theta::eval_theta_star(k, pt, &SumConfig::with_target_tol(tol)).map_err(to_py_err)
}

/// Weight-(k+1/2) Poincare series P_{k+1/2,s,m} at tau.
#[pyfunction]
#[pyo3(signature = (k, s, m, tau, c_max=150))]
fn eval_poincare(k: u32, s: Complex64, m: i64, tau: PyUHPoint, c_max: i64) -> PyResult<Complex64> {
    let spec = PoincareSpec::new(k as f64 + 0.5, s, m, c_max).map_err(to_py_err)?;
    poincare::eval_poincare(&spec, tau.inner).map_err(to_py_err)
}

/// Predicted two-sided jump of F_{1-k,s,D} at a point of E_D.
#[pyfunction]
fn predicted_jump(k: u32, s: Complex64, d: i64, z: PyUHPoint) -> PyResult<Complex64> {
    let p = KernelParams::new(k, s, d).map_err(to_py_err)?;
    geodesics::predicted_jump(z.inner, &p).map_err(to_py_err)
}

/// Forms of discriminant d vanishing at z (the set B_z).
#[pyfunction]
#[pyo3(signature = (d, z, tol=1e-9))]
fn vanishing_forms(d: i64, z: PyUHPoint, tol: f64) -> PyResult<Vec<PyQForm>> {
    let set = geodesics::vanishing_forms(z.inner, d, tol).map_err(to_py_err)?;
    Ok(set.forms.into_iter().map(|inner| PyQForm { inner }).collect())
}

/// Geodesic of a form as a dict: kind, center/radius or x0.
#[pyfunction]
fn geodesic_of_form(py: Python<'_>, q: &PyQForm) -> PyResult<PyObject> {
    let arc = geodesics::geodesic_of_form(&q.inner).map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new_bound(py);
    match arc.kind {
        ArcKind::Semicircle { center, radius } => {
            dict.set_item("kind", "semicircle")?;
            dict.set_item("center", center)?;
            dict.set_item("radius", radius)?;
        }
        ArcKind::Vertical { x0 } => {
            dict.set_item("kind", "vertical")?;
            dict.set_item("x0", x0)?;
        }
    }
    Ok(dict.into())
}

/// Pointwise weight-kappa Hecke operator applied to a Python callable
/// f(x, y) -> complex.
#[pyfunction]
fn hecke_tp(
    py: Python<'_>,
    f: PyObject,
    kappa: i32,
    p: u64,
    tau: PyUHPoint,
) -> PyResult<Complex64> {
    let failure = std::cell::RefCell::new(None::<PyErr>);
    let handle = |w: qforms::UHPoint| -> locmaass::Result<Complex64> {
        match f.call1(py, (w.x, w.y)).and_then(|v| v.extract::<Complex64>(py)) {
            Ok(c) => Ok(c),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Err(Error::Domain("python handle failed".into()))
            }
        }
    };
    let res = hecke::hecke_tp(&handle, kappa, p, tau.inner);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    res.map_err(to_py_err)
}

/// Three-term discriminant family of the F-side Hecke relation.
#[pyfunction]
fn hecke_family_big_f(d: i64, p: u64, k: u32) -> PyResult<Vec<(i64, f64)>> {
    Ok(hecke::hecke_family_big_f(d, p, k)
        .map_err(to_py_err)?
        .into_iter()
        .map(|t| (t.disc, t.coeff))
        .collect())
}

/// Three-term discriminant family of the f-side Hecke relation.
#[pyfunction]
fn hecke_family_f(d: i64, p: u64, k: u32) -> PyResult<Vec<(i64, f64)>> {
    Ok(hecke::hecke_family_f(d, p, k)
        .map_err(to_py_err)?
        .into_iter()
        .map(|t| (t.disc, t.coeff))
        .collect())
}

/// Delta(z) by its eta product.
#[pyfunction]
fn delta_eta(z: PyUHPoint) -> Complex64 {
    locmaass::eta::delta_eta(z.inner)
}

/// tau(1..=n) coefficients of Delta.
#[pyfunction]
fn delta_coefficients(n: usize) -> Vec<i64> {
    locmaass::eta::delta_coefficients(n)
}

/// Run a verification suite; returns (name, residual, threshold, passed) rows.
#[pyfunction]
fn verify_suite(name: &str) -> PyResult<Vec<(String, f64, f64, bool)>> {
    let results = if name == "all" {
        locmaass::verify::run_all().map_err(to_py_err)?
    } else {
        locmaass::verify::run_suite(name).map_err(to_py_err)?
    };
    Ok(results
        .into_iter()
        .map(|r| {
            let passed = r.passed();
            (format!("{}/{}", r.suite, r.name), r.residual, r.threshold, passed)
        })
        .collect())
}

#[pymodule]
fn locmaass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQForm>()?;
    m.add_class::<PyUHPoint>()?;
    m.add_class::<PyEvalResult>()?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(hyp2f1, m)?)?;
    m.add_function(wrap_pyfunction!(mathcal_m, m)?)?;
    m.add_function(wrap_pyfunction!(incomplete_beta, m)?)?;
    m.add_function(wrap_pyfunction!(psi_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(phi_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(phi_star_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(eval_f, m)?)?;
    m.add_function(wrap_pyfunction!(eval_f_classical, m)?)?;
    m.add_function(wrap_pyfunction!(eval_big_f, m)?)?;
    m.add_function(wrap_pyfunction!(eval_big_f_harmonic, m)?)?;
    m.add_function(wrap_pyfunction!(eval_theta, m)?)?;
    m.add_function(wrap_pyfunction!(eval_theta_star, m)?)?;
    m.add_function(wrap_pyfunction!(eval_poincare, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_jump, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_forms, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_of_form, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_tp, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_family_big_f, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_family_f, m)?)?;
    m.add_function(wrap_pyfunction!(delta_eta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
