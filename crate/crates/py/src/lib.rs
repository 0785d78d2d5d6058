//! Python bindings: `import wallsun`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wallsun_core::{arith, lucas, mono, wss, Error};

create_exception!(wallsun, WallsunError, PyValueError, "Invalid input or failed check.");
create_exception!(wallsun, FactorizationError, WallsunError, "Factoring exceeded the effort bound.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::IncompleteFactorization { .. } => FactorizationError::new_err(e.to_string()),
        _ => WallsunError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// The recurrence `U_n = a U_{n-1} + b U_{n-2}` with `U_0 = 0`, `U_1 = 1`.
#[pyclass(name = "LucasParams", frozen, eq, skip_from_py_object, module = "wallsun")]
#[derive(Clone, PartialEq)]
struct PyLucasParams(lucas::LucasParams);

#[pymethods]
impl PyLucasParams {
    #[new]
    fn new(a: u64, b: u64) -> PyResult<Self> {
        lucas::LucasParams::new(a, b).py().map(PyLucasParams)
    }

    #[getter]
    fn a(&self) -> u64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> u64 {
        self.0.b
    }

    #[getter]
    fn dtilde(&self) -> u64 {
        self.0.dtilde
    }

    #[getter]
    fn star_valid(&self) -> bool {
        self.0.star_valid
    }

    /// `a^2 + 4b`
    fn disc(&self) -> u128 {
        self.0.disc()
    }

    /// Legendre symbol of `dtilde` at the odd prime `p`.
    fn delta(&self, p: u64) -> PyResult<i8> {
        self.0.delta(p).py()
    }

    fn __repr__(&self) -> String {
        format!("LucasParams(a={}, b={})", self.0.a, self.0.b)
    }
}

#[pyclass(name = "PeriodResult", frozen, get_all, module = "wallsun")]
struct PyPeriodResult {
    modulus: u64,
    pi: u64,
    method: String,
}

impl From<lucas::PeriodResult> for PyPeriodResult {
    fn from(r: lucas::PeriodResult) -> Self {
        PyPeriodResult { modulus: r.modulus, pi: r.pi, method: format!("{:?}", r.method) }
    }
}

#[pymethods]
impl PyPeriodResult {
    fn __repr__(&self) -> String {
        format!("PeriodResult(modulus={}, pi={}, method={})", self.modulus, self.pi, self.method)
    }
}

#[pyclass(name = "WssCertificate", frozen, get_all, module = "wallsun")]
struct PyWssCertificate {
    p: u64,
    pi_p: u64,
    pi_p2: u64,
    is_wss: bool,
    path: String,
    usub_condition: bool,
}

impl From<wss::WssCertificate> for PyWssCertificate {
    fn from(c: wss::WssCertificate) -> Self {
        PyWssCertificate {
            p: c.p,
            pi_p: c.pi_p,
            pi_p2: c.pi_p2,
            is_wss: c.is_wss,
            path: format!("{:?}", c.path),
            usub_condition: c.usub_condition,
        }
    }
}

#[pymethods]
impl PyWssCertificate {
    fn __repr__(&self) -> String {
        format!(
            "WssCertificate(p={}, pi_p={}, pi_p2={}, is_wss={}, path={})",
            self.p, self.pi_p, self.pi_p2, self.is_wss, self.path
        )
    }
}

/// `x^N + A x^M + B`.
#[pyclass(name = "TrinomialSpec", frozen, module = "wallsun")]
struct PyTrinomialSpec(mono::TrinomialSpec);

#[pymethods]
impl PyTrinomialSpec {
    #[new]
    #[allow(non_snake_case)]
    fn new(N: u64, M: u64, A: i64, B: i64) -> PyResult<Self> {
        mono::TrinomialSpec::new(N, M, A, B).py().map(PyTrinomialSpec)
    }

    #[getter]
    fn degree(&self) -> u64 {
        self.0.degree
    }

    #[getter]
    fn middle(&self) -> u64 {
        self.0.middle
    }

    #[getter]
    fn coef_a(&self) -> i64 {
        self.0.coef_a
    }

    #[getter]
    fn coef_b(&self) -> i64 {
        self.0.coef_b
    }

    /// Closed-form discriminant.
    fn discriminant(&self) -> BigInt {
        mono::swan_discriminant(&self.0).value()
    }

    /// Coefficients, constant term first.
    fn coefficients(&self) -> Vec<BigInt> {
        self.0.to_poly().coeffs().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("TrinomialSpec({})", self.0.to_poly())
    }
}

#[pyclass(name = "PrimeVerdict", frozen, get_all, module = "wallsun")]
struct PyPrimeVerdict {
    p: u64,
    index_coprime: bool,
    decided_by: String,
    dedekind: Option<bool>,
}

#[pymethods]
impl PyPrimeVerdict {
    fn __repr__(&self) -> String {
        format!("PrimeVerdict(p={}, index_coprime={}, decided_by={})", self.p, self.index_coprime, self.decided_by)
    }
}

#[pyclass(name = "MonogenicityReport", frozen, get_all, module = "wallsun")]
struct PyMonogenicityReport {
    polynomial: String,
    degree: u64,
    monogenic: bool,
    prime_verdicts: Vec<Py<PyPrimeVerdict>>,
    irreducibility_source: String,
    prediction: Option<bool>,
}

impl PyMonogenicityReport {
    fn build(py: Python<'_>, r: mono::MonogenicityReport) -> PyResult<Self> {
        let prime_verdicts = r
            .prime_verdicts
            .iter()
            .map(|v| {
                Py::new(
                    py,
                    PyPrimeVerdict {
                        p: v.p,
                        index_coprime: v.index_coprime,
                        decided_by: format!("{:?}", v.decided_by),
                        dedekind: v.dedekind,
                    },
                )
            })
            .collect::<PyResult<_>>()?;
        Ok(PyMonogenicityReport {
            polynomial: r.poly.to_poly().to_string(),
            degree: r.poly.degree,
            monogenic: r.monogenic,
            prime_verdicts,
            irreducibility_source: format!("{:?}", r.irreducibility_source),
            prediction: r.prediction,
        })
    }
}

#[pymethods]
impl PyMonogenicityReport {
    /// Primes dividing the index `[Z_K : Z[theta]]`.
    fn failing_primes(&self) -> Vec<u64> {
        self.prime_verdicts
            .iter()
            .map(|v| v.get())
            .filter(|v| !v.index_coprime)
            .map(|v| v.p)
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("MonogenicityReport({}, monogenic={})", self.polynomial, self.monogenic)
    }
}

#[pyclass(name = "CrossValidation", frozen, get_all, module = "wallsun")]
struct PyCrossValidation {
    a: u64,
    b: u64,
    s: u64,
    /// `(n, predicted, computed)` per exponent.
    rows: Vec<(u32, Option<bool>, bool)>,
    agree: Option<bool>,
    n_independent: bool,
    outside_hypotheses: bool,
}

#[pymethods]
impl PyCrossValidation {
    fn __repr__(&self) -> String {
        format!(
            "CrossValidation(a={}, b={}, s={}, agree={:?}, n_independent={})",
            self.a, self.b, self.s, self.agree, self.n_independent
        )
    }
}

#[pyfunction]
fn period(params: &PyLucasParams, m: u64) -> PyResult<PyPeriodResult> {
    lucas::period(&params.0, m).py().map(Into::into)
}

#[pyfunction]
fn period_prime(params: &PyLucasParams, p: u64) -> PyResult<PyPeriodResult> {
    lucas::period_prime(&params.0, p).py().map(Into::into)
}

#[pyfunction]
fn period_prime_squared(params: &PyLucasParams, p: u64) -> PyResult<PyPeriodResult> {
    lucas::period_prime_squared(&params.0, p).py().map(Into::into)
}

#[pyfunction]
fn lucas_u_mod(params: &PyLucasParams, n: u64, m: u64) -> PyResult<u64> {
    if m == 0 {
        return Err(WallsunError::new_err("modulus must be positive"));
    }
    Ok(lucas::lucas_u_mod(&params.0, n, m))
}

#[pyfunction]
fn is_wss(params: &PyLucasParams, p: u64) -> PyResult<PyWssCertificate> {
    wss::is_wss(&params.0, p).py().map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (params, p_max, jobs = 1))]
fn search_wss(py: Python<'_>, params: &PyLucasParams, p_max: u64, jobs: usize) -> PyResult<Vec<PyWssCertificate>> {
    let params = params.0;
    let hits = py.detach(|| wss::search_wss_jobs(&params, p_max, jobs)).py()?;
    Ok(hits.into_iter().map(Into::into).collect())
}

#[pyfunction]
fn frobenius_root_check(params: &PyLucasParams, p: u64, m: u32) -> PyResult<bool> {
    mono::frobenius_root_check(&params.0, p, m).py()
}

/// `(index_coprime, rule)` from the closed-form criterion at `p`.
#[pyfunction]
fn jks_prime_check(t: &PyTrinomialSpec, p: u64) -> PyResult<(bool, String)> {
    let v = mono::jks_prime_check(&t.0, p).py()?;
    Ok((v.index_coprime, format!("{:?}", v.rule)))
}

#[pyfunction]
fn dedekind_index_coprime(t: &PyTrinomialSpec, p: u64) -> PyResult<bool> {
    mono::dedekind_index_coprime(&t.0.to_poly(), p).py()
}

#[pyfunction]
#[pyo3(signature = (params, s, n, dedekind_cross_check = true))]
fn is_monogenic_family(
    py: Python<'_>,
    params: &PyLucasParams,
    s: u64,
    n: u32,
    dedekind_cross_check: bool,
) -> PyResult<PyMonogenicityReport> {
    let spec = mono::PowerCompositionalSpec::new(params.0, s, n).py()?;
    let report = py
        .detach(|| mono::is_monogenic_family_with(&spec, mono::MonoOptions { dedekind_cross_check }))
        .py()?;
    PyMonogenicityReport::build(py, report)
}

#[pyfunction]
fn trinomial_report(py: Python<'_>, t: &PyTrinomialSpec) -> PyResult<PyMonogenicityReport> {
    let opts = mono::MonoOptions { dedekind_cross_check: true };
    let report = py
        .detach(|| mono::trinomial_report(&t.0, opts, arith::DEFAULT_EFFORT))
        .py()?;
    PyMonogenicityReport::build(py, report)
}

/// `(star, gcd_bs, delta_conditions, overall)`.
#[pyfunction]
fn prediction_hypotheses(params: &PyLucasParams, s: u64) -> PyResult<(bool, bool, bool, bool)> {
    let h = mono::prediction_hypotheses(&params.0, s).py()?;
    Ok((h.star, h.gcd_bs, h.delta_conditions, h.overall))
}

#[pyfunction]
fn predict_monogenic(params: &PyLucasParams, s: u64) -> PyResult<bool> {
    mono::predict_monogenic(&params.0, s).py()
}

#[pyfunction]
#[pyo3(signature = (params, s, n_max, dedekind_cross_check = true))]
fn cross_validate(
    py: Python<'_>,
    params: &PyLucasParams,
    s: u64,
    n_max: u32,
    dedekind_cross_check: bool,
) -> PyResult<PyCrossValidation> {
    let params = params.0;
    let cv = py
        .detach(|| mono::cross_validate_with(&params, s, n_max, mono::MonoOptions { dedekind_cross_check }))
        .py()?;
    Ok(PyCrossValidation {
        a: cv.a,
        b: cv.b,
        s: cv.s,
        rows: cv.rows.iter().map(|r| (r.n, r.predicted, r.computed)).collect(),
        agree: cv.agree,
        n_independent: cv.n_independent,
        outside_hypotheses: cv.outside_hypotheses(),
    })
}

#[pyfunction]
fn jacobi(a: i64, n: u64) -> PyResult<i8> {
    arith::jacobi(a, n).py()
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

/// `[(prime, exponent), ...]` in ascending order.
#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<(u64, u32)>> {
    Ok(arith::factorize(n, arith::DEFAULT_EFFORT).py()?.factors)
}

#[pymodule]
fn wallsun(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("WallsunError", py.get_type::<WallsunError>())?;
    m.add("FactorizationError", py.get_type::<FactorizationError>())?;
    m.add_class::<PyLucasParams>()?;
    m.add_class::<PyPeriodResult>()?;
    m.add_class::<PyWssCertificate>()?;
    m.add_class::<PyTrinomialSpec>()?;
    m.add_class::<PyPrimeVerdict>()?;
    m.add_class::<PyMonogenicityReport>()?;
    m.add_class::<PyCrossValidation>()?;
    m.add_function(wrap_pyfunction!(period, m)?)?;
    m.add_function(wrap_pyfunction!(period_prime, m)?)?;
    m.add_function(wrap_pyfunction!(period_prime_squared, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_u_mod, m)?)?;
    m.add_function(wrap_pyfunction!(is_wss, m)?)?;
    m.add_function(wrap_pyfunction!(search_wss, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_root_check, m)?)?;
    m.add_function(wrap_pyfunction!(jks_prime_check, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_index_coprime, m)?)?;
    m.add_function(wrap_pyfunction!(is_monogenic_family, m)?)?;
    m.add_function(wrap_pyfunction!(trinomial_report, m)?)?;
    m.add_function(wrap_pyfunction!(prediction_hypotheses, m)?)?;
    m.add_function(wrap_pyfunction!(predict_monogenic, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    Ok(())
}
