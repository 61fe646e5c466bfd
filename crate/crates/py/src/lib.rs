//! Python bindings: `import freeconv_py`.
//!
//! Rationals cross the boundary as `"a/b"` strings; reports and other
//! structured results as JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use freeconv::lab::{self, SearchConfig, VerifyRequest};
use freeconv::majorization::{majorizes, EnclosedVec};
use freeconv::multiaffine::{self, MultiPoly};
use freeconv::rat::{self, Rat};
use freeconv::{horn, poly, roots, RatPoly};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(s: &str) -> PyResult<Rat> {
    rat::parse(s).map_err(err)
}

fn parse_all(v: &[String]) -> PyResult<Vec<Rat>> {
    v.iter().map(|s| parse(s)).collect()
}

/// Univariate polynomial with exact rational coefficients, lowest degree
/// first.
#[pyclass(name = "Poly", module = "freeconv_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: RatPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (coeffs, n=None))]
    fn new(coeffs: Vec<String>, n: Option<usize>) -> PyResult<Self> {
        let c = parse_all(&coeffs)?;
        let p = RatPoly::from_coeffs(c);
        let n = n.unwrap_or(p.deg());
        Ok(PyPoly {
            inner: p.with_ambient(n).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_roots(roots: Vec<String>) -> PyResult<Self> {
        Ok(PyPoly {
            inner: RatPoly::from_roots(&parse_all(&roots)?),
        })
    }

    #[staticmethod]
    fn x_pow(n: usize) -> Self {
        PyPoly {
            inner: RatPoly::x_pow(n),
        }
    }

    #[staticmethod]
    fn u_alpha(n: usize, alpha: &str) -> PyResult<Self> {
        Ok(PyPoly {
            inner: poly::u_alpha(n, &parse(alpha)?),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.deg()
    }

    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(rat::format).collect()
    }

    fn eval(&self, x: &str) -> PyResult<String> {
        Ok(rat::format(&self.inner.eval(&parse(x)?)))
    }

    /// `self ⊞ⁿ other`, with `n` defaulting to the larger ambient degree.
    #[pyo3(signature = (other, n=None))]
    fn boxplus(&self, other: &PyPoly, n: Option<usize>) -> PyResult<Self> {
        let n = n.unwrap_or(self.inner.ambient().max(other.inner.ambient()));
        Ok(PyPoly {
            inner: poly::boxplus(&self.inner, &other.inner, n).map_err(err)?,
        })
    }

    /// `p − α p′`.
    fn apply_u_alpha(&self, alpha: &str) -> PyResult<Self> {
        Ok(PyPoly {
            inner: poly::apply_u_alpha(&self.inner, &parse(alpha)?),
        })
    }

    fn is_real_rooted(&self) -> bool {
        roots::is_real_rooted(&self.inner)
    }

    /// Root enclosures `(lo, hi, multiplicity)`, one per root counted with
    /// multiplicity, in non-increasing order.
    #[pyo3(signature = (eps="2^-40"))]
    fn roots(&self, eps: &str) -> PyResult<Vec<(String, String, usize)>> {
        let rv = roots::root_vector(&self.inner, &parse(eps)?).map_err(err)?;
        Ok(rv
            .entries
            .iter()
            .map(|e| (rat::format(&e.lo), rat::format(&e.hi), e.mult))
            .collect())
    }

    #[pyo3(signature = (eps="2^-40"))]
    fn maxroot(&self, eps: &str) -> PyResult<(String, String)> {
        let e = roots::maxroot(&self.inner, &parse(eps)?).map_err(err)?;
        Ok((rat::format(&e.lo), rat::format(&e.hi)))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyPoly {
            inner: serde_json::from_str(s).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, n={})", self.inner, self.inner.ambient())
    }
}

/// Run a verifier on a request given as JSON (a saved report also works).
#[pyfunction]
#[pyo3(signature = (request, eps="2^-40"))]
fn verify(request: &str, eps: &str) -> PyResult<String> {
    let mut v: serde_json::Value = serde_json::from_str(request).map_err(err)?;
    if let Some(inner) = v.get("inputs") {
        v = inner.clone();
    }
    let req: VerifyRequest = serde_json::from_value(v).map_err(err)?;
    let rep = lab::verify(&req, &parse(eps)?).map_err(err)?;
    serde_json::to_string(&rep).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (statement, n, trials, seed, eps="2^-40"))]
fn search(statement: &str, n: usize, trials: u64, seed: u64, eps: &str) -> PyResult<String> {
    let mut cfg = SearchConfig::new(statement, n, trials, seed);
    cfg.eps = parse(eps)?;
    let out = lab::search_conjectures(&cfg).map_err(err)?;
    serde_json::to_string(&out).map_err(err)
}

/// Horn triples `(I, J, K)` with `|I| = r`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn horn_triples(n: usize, r: usize) -> PyResult<Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>> {
    Ok(horn::horn_triples(n, r)
        .map_err(err)?
        .into_iter()
        .map(|t| (t.i, t.j, t.k))
        .collect())
}

/// `"Verified"`, `"ViolatedCertified"` or `"Indeterminate"` for `y ≺ x`.
#[pyfunction]
fn majorizes_status(x: Vec<String>, y: Vec<String>) -> PyResult<String> {
    let (x, y) = (parse_all(&x)?, parse_all(&y)?);
    let v = majorizes(&EnclosedVec::from_rats(&x), &EnclosedVec::from_rats(&y), &rat::pow2(-40))
        .map_err(err)?;
    Ok(v.status().to_string())
}

/// Multivariate convolution of two `{"gamma", "terms"}` JSON polynomials.
#[pyfunction]
fn convolve_multi(p: &str, q: &str) -> PyResult<String> {
    let p: MultiPoly = serde_json::from_str(p).map_err(err)?;
    let q: MultiPoly = serde_json::from_str(q).map_err(err)?;
    serde_json::to_string(&multiaffine::boxplus_gamma(&p, &q).map_err(err)?).map_err(err)
}

/// Counterexample report as JSON; `all_checks_pass` summarises the checks.
#[pyfunction]
#[pyo3(signature = (eps="2^-40"))]
fn reproduce_counterexample(eps: &str) -> PyResult<String> {
    let (rep, ok) = lab::counterexample_report(&parse(eps)?).map_err(err)?;
    let mut v = serde_json::to_value(&rep).map_err(err)?;
    v["all_checks_pass"] = serde_json::json!(ok);
    serde_json::to_string(&v).map_err(err)
}

#[pymodule]
fn freeconv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(horn_triples, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes_status, m)?)?;
    m.add_function(wrap_pyfunction!(convolve_multi, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_counterexample, m)?)?;
    Ok(())
}
