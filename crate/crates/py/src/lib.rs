//! Python bindings. Functions accept a `GaussianInt`, a Python `int`, or a
//! literal such as `"3-2i"` wherever a Gaussian integer is expected.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyTypeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use gaussform::binary::{self, ClassCWitness};
use gaussform::oracle::{with_workers, SweepKind};
use gaussform::quaternary::{self, QuatRep};
use gaussform::ramanujan::{self, DiagonalFormZ, RestrictionSpec};
use gaussform::{self as core, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "GaussianInt", module = "gaussform", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGaussianInt(core::GaussianInt);

fn arg(obj: &Bound<'_, PyAny>) -> PyResult<core::GaussianInt> {
    if let Ok(g) = obj.extract::<PyRef<'_, PyGaussianInt>>() {
        return Ok(g.0.clone());
    }
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(core::GaussianInt::new(n, 0));
    }
    if let Ok(s) = obj.extract::<String>() {
        return core::parse_gaussian(&s).map_err(err);
    }
    Err(PyTypeError::new_err("expected GaussianInt, int or str"))
}

fn wrap(g: core::GaussianInt) -> PyGaussianInt {
    PyGaussianInt(g)
}

#[pymethods]
impl PyGaussianInt {
    #[new]
    #[pyo3(signature = (re = BigInt::from(0), im = BigInt::from(0)))]
    fn py_new(re: BigInt, im: BigInt) -> Self {
        PyGaussianInt(core::GaussianInt::new(re, im))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_gaussian(text).map(wrap).map_err(err)
    }

    #[getter]
    fn re(&self) -> BigInt {
        self.0.re.clone()
    }

    #[getter]
    fn im(&self) -> BigInt {
        self.0.im.clone()
    }

    fn norm(&self) -> BigUint {
        self.0.norm()
    }

    fn conj(&self) -> Self {
        wrap(self.0.conj())
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(&self.0 + &arg(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(&self.0 - &arg(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(&arg(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(wrap(&self.0 * &arg(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        wrap(-self.0.clone())
    }

    fn __pow__(&self, exp: u32, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        match modulo {
            None => Ok(wrap(self.0.pow(exp))),
            Some(m) => core::mod_pow(&self.0, &BigUint::from(exp), &arg(m)?)
                .map(wrap)
                .map_err(err),
        }
    }

    fn __divmod__(&self, other: &Bound<'_, PyAny>) -> PyResult<(Self, Self)> {
        let (q, r) = core::divmod_centered(&self.0, &arg(other)?).map_err(err)?;
        Ok((wrap(q), wrap(r)))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        arg(other).map(|o| o == self.0).unwrap_or(false)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GaussianInt('{}')", self.0)
    }
}

#[pyfunction]
fn norm(z: &Bound<'_, PyAny>) -> PyResult<BigUint> {
    Ok(core::norm(&arg(z)?))
}

/// `(s, w)` with `z = i^s * w` and `w` in the canonical sector.
#[pyfunction]
fn canonicalize(z: &Bound<'_, PyAny>) -> PyResult<(u8, PyGaussianInt)> {
    let (s, w) = core::canonicalize(&arg(z)?).map_err(err)?;
    Ok((s.exponent(), wrap(w)))
}

#[pyfunction]
fn gcd(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<PyGaussianInt> {
    core::gcd(&arg(a)?, &arg(b)?).map(wrap).map_err(err)
}

/// `(s, [(p, alpha), ...])` with primes in ascending well-order.
#[pyfunction]
fn factorize(z: &Bound<'_, PyAny>) -> PyResult<(u8, Vec<(PyGaussianInt, u32)>)> {
    let f = core::factorize(&arg(z)?).map_err(err)?;
    let factors = f.factors.into_iter().map(|pp| (wrap(pp.p), pp.alpha)).collect();
    Ok((f.s.exponent(), factors))
}

#[pyfunction]
fn nu(z: &Bound<'_, PyAny>) -> PyResult<u64> {
    core::nu(&arg(z)?).map_err(err)
}

#[pyfunction]
fn classify(p: &Bound<'_, PyAny>) -> PyResult<String> {
    core::classify(&arg(p)?).map(|c| c.to_string()).map_err(err)
}

#[pyfunction]
fn is_canonical_prime(p: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(core::is_canonical_prime(&arg(p)?))
}

#[pyfunction]
fn primes_up_to(bound: u64) -> Vec<PyGaussianInt> {
    core::primes_up_to(bound).into_iter().map(wrap).collect()
}

/// `(x, y)` with `x^2 + i*y^2 = p` for a class A or B prime.
#[pyfunction]
fn descend(p: &Bound<'_, PyAny>) -> PyResult<(PyGaussianInt, PyGaussianInt)> {
    let (x, y) = binary::descend(&arg(p)?).map_err(err)?;
    Ok((wrap(x), wrap(y)))
}

/// `(x, y, twisted)` with `p = x^2 + y^2`, or `p = i(x^2 + y^2)` when twisted.
#[pyfunction]
fn represent_class_c(p: &Bound<'_, PyAny>) -> PyResult<(PyGaussianInt, PyGaussianInt, bool)> {
    let ClassCWitness { x, y, twisted } = binary::represent_class_c(&arg(p)?).map_err(err)?;
    Ok((wrap(x), wrap(y), twisted))
}

/// `(x, y, z, w)` with `x^2 + i*y^2 + z^2 + i*w^2 = t`.
#[pyfunction]
fn represent(t: &Bound<'_, PyAny>) -> PyResult<(PyGaussianInt, PyGaussianInt, PyGaussianInt, PyGaussianInt)> {
    let [x, y, z, w] = quaternary::represent(&arg(t)?).map_err(err)?.parts();
    Ok((wrap(x), wrap(y), wrap(z), wrap(w)))
}

#[pyfunction]
fn evaluate(
    x: &Bound<'_, PyAny>,
    y: &Bound<'_, PyAny>,
    z: &Bound<'_, PyAny>,
    w: &Bound<'_, PyAny>,
) -> PyResult<PyGaussianInt> {
    let r = QuatRep::from_parts([arg(x)?, arg(y)?, arg(z)?, arg(w)?]);
    Ok(wrap(quaternary::evaluate(&r)))
}

#[pyfunction]
fn niven_mordell_representable(a: BigInt, b: BigInt) -> bool {
    binary::niven_mordell_representable(&a, &b)
}

/// Coefficients of the diagonal form given by a preset name or restriction text.
#[pyfunction]
fn restrict(spec: &str) -> PyResult<[u64; 4]> {
    let spec = match RestrictionSpec::preset(spec) {
        Some(s) => s,
        None => spec.parse().map_err(err)?,
    };
    ramanujan::restrict(&spec).map(|f| f.coeffs).map_err(err)
}

/// First `n` in `1..=bound` the form misses, or `None`.
#[pyfunction]
fn represents_all_up_to(py: Python<'_>, coeffs: [u64; 4], bound: u64) -> Option<u64> {
    py.detach(|| ramanujan::represents_all_up_to(&DiagonalFormZ { coeffs }, bound))
}

/// Run a named sweep and return its JSON report.
#[pyfunction]
#[pyo3(signature = (kind, bound = None, seed = 0, workers = None))]
fn sweep(py: Python<'_>, kind: &str, bound: Option<u64>, seed: u64, workers: Option<usize>) -> PyResult<String> {
    let kind: SweepKind = kind.parse().map_err(err)?;
    let bound = bound.unwrap_or_else(|| kind.default_bound());
    let report = py.detach(|| match workers {
        Some(k) => with_workers(k, || kind.run(bound, seed)),
        None => kind.run(bound, seed),
    });
    Ok(report.to_json())
}

#[pymodule]
#[pyo3(name = "gaussform")]
fn gaussform_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussianInt>()?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(is_canonical_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(descend, m)?)?;
    m.add_function(wrap_pyfunction!(represent_class_c, m)?)?;
    m.add_function(wrap_pyfunction!(represent, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(niven_mordell_representable, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    m.add_function(wrap_pyfunction!(represents_all_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
