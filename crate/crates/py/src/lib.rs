//! Python module `normbase`: exact counts, normality and N-polynomial tests,
//! `x^n - 1` factorization and the verification sweep.
//!
//! Field orders are accepted as an `int` or a `"p^k"` string. Field elements
//! are lists of canonical integers, constant term first; polynomials likewise.

// pyo3 0.22 macros expand to `PyErr::from(PyErr)`.
#![allow(clippy::useless_conversion)]

use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use normbase::counting::{self, CountReport, PrimePower};
use normbase::gf::{self as gf, Field, DEFAULT_ELEMENT_BUDGET};
use normbase::oracle::{self, NPolyVerdict};
use normbase::polyring::{self, Poly, DEFAULT_POLY_BUDGET, DEFAULT_SEED};
use normbase::sweep::{self, SweepConfig};
use normbase::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyMemoryError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// `int` or `"p^k"`.
#[derive(FromPyObject)]
pub enum Order {
    Int(u64),
    Text(String),
}

impl Order {
    fn prime_power(&self) -> PyResult<PrimePower> {
        match self {
            Order::Int(q) => PrimePower::from_q(*q),
            Order::Text(s) => s.parse(),
        }
        .map_err(py_err)
    }
}

fn spec(q: &Order) -> PyResult<gf::FieldSpec> {
    gf::FieldSpec::from_prime_power(q.prime_power()?).map_err(py_err)
}

/// Rejects coefficients outside `0..q`.
fn coeffs(v: Vec<u64>, k: &gf::FieldSpec) -> PyResult<Vec<u64>> {
    match v.iter().find(|&&x| x >= k.q()) {
        Some(x) => Err(PyValueError::new_err(format!("{x} is not an element of F_{}", k.q()))),
        None => Ok(v),
    }
}

fn to_poly(v: Vec<u64>, k: &gf::FieldSpec) -> PyResult<Poly<u64>> {
    Ok(Poly::new(coeffs(v, k)?, k))
}

/// The field `F_q`.
#[pyclass(name = "FieldSpec", module = "normbase", frozen)]
#[derive(Clone)]
pub struct PyFieldSpec {
    inner: gf::FieldSpec,
}

#[pymethods]
impl PyFieldSpec {
    #[new]
    fn new(q: Order) -> PyResult<Self> {
        Ok(PyFieldSpec { inner: spec(&q)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Defining polynomial over `F_p`, or `None` for a prime field.
    #[getter]
    fn modulus(&self) -> Option<Vec<u64>> {
        self.inner.modulus().map(|g| g.coeffs().to_vec())
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(&[a, b])?;
        Ok(self.inner.add(&a, &b))
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(&[a, b])?;
        Ok(self.inner.sub(&a, &b))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        self.check(&[a, b])?;
        Ok(self.inner.mul(&a, &b))
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        self.check(&[a])?;
        self.inner.inv(&a).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("FieldSpec({})", self.inner.q())
    }
}

impl PyFieldSpec {
    fn check(&self, xs: &[u64]) -> PyResult<()> {
        coeffs(xs.to_vec(), &self.inner).map(drop)
    }
}

impl PyExtField {
    fn elem(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let a = coeffs(a, self.inner.base())?;
        self.inner.check(&a).map_err(py_err)?;
        Ok(a)
    }
}

/// The extension `F_{q^n} = F_q[x]/(f)`.
#[pyclass(name = "ExtField", module = "normbase", frozen)]
pub struct PyExtField {
    inner: gf::ExtSpec,
}

#[pymethods]
impl PyExtField {
    /// `modulus` defaults to the lexicographically smallest monic
    /// irreducible of degree `n`.
    #[new]
    #[pyo3(signature = (q, n=None, modulus=None))]
    fn new(q: Order, n: Option<usize>, modulus: Option<Vec<u64>>) -> PyResult<Self> {
        let k = spec(&q)?;
        let inner = match (modulus, n) {
            (Some(m), n) => {
                let e = gf::ExtSpec::with_modulus(&k, to_poly(m, &k)?).map_err(py_err)?;
                if n.is_some_and(|n| n != e.degree()) {
                    return Err(PyValueError::new_err("n disagrees with the modulus degree"));
                }
                e
            }
            (None, Some(n)) => gf::ExtSpec::new(&k, n).map_err(py_err)?,
            (None, None) => return Err(PyValueError::new_err("give n or modulus")),
        };
        Ok(PyExtField { inner })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().coeffs().to_vec()
    }

    #[getter]
    fn base(&self) -> PyFieldSpec {
        PyFieldSpec { inner: self.inner.base().clone() }
    }

    fn mul(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u64>> {
        let (a, b) = (self.elem(a)?, self.elem(b)?);
        Ok(self.inner.mul(&a, &b))
    }

    fn frobenius(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        self.inner.frobenius(&self.elem(a)?).map_err(py_err)
    }

    fn field_trace(&self, a: Vec<u64>) -> PyResult<u64> {
        self.inner.field_trace(&self.elem(a)?).map_err(py_err)
    }

    /// Rank and Hensel–Ore gcd criteria, required to agree.
    fn is_normal(&self, a: Vec<u64>) -> PyResult<bool> {
        oracle::is_normal(&self.elem(a)?, &self.inner).map_err(py_err)
    }

    fn degree_of(&self, a: Vec<u64>) -> PyResult<usize> {
        oracle::degree_of(&self.elem(a)?, &self.inner).map_err(py_err)
    }

    #[pyo3(signature = (budget=DEFAULT_ELEMENT_BUDGET))]
    fn count_normal_elements(&self, py: Python<'_>, budget: u64) -> PyResult<BigUint> {
        py.allow_threads(|| oracle::count_normal_elements(&self.inner, budget)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("ExtField(q={}, n={})", self.inner.base().q(), self.inner.degree())
    }
}

#[pyfunction]
fn v_count(n: u64, q: Order) -> PyResult<BigUint> {
    counting::v_count(n, q.prime_power()?).map_err(py_err)
}

#[pyfunction]
fn normal_basis_count(n: u64, q: Order) -> PyResult<BigUint> {
    counting::normal_basis_count(n, q.prime_power()?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, q, t=1))]
fn irr_count_trace(n: u64, q: Order, t: u64) -> PyResult<BigUint> {
    counting::irr_count_trace(n, q.prime_power()?, t).map_err(py_err)
}

#[pyfunction]
fn nonzero_trace_irr_count(n: u64, q: Order) -> PyResult<BigUint> {
    counting::nonzero_trace_irr_count(n, q.prime_power()?).map_err(py_err)
}

#[pyfunction]
fn total_irr_count(n: u64, q: Order) -> PyResult<BigUint> {
    counting::total_irr_count(n, q.prime_power()?).map_err(py_err)
}

/// `(lhs, rhs)` of the normal-element / nonzero-trace inequality.
#[pyfunction]
fn inequality_sides(n: u64, q: Order) -> PyResult<(BigUint, BigUint)> {
    counting::inequality_sides(n, q.prime_power()?).map_err(py_err)
}

#[pyfunction]
fn equality_predicate(n: u64, q: Order) -> PyResult<bool> {
    Ok(counting::equality_predicate(n, q.prime_power()?))
}

/// `"npoly"`, `"reducible"`, `"zero-trace"` or `"rank-deficient:<rank>"`.
#[pyfunction]
fn npoly_verdict(poly: Vec<u64>, q: Order) -> PyResult<String> {
    let k = spec(&q)?;
    let f = to_poly(poly, &k)?;
    Ok(match oracle::n_polynomial_verdict(&f, &k).map_err(py_err)? {
        NPolyVerdict::NPolynomial => "npoly".into(),
        NPolyVerdict::Reducible => "reducible".into(),
        NPolyVerdict::ZeroTrace => "zero-trace".into(),
        NPolyVerdict::RankDeficient { rank } => format!("rank-deficient:{rank}"),
    })
}

#[pyfunction]
fn is_n_polynomial(poly: Vec<u64>, q: Order) -> PyResult<bool> {
    let k = spec(&q)?;
    oracle::is_n_polynomial(&to_poly(poly, &k)?, &k).map_err(py_err)
}

#[pyfunction]
fn is_irreducible(poly: Vec<u64>, q: Order) -> PyResult<bool> {
    let k = spec(&q)?;
    polyring::is_irreducible(&to_poly(poly, &k)?, &k).map_err(py_err)
}

/// `(npoly_count, nonzero_trace_count, containment_ok)` by exhaustive scan.
#[pyfunction]
#[pyo3(signature = (n, q, budget=DEFAULT_POLY_BUDGET))]
fn count_npolys_and_traces(py: Python<'_>, n: usize, q: Order, budget: u64) -> PyResult<(BigUint, BigUint, bool)> {
    let k = spec(&q)?;
    let c = py.allow_threads(|| oracle::count_npolys_and_traces(n, &k, budget)).map_err(py_err)?;
    Ok((c.npoly_count, c.nonzero_trace_count, c.containment_ok))
}

#[pyfunction]
#[pyo3(signature = (n, q, budget=DEFAULT_POLY_BUDGET))]
fn find_witness(py: Python<'_>, n: usize, q: Order, budget: u64) -> PyResult<Option<Vec<u64>>> {
    let k = spec(&q)?;
    let w = py.allow_threads(|| oracle::find_witness(n, &k, budget)).map_err(py_err)?;
    Ok(w.map(|f| f.coeffs().to_vec()))
}

/// `(d, tau, factors)` for one cyclotomic block.
type FactorBlock = (u64, u64, Vec<Vec<u64>>);

/// `[(d, tau, [factor, ...]), ...]` for `x^n - 1`; every factor has
/// multiplicity `p^e`.
#[pyfunction]
#[pyo3(signature = (n, q, seed=DEFAULT_SEED))]
fn factor_xn_minus_1(n: u64, q: Order, seed: u64) -> PyResult<Vec<FactorBlock>> {
    let k = spec(&q)?;
    let t = polyring::factor_xn_minus_1(n, &k, seed).map_err(py_err)?;
    Ok(t.blocks.iter().map(|b| (b.d, b.tau, b.factors.iter().map(|f| f.coeffs().to_vec()).collect())).collect())
}

fn report_dict<'py>(py: Python<'py>, r: &CountReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("q", r.q)?;
    d.set_item("n", r.n)?;
    d.set_item("m", r.m)?;
    d.set_item("e", r.e)?;
    d.set_item("lhs", r.lhs.clone())?;
    d.set_item("rhs", r.rhs.clone())?;
    d.set_item("equality", r.equality)?;
    d.set_item("predicate", r.predicate)?;
    d.set_item("v", r.v.clone())?;
    d.set_item("nb_count", r.nb_count.clone())?;
    d.set_item("irr_nonzero_trace", r.irr_nonzero_trace.clone())?;
    d.set_item("oracle_v", r.oracle_v.clone())?;
    d.set_item("oracle_npoly", r.oracle_npoly.clone())?;
    d.set_item("oracle_irr", r.oracle_irr.clone())?;
    d.set_item("violation", r.violation())?;
    Ok(d)
}

/// One report dict per `(q, n)` in sorted order.
#[pyfunction]
#[pyo3(signature = (qs, ns, oracle=false, workers=0))]
fn verify<'py>(
    py: Python<'py>,
    qs: Vec<Order>,
    ns: Vec<u64>,
    oracle: bool,
    workers: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let config = SweepConfig {
        qs: qs.iter().map(Order::prime_power).collect::<PyResult<_>>()?,
        ns,
        oracle,
        workers,
        ..SweepConfig::default()
    };
    let reports = py.allow_threads(|| sweep::run_verify(&config)).map_err(py_err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

#[pymodule]
#[pyo3(name = "normbase")]
pub fn normbase_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFieldSpec>()?;
    m.add_class::<PyExtField>()?;
    m.add_function(wrap_pyfunction!(v_count, m)?)?;
    m.add_function(wrap_pyfunction!(normal_basis_count, m)?)?;
    m.add_function(wrap_pyfunction!(irr_count_trace, m)?)?;
    m.add_function(wrap_pyfunction!(nonzero_trace_irr_count, m)?)?;
    m.add_function(wrap_pyfunction!(total_irr_count, m)?)?;
    m.add_function(wrap_pyfunction!(inequality_sides, m)?)?;
    m.add_function(wrap_pyfunction!(equality_predicate, m)?)?;
    m.add_function(wrap_pyfunction!(npoly_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(is_n_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(count_npolys_and_traces, m)?)?;
    m.add_function(wrap_pyfunction!(find_witness, m)?)?;
    m.add_function(wrap_pyfunction!(factor_xn_minus_1, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
