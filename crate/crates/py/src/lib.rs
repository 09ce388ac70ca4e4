use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mpalkit::analysis;
use mpalkit::cf;
use mpalkit::generators::FamilySpec;
use mpalkit::mpal::{self, ScanStrategy};
use mpalkit::quadratic::{self, ScaleDirection};

create_exception!(mpalkit, MpalkitError, PyValueError);

fn err(e: mpalkit::Error) -> PyErr {
    MpalkitError::new_err(e.to_string())
}

/// A word given as a `Word`, as `"2,1,1,3,1"` or as a list of integers.
#[derive(FromPyObject)]
enum WordArg {
    Word(PyWord),
    Text(String),
    Terms(Vec<u64>),
}

impl WordArg {
    fn word(self) -> PyResult<mpalkit::Word> {
        match self {
            WordArg::Word(w) => Ok(w.0),
            WordArg::Text(s) => s.parse().map_err(err),
            WordArg::Terms(t) => Ok(mpalkit::Word::new(t)),
        }
    }
}

#[pyclass(name = "Word", module = "mpalkit", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyWord(mpalkit::Word);

#[pymethods]
impl PyWord {
    #[new]
    fn new(word: WordArg) -> PyResult<Self> {
        Ok(PyWord(word.word()?))
    }

    #[getter]
    fn terms(&self) -> Vec<u64> {
        self.0.terms().to_vec()
    }

    fn reverse(&self) -> Self {
        PyWord(self.0.reverse())
    }

    fn concat(&self, other: &PyWord) -> Self {
        PyWord(self.0.concat(&other.0))
    }

    fn is_palindrome(&self) -> bool {
        self.0.is_palindrome()
    }

    /// `(p, q)` with `[A] = p / q`.
    fn value(&self) -> PyResult<(BigInt, BigInt)> {
        let v = cf::evaluate(&self.0).map_err(err)?;
        Ok((v.numer().clone(), v.denom().clone()))
    }

    fn simplify(&self) -> PyResult<Self> {
        cf::simplify(&self.0).map(PyWord).map_err(err)
    }

    fn is_m_palindrome(&self, m: u64) -> PyResult<bool> {
        if self.0.is_positive() {
            mpal::is_m_palindrome(&self.0, m).map_err(err)
        } else {
            mpal::is_m_palindrome_extended(&self.0, m).map_err(err)
        }
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }
}

#[pyclass(name = "QuadraticIrrational", module = "mpalkit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyQuadratic(mpalkit::QuadraticIrrational);

#[pymethods]
impl PyQuadratic {
    /// `(P + √D) / Q`.
    #[new]
    fn new(p: BigInt, d: BigInt, q: BigInt) -> PyResult<Self> {
        mpalkit::QuadraticIrrational::new(p, d, q).map(PyQuadratic).map_err(err)
    }

    /// Value of an eventually periodic word `"U|W"`.
    #[staticmethod]
    fn from_periodic(word: &str) -> PyResult<Self> {
        let e: mpalkit::EventuallyPeriodicWord = word.parse().map_err(err)?;
        quadratic::periodic_value(&e).map(PyQuadratic).map_err(err)
    }

    #[getter(P)]
    fn p(&self) -> BigInt {
        self.0.p().clone()
    }

    #[getter(D)]
    fn d(&self) -> BigInt {
        self.0.d().clone()
    }

    #[getter(Q)]
    fn q(&self) -> BigInt {
        self.0.q().clone()
    }

    fn minimal_polynomial(&self) -> (BigInt, BigInt, BigInt) {
        let (a, b, c) = self.0.minimal_polynomial();
        (a.clone(), b.clone(), c.clone())
    }

    fn conjugate(&self) -> Self {
        PyQuadratic(self.0.conjugate())
    }

    fn is_reduced(&self) -> bool {
        self.0.is_reduced()
    }

    #[pyo3(signature = (m, divide = true))]
    fn scale(&self, m: u64, divide: bool) -> PyResult<Self> {
        let dir = if divide { ScaleDirection::Divide } else { ScaleDirection::Multiply };
        self.0.scale(m, dir).map(PyQuadratic).map_err(err)
    }

    fn __float__(&self) -> f64 {
        self.0.approx()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QuadraticIrrational({}, {}, {})", self.0.p(), self.0.d(), self.0.q())
    }
}

#[pyfunction]
fn evaluate(word: WordArg) -> PyResult<(BigInt, BigInt)> {
    PyWord(word.word()?).value()
}

#[pyfunction]
fn simplify(word: WordArg) -> PyResult<PyWord> {
    cf::simplify(&word.word()?).map(PyWord).map_err(err)
}

/// `(p_0..p_n, q_0..q_n)`.
#[pyfunction]
fn convergents(word: WordArg) -> PyResult<(Vec<BigInt>, Vec<BigInt>)> {
    let t = cf::convergents(&word.word()?);
    Ok((t.numerators().to_vec(), t.denominators().to_vec()))
}

#[pyfunction]
fn is_m_palindrome(word: WordArg, m: u64) -> PyResult<bool> {
    PyWord(word.word()?).is_m_palindrome(m)
}

#[pyfunction]
fn sandwich(a: WordArg, b: WordArg, m: u64) -> PyResult<PyWord> {
    mpal::sandwich(&a.word()?, &b.word()?, m).map(PyWord).map_err(err)
}

#[pyfunction]
fn square(a: WordArg, m: u64) -> PyResult<PyWord> {
    mpal::square(&a.word()?, m).map(PyWord).map_err(err)
}

fn stream(spec: &str) -> PyResult<mpalkit::WordStream> {
    spec.parse::<FamilySpec>().and_then(|f| f.stream()).map_err(err)
}

/// First `length` terms of a named family such as `"st_number"` or `"fib:m=2,r=1,s=2"`.
#[pyfunction]
fn generate(family: &str, length: usize) -> PyResult<PyWord> {
    Ok(PyWord(stream(family)?.prefix(length)))
}

#[pyfunction]
#[pyo3(signature = (family, m, depth, window = mpal::DEFAULT_WINDOW))]
fn density<'py>(py: Python<'py>, family: &str, m: u64, depth: usize, window: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = stream(family)?;
    let r = py
        .detach(|| mpal::mpal_prefixes_with(&s, m, depth, ScanStrategy::Auto, window))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("prefix_lengths", r.prefix_lengths)?;
    d.set_item("ratios", r.ratios.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    d.set_item("tail_sup", r.tail_sup.map(|x| x.to_string()))?;
    Ok(d)
}

/// `(verdict, rotation, split)` where verdict is `"One"`, `"Two"` or `"None"`.
#[pyfunction]
#[pyo3(signature = (period, max_repeat = 2))]
fn burger_split(period: WordArg, max_repeat: usize) -> PyResult<(String, Option<PyWord>, Option<usize>)> {
    let r = quadratic::burger_split(&period.word()?, max_repeat).map_err(err)?;
    let verdict = format!("{:?}", r.verdict);
    Ok(match r.witness {
        Some(w) => (verdict, Some(PyWord(w.rotation)), w.split),
        None => (verdict, None, None),
    })
}

#[pyfunction]
#[pyo3(signature = (family, m, w = "8/5", depth = 200))]
fn schmidt_audit<'py>(py: Python<'py>, family: &str, m: u64, w: &str, depth: usize) -> PyResult<Bound<'py, PyDict>> {
    let s = stream(family)?;
    let w = analysis::parse_rational(w).map_err(err)?;
    let audit = py.detach(|| analysis::schmidt_audit(&s, m, &w, depth)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("indices", audit.records.iter().map(|r| r.index).collect::<Vec<_>>())?;
    d.set_item("i0", audit.i0)?;
    d.set_item("all_schmidt", audit.all_schmidt())?;
    d.set_item("goal_from_i0", audit.goal_from_i0())?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "mpalkit")]
fn mpalkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MpalkitError", m.py().get_type::<MpalkitError>())?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyQuadratic>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(simplify, m)?)?;
    m.add_function(wrap_pyfunction!(convergents, m)?)?;
    m.add_function(wrap_pyfunction!(is_m_palindrome, m)?)?;
    m.add_function(wrap_pyfunction!(sandwich, m)?)?;
    m.add_function(wrap_pyfunction!(square, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(burger_split, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_audit, m)?)?;
    Ok(())
}
