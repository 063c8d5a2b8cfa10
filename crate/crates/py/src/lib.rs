//! Python bindings for the ring, matrix, cohomology, enumeration and
//! normalization layers.

use pyo3::exceptions::{PyValueError, PyRuntimeError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use defring::acceptance;
use defring::defo::{classify_strict, encode_hom, encode_mat, h1_dimension, verify_exceptional_lift, Certificate};
use defring::groups::NamedGroup;
use defring::localring::find_homs;
use defring::matrix::{decompose_transvections, transvection};
use defring::normalize::{induced_lift, normalize_lift, random_congruence_matrix, seeded_rng};
use defring::{Error, Ideal, Mat, RingSpec};

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::PreconditionViolated(_) | Error::UnsupportedCase(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_i64().map_or_else(
                || n.as_f64().unwrap_or(f64::NAN).into_pyobject(py).map(|x| x.into_any()),
                |i| i.into_pyobject(py).map(|x| x.into_any()),
            )?,
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn group(name: &str) -> PyResult<NamedGroup> {
    name.parse().map_err(err)
}

/// A finite local ring given by a spec such as `Z/9` or `Z/2[x]/(x^3)`.
#[pyclass(name = "Ring", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRing(RingSpec);

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyRing).map_err(err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn size(&self) -> Option<u64> {
        self.0.size()
    }

    #[getter]
    fn nilpotency_index(&self) -> u32 {
        self.0.nilpotency_index()
    }

    fn residue_field(&self) -> PyRing {
        PyRing(self.0.residue_field())
    }

    /// Elements in canonical order, as strings.
    fn elements(&self) -> PyResult<Vec<String>> {
        match self.0.size() {
            Some(s) if s <= 1 << 16 => Ok(self.0.elements().map(|x| x.to_string()).collect()),
            _ => Err(PyValueError::new_err(format!("{} is too large to list", self.0))),
        }
    }

    fn normalize_element(&self, s: &str) -> PyResult<String> {
        self.0.parse_elt(s).map(|x| x.to_string()).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.0.to_string())
    }
}

/// A square matrix over a ring.
#[pyclass(name = "Matrix", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(Mat);

#[pymethods]
impl PyMatrix {
    /// Builds a matrix from rows of element strings.
    #[new]
    fn new(ring: &PyRing, rows: Vec<Vec<String>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| ring.0.parse_elt(s)).collect::<defring::Result<Vec<_>>>())
            .collect::<defring::Result<Vec<_>>>()
            .map_err(err)?;
        Mat::from_rows(&ring.0, &rows).map(PyMatrix).map_err(err)
    }

    #[staticmethod]
    fn identity(ring: &PyRing, n: usize) -> Self {
        PyMatrix(Mat::identity(&ring.0, n))
    }

    /// `I + r e_ab` with 0-based indices.
    #[staticmethod]
    fn transvection(ring: &PyRing, n: usize, a: usize, b: usize, r: &str) -> PyResult<Self> {
        let r = ring.0.parse_elt(r).map_err(err)?;
        transvection(n, a, b, &r).map(PyMatrix).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn entries(&self) -> Vec<Vec<String>> {
        self.0
            .entries()
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }

    fn det(&self) -> String {
        self.0.det().to_string()
    }

    fn trace(&self) -> String {
        self.0.trace().to_string()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PyMatrix).map_err(err)
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        if self.0.ring() != other.0.ring() || self.0.n() != other.0.n() {
            return Err(PyValueError::new_err("matrices over different rings or sizes"));
        }
        Ok(PyMatrix(self.0.mul(&other.0)))
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(e).map(PyMatrix).map_err(err)
    }

    /// Transvection factors `(a, b, r)`, 0-based, with every `r` in the
    /// ideal generated by `ideal` (the whole ring when omitted).
    #[pyo3(signature = (ideal=None))]
    fn decompose(&self, ideal: Option<Vec<String>>) -> PyResult<Vec<(usize, usize, String)>> {
        let ring = self.0.ring();
        let ideal = match ideal {
            None => Ideal::unit(ring),
            Some(gens) => Ideal::generated_by(
                ring,
                gens.iter().map(|s| ring.parse_elt(s)).collect::<defring::Result<_>>().map_err(err)?,
            ),
        };
        let word = decompose_transvections(&self.0, &ideal).map_err(err)?;
        Ok(word.factors.iter().map(|t| (t.a, t.b, t.r.to_string())).collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}, {})", self.0.ring(), self.0)
    }
}

/// Cocycle, coboundary and first cohomology dimensions for a named group.
#[pyfunction]
fn h1<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    report(py, &h1_dimension(&group(name)?.group()).map_err(err)?)
}

/// Number of lifts and strict classes of a named group's representation.
#[pyfunction]
#[pyo3(signature = (name, target, shards=1))]
fn enumerate(name: &str, target: &PyRing, shards: usize) -> PyResult<(usize, usize)> {
    let lifts = acceptance::lifts_of(group(name)?, &target.0, shards).map_err(err)?;
    let classes = classify_strict(&lifts).map_err(err)?;
    Ok((lifts.len(), classes.len()))
}

#[pyfunction]
#[pyo3(signature = (name, precision=20))]
fn verify_lift<'py>(py: Python<'py>, name: &str, precision: u32) -> PyResult<Bound<'py, PyAny>> {
    report(py, &verify_exceptional_lift(group(name)?, precision).map_err(err)?)
}

/// Certificate JSON for an induced lift conjugated by a random congruence
/// matrix.
#[pyfunction]
#[pyo3(signature = (source, target, n, hom=0, seed=0))]
fn make_certificate(source: &PyRing, target: &PyRing, n: usize, hom: usize, seed: u64) -> PyResult<String> {
    let homs = find_homs(&source.0, &target.0).map_err(err)?.homs;
    let f = homs
        .get(hom)
        .ok_or_else(|| PyValueError::new_err(format!("only {} homomorphisms", homs.len())))?;
    let k = random_congruence_matrix(&target.0, n, &mut seeded_rng(seed));
    let lift = induced_lift(f, n).map_err(err)?.conjugate(&k).map_err(err)?;
    let mut cert = Certificate::from_generator_lift(&lift);
    cert.conjugator = Some(encode_mat(&k));
    cert.hom = Some(encode_hom(f));
    Ok(cert.to_json())
}

/// Normalizes the lift in a certificate and returns the completed
/// certificate JSON, with `conjugator_chain` and `recovered_hom`.
#[pyfunction]
fn normalize(certificate: &str) -> PyResult<String> {
    let mut cert = Certificate::from_json(certificate).map_err(err)?;
    let lift = cert.to_generator_lift().map_err(err)?;
    let out = normalize_lift(&lift).map_err(err)?;
    cert.conjugator_chain = Some(out.chain.iter().map(encode_mat).collect());
    cert.recovered_hom = Some(encode_hom(&out.hom));
    Ok(cert.to_json())
}

/// Runs one acceptance criterion and returns its report.
#[pyfunction]
fn run_criterion<'py>(py: Python<'py>, criterion: u8) -> PyResult<Bound<'py, PyAny>> {
    report(py, &acceptance::run(criterion).map_err(err)?)
}

#[pymodule]
fn defring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(h1, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lift, m)?)?;
    m.add_function(wrap_pyfunction!(make_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    Ok(())
}
