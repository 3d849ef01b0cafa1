//! Python bindings. Types are wrapped thinly; structured results (reports,
//! kernels, witnesses) come back as plain dicts built from their JSON form.

use chevalley::examples::{builtin_examples, run_examples};
use chevalley::lie_data::{self, Family};
use chevalley::number_field::{self, LdOverride};
use chevalley::qforms::{self, DiagonalForm, RationalPlace};
use chevalley::report;
use chevalley::solitude::{self, CspAssumption, CspPolicy};
use num_rational::Ratio;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn policy(a1: &str, f4: &str) -> PyResult<CspPolicy> {
    Ok(CspPolicy {
        serre_conjecture_a1: a1.parse::<CspAssumption>().map_err(value_error)?,
        f4_rank_one_csp: f4.parse::<CspAssumption>().map_err(value_error)?,
    })
}

#[pyclass(name = "CartanType", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyCartanType(lie_data::CartanType);

#[pymethods]
impl PyCartanType {
    #[new]
    fn new(family: &str, rank: u32) -> PyResult<Self> {
        let family: Family = family.parse().map_err(value_error)?;
        lie_data::CartanType::new(family, rank)
            .map(Self)
            .map_err(value_error)
    }

    /// Parses `"B4"`, `"B_4"` or `"b4"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_error)
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family().to_string()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.0.rank()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        lie_data::cartan_matrix(self.0).entries().to_vec()
    }

    /// Invariant factors of the center of the simply-connected group.
    fn center(&self) -> Vec<u64> {
        lie_data::center(self.0).invariant_factors().to_vec()
    }

    fn dynkin_symmetry_order(&self) -> usize {
        lie_data::dynkin_symmetry_order(self.0)
    }

    fn real_forms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &chevalley::inner_real_forms(self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CartanType('{}')", self.0)
    }
}

#[pyclass(name = "NumberFieldProfile", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyNumberFieldProfile(number_field::NumberFieldProfile);

#[pymethods]
impl PyNumberFieldProfile {
    #[new]
    #[pyo3(signature = (r1, r2, label=None, ld="auto"))]
    fn new(r1: u32, r2: u32, label: Option<String>, ld: &str) -> PyResult<Self> {
        let ld: LdOverride = ld.parse().map_err(value_error)?;
        let mut k = number_field::NumberFieldProfile::with_signature(r1, r2)
            .map_err(value_error)?
            .with_ld(ld);
        if let Some(l) = label {
            k = k.with_label(l);
        }
        Ok(Self(k))
    }

    /// Parses `deg=..,r1=..,r2=..[,ld=..][,label=..]`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        number_field::parse_profile(text)
            .map(Self)
            .map_err(value_error)
    }

    #[staticmethod]
    fn rationals() -> Self {
        Self(number_field::NumberFieldProfile::rationals())
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    #[getter]
    fn r1(&self) -> u32 {
        self.0.r1()
    }

    #[getter]
    fn r2(&self) -> u32 {
        self.0.r2()
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.0.label().map(str::to_string)
    }

    fn local_determinacy(&self) -> String {
        number_field::local_determinacy(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NumberFieldProfile.parse('{}')", self.0)
    }
}

#[pyfunction]
fn finite_splitting_principle(t: &PyCartanType, k: &PyNumberFieldProfile) -> bool {
    solitude::finite_splitting_principle(t.0, &k.0)
}

#[pyfunction]
fn ker_b<'py>(
    py: Python<'py>,
    t: &PyCartanType,
    k: &PyNumberFieldProfile,
) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &chevalley::ker_b(t.0, &k.0))
}

#[pyfunction]
fn ker_g_count(t: &PyCartanType, k: &PyNumberFieldProfile) -> u128 {
    solitude::ker_g_count(t.0, &k.0)
}

/// Elements of `ker g` as lists of real form names, one per real place.
#[pyfunction]
fn enumerate_ker_g(t: &PyCartanType, k: &PyNumberFieldProfile) -> PyResult<Vec<Vec<String>>> {
    let all = solitude::enumerate_ker_g(t.0, &k.0).map_err(value_error)?;
    Ok(all
        .into_iter()
        .map(|a| a.forms.into_iter().map(|r| r.name).collect())
        .collect())
}

/// The classification report as a dict.
#[pyfunction]
#[pyo3(signature = (t, k, policy_a1="unknown", policy_f4="unknown"))]
fn classify<'py>(
    py: Python<'py>,
    t: &PyCartanType,
    k: &PyNumberFieldProfile,
    policy_a1: &str,
    policy_f4: &str,
) -> PyResult<Bound<'py, PyAny>> {
    to_python(
        py,
        &report::classify(t.0, &k.0, policy(policy_a1, policy_f4)?),
    )
}

/// The full verdict, including witness assignments, as a dict.
#[pyfunction]
#[pyo3(signature = (t, k, policy_a1="unknown", policy_f4="unknown"))]
fn solitude_verdict<'py>(
    py: Python<'py>,
    t: &PyCartanType,
    k: &PyNumberFieldProfile,
    policy_a1: &str,
    policy_f4: &str,
) -> PyResult<Bound<'py, PyAny>> {
    to_python(
        py,
        &solitude::solitude_verdict(t.0, &k.0, policy(policy_a1, policy_f4)?),
    )
}

#[pyfunction]
fn witness_group(t: &PyCartanType, k: &PyNumberFieldProfile) -> PyResult<String> {
    solitude::witness_group(t.0, &k.0)
        .map(|w| w.description)
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (t, k, policy_a1="unknown", policy_f4="unknown"))]
fn cross_validate(
    t: &PyCartanType,
    k: &PyNumberFieldProfile,
    policy_a1: &str,
    policy_f4: &str,
) -> PyResult<bool> {
    solitude::cross_validate(t.0, &k.0, policy(policy_a1, policy_f4)?).map_err(value_error)
}

fn rational(text: &str) -> PyResult<Ratio<i64>> {
    text.trim()
        .parse::<Ratio<i64>>()
        .map_err(|_| value_error(format!("not a rational number: '{text}'")))
}

/// `(a, b)_p` for a prime `p`, or the real place when `p` is `None`.
/// Arguments are integers or strings such as `"-3/4"`.
#[pyfunction]
#[pyo3(signature = (a, b, p=None))]
fn hilbert_symbol(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, p: Option<u64>) -> PyResult<i8> {
    let place = match p {
        None => RationalPlace::Infinite,
        Some(p) => RationalPlace::prime(p).map_err(value_error)?,
    };
    let a = rational(&a.str()?.to_string())?;
    let b = rational(&b.str()?.to_string())?;
    qforms::hilbert_symbol(a, b, place).map_err(value_error)
}

/// `(isometric over every Q_p, isometric over R)` for two diagonal forms
/// written like `"1,-1,2/3"`.
#[pyfunction]
fn qform_check(first: &str, second: &str) -> PyResult<(bool, bool)> {
    let q1: DiagonalForm = first.parse().map_err(value_error)?;
    let q2: DiagonalForm = second.parse().map_err(value_error)?;
    Ok((
        qforms::isometric_at_all_finite(&q1, &q2),
        qforms::locally_isometric(&q1, &q2, RationalPlace::Infinite),
    ))
}

/// Runs the bundled named examples; one dict per example.
#[pyfunction]
fn examples<'py>(py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    run_examples(&builtin_examples(), CspPolicy::default())
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", &r.example.display_name)?;
            d.set_item("type", r.example.cartan_type.to_string())?;
            d.set_item("field", r.example.field.to_string())?;
            d.set_item("expected", r.example.expected.to_string())?;
            d.set_item("outcome", r.outcome.shape())?;
            d.set_item("pass", r.pass)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
pub fn pychevalley(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCartanType>()?;
    m.add_class::<PyNumberFieldProfile>()?;
    m.add_function(wrap_pyfunction!(finite_splitting_principle, m)?)?;
    m.add_function(wrap_pyfunction!(ker_b, m)?)?;
    m.add_function(wrap_pyfunction!(ker_g_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_ker_g, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(solitude_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(witness_group, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(qform_check, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
