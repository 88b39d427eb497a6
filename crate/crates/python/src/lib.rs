//! Python bindings. Patterns cross the boundary as strings such as
//! `"132|X=1|Y="` or as `Pattern` objects; permutations as `Permutation`
//! objects or plain lists of ints.

use bivincular::bijections::{self as bij, AscentSequence};
use bivincular::closed_forms::{self, FormulaId};
use bivincular::enumeration;
use bivincular::pattern;
use bivincular::report::{emit_report, ReportDocument, ReportFormat};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

/// `(id, pattern, n, formula, brute_force)`.
type MismatchRow = (String, String, usize, BigUint, u64);

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Permutation", module = "pybivincular", frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(bivincular::Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(entries: Vec<usize>) -> PyResult<Self> {
        bivincular::Permutation::new(entries).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_err)
    }

    #[getter]
    fn entries(&self) -> Vec<usize> {
        self.0.as_slice().to_vec()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn reverse(&self) -> Self {
        Self(self.0.reverse())
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.as_slice())
    }
}

#[pyclass(name = "Pattern", module = "pybivincular", frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPattern(bivincular::BiVincularPattern);

#[pymethods]
impl PyPattern {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_err)
    }

    #[getter]
    fn sigma(&self) -> Vec<usize> {
        self.0.sigma().as_slice().to_vec()
    }

    #[getter]
    fn x(&self) -> Vec<usize> {
        self.0.x().iter().collect()
    }

    #[getter]
    fn y(&self) -> Vec<usize> {
        self.0.y().iter().collect()
    }

    /// Applies a word over `i`, `r`, `c`, rightmost letter first.
    fn apply_symmetry(&self, word: &str) -> PyResult<Self> {
        self.0.apply_symmetry(word).map(Self).map_err(value_err)
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical())
    }

    fn symmetry_class(&self) -> Vec<Self> {
        self.0.symmetry_class().into_iter().map(Self).collect()
    }

    fn count(&self, pi: &PyPermutation) -> u64 {
        pattern::count_occurrences(&pi.0, &self.0)
    }

    fn avoided_by(&self, pi: &PyPermutation) -> bool {
        pattern::avoids(&pi.0, &self.0)
    }

    /// Occurrences as lists of 1-based positions.
    fn occurrences(&self, pi: &PyPermutation) -> Vec<Vec<usize>> {
        pattern::occurrences(&pi.0, &self.0).into_iter().map(|o| o.indices).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Pattern('{}')", self.0)
    }
}

#[derive(FromPyObject)]
enum PatternArg {
    Obj(PyPattern),
    Text(String),
}

impl PatternArg {
    fn resolve(self) -> PyResult<bivincular::BiVincularPattern> {
        match self {
            PatternArg::Obj(p) => Ok(p.0),
            PatternArg::Text(s) => s.parse().map_err(value_err),
        }
    }
}

fn ascent(x: Vec<usize>) -> PyResult<AscentSequence> {
    AscentSequence::new(x).map_err(value_err)
}

/// `[a_1, ..., a_n]` for joint avoidance of `patterns`.
#[pyfunction]
fn avoidance_sequence(py: Python<'_>, patterns: Vec<PatternArg>, n: usize) -> PyResult<Vec<u64>> {
    let ps = patterns.into_iter().map(PatternArg::resolve).collect::<PyResult<Vec<_>>>()?;
    py.allow_threads(|| enumeration::avoidance_sequence(&ps, n)).map(|s| s.terms).map_err(value_err)
}

/// Row `i` maps an occurrence count to the number of permutations of
/// length `i + 1` with that count.
#[pyfunction]
fn distribution(py: Python<'_>, pattern: PatternArg, n: usize) -> PyResult<Vec<Vec<(u64, u64)>>> {
    let p = pattern.resolve()?;
    let table = py.allow_threads(|| enumeration::distribution(&p, n)).map_err(value_err)?;
    Ok(table.rows.into_iter().map(|r| r.into_iter().collect()).collect())
}

/// The Wilf classification of length `k` as a JSON document.
#[pyfunction]
#[pyo3(signature = (k, horizon = 7))]
fn wilf_classify(py: Python<'_>, k: usize, horizon: usize) -> PyResult<String> {
    let report = py.allow_threads(|| enumeration::wilf_classify(k, horizon)).map_err(value_err)?;
    emit_report(&ReportDocument::from(&report), ReportFormat::Json).map_err(value_err)
}

#[pyfunction]
fn burnside_s(n: usize) -> PyResult<BigUint> {
    enumeration::burnside_s(n).map_err(value_err)
}

#[pyfunction]
fn burnside_direct(n: usize) -> PyResult<u64> {
    enumeration::burnside_direct(n).map_err(value_err)
}

/// `None` when the id has no closed form.
#[pyfunction]
fn eval_closed_form(id: &str, n: usize) -> PyResult<Option<BigUint>> {
    let id: FormulaId = id.parse().map_err(value_err)?;
    closed_forms::eval_closed_form(id, n).map_err(value_err)
}

/// Mismatches as `(id, pattern, n, formula, brute_force)` tuples.
#[pyfunction]
fn verify_registry(py: Python<'_>, horizon: usize) -> PyResult<Vec<MismatchRow>> {
    let report = py.allow_threads(|| closed_forms::verify_registry(horizon)).map_err(value_err)?;
    Ok(report
        .mismatches
        .into_iter()
        .map(|m| (m.id.to_string(), m.pattern.to_string(), m.n, m.formula, m.brute_force))
        .collect())
}

#[pyfunction]
fn ascent_sequences(n: usize) -> PyResult<Vec<Vec<usize>>> {
    let it = bij::generate_ascent_sequences(n).map_err(value_err)?;
    Ok(it.map(|x| x.as_slice().to_vec()).collect())
}

#[pyfunction]
fn map_f(x: Vec<usize>) -> PyResult<PyPermutation> {
    Ok(PyPermutation(bij::map_f(&ascent(x)?)))
}

#[pyfunction]
fn map_f_inverse(pi: &PyPermutation) -> PyResult<Vec<usize>> {
    bij::map_f_inverse(&pi.0).map(|x| x.as_slice().to_vec()).map_err(value_err)
}

#[pyfunction]
fn map_g(pi: &PyPermutation) -> PyResult<Vec<usize>> {
    bij::map_g(&pi.0).map(|x| x.as_slice().to_vec()).map_err(value_err)
}

#[pyfunction]
fn map_g_inverse(x: Vec<usize>) -> PyResult<PyPermutation> {
    bij::map_g_inverse(&ascent(x)?).map(PyPermutation).map_err(value_err)
}

#[pyfunction]
fn map_h(x: Vec<usize>) -> PyResult<PyPermutation> {
    bij::map_h(&ascent(x)?).map(PyPermutation).map_err(value_err)
}

#[pyfunction]
fn reverse_after_one(pi: &PyPermutation) -> PyPermutation {
    PyPermutation(bij::reverse_after_one(&pi.0))
}

#[pymodule]
fn pybivincular(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPattern>()?;
    m.add_function(wrap_pyfunction!(avoidance_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(wilf_classify, m)?)?;
    m.add_function(wrap_pyfunction!(burnside_s, m)?)?;
    m.add_function(wrap_pyfunction!(burnside_direct, m)?)?;
    m.add_function(wrap_pyfunction!(eval_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify_registry, m)?)?;
    m.add_function(wrap_pyfunction!(ascent_sequences, m)?)?;
    m.add_function(wrap_pyfunction!(map_f, m)?)?;
    m.add_function(wrap_pyfunction!(map_f_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(map_g, m)?)?;
    m.add_function(wrap_pyfunction!(map_g_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(map_h, m)?)?;
    m.add_function(wrap_pyfunction!(reverse_after_one, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
