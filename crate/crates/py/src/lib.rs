//! Python bindings: `Program`, `Interpretation`, `Explanation` and the
//! main operations of the engine.

use aspdebug::meta::{debug_program as meta_text, gamma_text};
use aspdebug::reify::reify_input;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: aspdebug::Error) -> PyErr {
    match e {
        aspdebug::Error::Parse(_) | aspdebug::Error::Inconsistent(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

#[pyclass(module = "aspdebug", frozen)]
pub struct Program {
    inner: aspdebug::Program,
}

#[pymethods]
impl Program {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = aspdebug::parse_program(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Program { inner })
    }

    /// Rules in source order, printed in the parser's syntax.
    #[getter]
    fn rules(&self) -> Vec<String> {
        self.inner.rules.iter().map(ToString::to_string).collect()
    }

    /// The ground program, one rule per line.
    fn ground(&self) -> String {
        aspdebug::ground(&self.inner).to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.rules.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", self.inner.to_string())
    }
}

#[pyclass(module = "aspdebug", frozen)]
pub struct Interpretation {
    inner: aspdebug::Interpretation,
}

#[pymethods]
impl Interpretation {
    /// Accepts the text form `{a, -b}` or a list of literal strings.
    #[new]
    fn new(literals: &Bound<'_, PyAny>) -> PyResult<Self> {
        let text = match literals.extract::<String>() {
            Ok(t) => t,
            Err(_) => format!("{{ {} }}", literals.extract::<Vec<String>>()?.join(", ")),
        };
        let inner = aspdebug::parse_interpretation(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Interpretation { inner })
    }

    #[getter]
    fn literals(&self) -> Vec<String> {
        self.inner.iter().map(ToString::to_string).collect()
    }

    fn __contains__(&self, literal: &str) -> PyResult<bool> {
        let l = aspdebug::parse_literal(literal).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(self.inner.contains(&l))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Interpretation({:?})", self.inner.to_string())
    }
}

#[pyclass(module = "aspdebug", frozen)]
pub struct Explanation {
    inner: aspdebug::Explanation,
    json: String,
}

#[pymethods]
impl Explanation {
    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict().as_str()
    }

    #[getter]
    fn is_answer_set(&self) -> bool {
        self.inner.is_answer_set()
    }

    /// `(rule number, {variable: constant})` pairs; rule numbers start at 1.
    #[getter]
    fn unsatisfied(&self) -> Vec<(usize, std::collections::BTreeMap<String, String>)> {
        self.inner
            .unsatisfied
            .iter()
            .map(|u| (u.rule_index + 1, aspdebug::explain::substitution_map(&u.subst)))
            .collect()
    }

    #[getter]
    fn unfounded_loops(&self) -> Vec<Vec<String>> {
        self.inner
            .loops()
            .iter()
            .map(|l| l.iter().map(ToString::to_string).collect())
            .collect()
    }

    fn to_json(&self) -> String {
        self.json.clone()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Explanation(verdict={:?}, unsatisfied={}, unfounded_loops={})",
            self.verdict(),
            self.inner.unsatisfied.len(),
            self.inner.unfounded_loops.len()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (program, interpretation, minimal_loops = false, first = false))]
fn explain(
    py: Python<'_>,
    program: &Program,
    interpretation: &Interpretation,
    minimal_loops: bool,
    first: bool,
) -> PyResult<Explanation> {
    let opts = aspdebug::ExplainOptions {
        minimal_loops,
        first,
        ..Default::default()
    };
    let (p, i) = (&program.inner, &interpretation.inner);
    let inner = py.detach(|| aspdebug::explain_with(p, i, &opts)).map_err(to_py)?;
    let json = inner.to_json(p).to_string();
    Ok(Explanation { inner, json })
}

#[pyfunction]
fn is_answer_set(py: Python<'_>, program: &Program, interpretation: &Interpretation) -> PyResult<bool> {
    py.detach(|| aspdebug::is_answer_set(&program.inner, &interpretation.inner))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (program, limit = None))]
fn answer_sets(py: Python<'_>, program: &Program, limit: Option<usize>) -> PyResult<Vec<Interpretation>> {
    let sets = py
        .detach(|| aspdebug::enumerate_answer_sets(&program.inner, limit))
        .map_err(to_py)?;
    Ok(sets.into_iter().map(|inner| Interpretation { inner }).collect())
}

/// The fact encoding of a program and an interpretation.
#[pyfunction]
fn reify(program: &Program, interpretation: &Interpretation) -> PyResult<String> {
    Ok(reify_input(&program.inner, &interpretation.inner).map_err(to_py)?.to_text())
}

/// The fixed meta-program.
#[pyfunction]
fn gamma() -> &'static str {
    gamma_text()
}

/// The meta-program followed by the fact encoding, ready for a solver.
#[pyfunction]
fn debug_program(program: &Program, interpretation: &Interpretation) -> PyResult<String> {
    meta_text(&program.inner, &interpretation.inner).map_err(to_py)
}

#[pymodule]
pub fn aspdebug_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Program>()?;
    m.add_class::<Interpretation>()?;
    m.add_class::<Explanation>()?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    m.add_function(wrap_pyfunction!(is_answer_set, m)?)?;
    m.add_function(wrap_pyfunction!(answer_sets, m)?)?;
    m.add_function(wrap_pyfunction!(reify, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(debug_program, m)?)?;
    Ok(())
}
