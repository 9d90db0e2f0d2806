//! Python bindings: parse `.pbv` problems, translate them to UFNIA, and run
//! the oracle suites from Python.
//!
//! Build with `cargo build -p pbv-py` and load the produced `libpbv_py.so`
//! as module `pbv_py` (see `python/smoke_test.py`).

use pbv::ast::{parse_pbv, AxiomMode, ParamFormula, WidthMap};
use pbv::goals::{self, LiftOptions};
use pbv::oracle::{self, AxiomCheckConfig};
use pbv::sortcheck::eliminate_extract;
use pbv::translate::{to_smtlib, translate, AssertStyle, TranslateOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn parse_mode(mode: &str) -> PyResult<AxiomMode> {
    mode.parse().map_err(PyValueError::new_err)
}

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A parametric bit-vector problem: a formula plus its width map.
#[pyclass]
struct Problem {
    formula: ParamFormula,
    omega: WidthMap,
}

#[pymethods]
impl Problem {
    /// Parses a `.pbv` document.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Problem> {
        let (formula, omega) = parse_pbv(text).map_err(err)?;
        Ok(Problem { formula, omega })
    }

    /// Lifts a fixed-width SMT-LIB 2 problem to a symbolic width `k`.
    #[staticmethod]
    #[pyo3(signature = (text, allow_width1=false))]
    fn lift(text: &str, allow_width1: bool) -> PyResult<Problem> {
        let (formula, omega, _) =
            goals::lift_qfbv(text, LiftOptions { allow_width1 }).map_err(err)?;
        Ok(Problem { formula, omega })
    }

    /// The problem rendered back as a `.pbv` document.
    fn pretty(&self) -> String {
        pbv::ast::pretty_problem(&self.formula, &self.omega)
    }

    /// Rewrites extract literals into the concatenation scheme.
    fn eliminate_extract(&self) -> PyResult<Problem> {
        let (formula, omega) = eliminate_extract(&self.formula, &self.omega).map_err(err)?;
        Ok(Problem { formula, omega })
    }

    /// Translates to SMT-LIB 2 (UFNIA) text.
    #[pyo3(signature = (mode="combined", fig1_urem=false, assert_sat=false))]
    fn translate(&self, mode: &str, fig1_urem: bool, assert_sat: bool) -> PyResult<String> {
        let opts = TranslateOptions {
            mode: parse_mode(mode)?,
            fig1_urem,
        };
        let (formula, omega) = eliminate_extract(&self.formula, &self.omega).map_err(err)?;
        let result = translate(&formula, &omega, opts).map_err(err)?;
        let style = if assert_sat {
            AssertStyle::Satisfiability
        } else {
            AssertStyle::Validity
        };
        Ok(to_smtlib(&result, &omega, style))
    }

    /// Checks the translation against the brute-force oracle; returns the
    /// report as a JSON string.
    #[pyo3(signature = (widths=4, bits=16, fig1_urem=false))]
    fn check(&self, widths: u32, bits: u32, fig1_urem: bool) -> PyResult<String> {
        let (formula, omega) = eliminate_extract(&self.formula, &self.omega).map_err(err)?;
        let opts = TranslateOptions {
            fig1_urem,
            ..Default::default()
        };
        let report =
            oracle::check_translation_equiv(&formula, &omega, opts, widths, bits).map_err(err)?;
        serde_json::to_string_pretty(&report).map_err(err)
    }
}

/// Checks the axiom blocks of a mode under the intended semantics; returns
/// the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (mode="combined", k_max=6))]
fn check_axioms(mode: &str, k_max: u32) -> PyResult<String> {
    let cfg = AxiomCheckConfig {
        k_max,
        ..AxiomCheckConfig::default()
    };
    let report = oracle::check_axiom_validity(parse_mode(mode)?, cfg).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(err)
}

/// Runs the unsigned-interpretation lemma suite; returns the report as a
/// JSON string.
#[pyfunction]
#[pyo3(signature = (k_max=5))]
fn check_lemmas(k_max: u32) -> PyResult<String> {
    let report = oracle::check_lemma_suite(k_max.min(6));
    serde_json::to_string_pretty(&report).map_err(err)
}

/// Verifies every built-in conditional inverse exhaustively up to
/// `width_bound`; returns the slot names that fail.
#[pyfunction]
#[pyo3(signature = (width_bound=4))]
fn failing_builtin_inverses(width_bound: u32) -> PyResult<Vec<String>> {
    let mut out = Vec::new();
    for entry in goals::builtin_ic_entries() {
        if entry.inverse.is_none() {
            continue;
        }
        if !goals::check_inverse(&entry, width_bound)
            .map_err(err)?
            .passed()
        {
            out.push(entry.slot_name());
        }
    }
    Ok(out)
}

#[pymodule]
fn pbv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Problem>()?;
    m.add_function(wrap_pyfunction!(check_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemmas, m)?)?;
    m.add_function(wrap_pyfunction!(failing_builtin_inverses, m)?)?;
    Ok(())
}
