//! Python bindings: the generators, codecs, translation and circuit
//! operations, driven by plain 0/1 strings. Traces and reports come back
//! as ordinary Python dicts.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use stretchgen_core::bits::BitString;
use stretchgen_core::circuits::{budget, synthesize_tt, tt, Circuit};
use stretchgen_core::folang::{build_phi_w, eval_phi, phi_w_truth, TemplateDef};
use stretchgen_core::gen_fo::{self, GenConfig};
use stretchgen_core::gen_prop::{self, step_report, PropGenConfig};
use stretchgen_core::harness::{backend_by_name, system_by_name, template_by_name};
use stretchgen_core::proplogic::{is_tautology_bruteforce, translate, PropProofSystem};
use stretchgen_core::theory::{search_proof, Proof, TheoryBackend};

fn parse_bits(s: &str) -> PyResult<BitString> {
    s.parse::<BitString>()
        .map_err(|e| PyValueError::new_err(format!("expected a 0/1 string: {e}")))
}

fn backend(name: &str) -> PyResult<Arc<dyn TheoryBackend>> {
    backend_by_name(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown backend {name:?} (cert|empty)")))
}

fn system(name: &str) -> PyResult<Arc<dyn PropProofSystem>> {
    system_by_name(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown system {name:?} (tt|sch)")))
}

fn template(name: &str) -> PyResult<TemplateDef> {
    template_by_name(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown analytic template {name:?}")))
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use pyo3::IntoPyObjectExt;
    use serde_json::Value;
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value)
        .map_err(|e| PyValueError::new_err(format!("serialization: {e}")))?;
    json_to_py(py, &v)
}

/// First-order generator bound to a backend and profile.
#[pyclass]
struct FoGenerator {
    cfg: GenConfig,
}

#[pymethods]
impl FoGenerator {
    #[new]
    #[pyo3(signature = (backend="cert", profile="desk"))]
    fn new(backend: &str, profile: &str) -> PyResult<Self> {
        let b = crate::backend(backend)?;
        let cfg = match profile {
            "desk" => GenConfig::desk(b),
            "paper" => GenConfig::paper(b),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown profile {other:?} (desk|paper)"
                )))
            }
        };
        Ok(FoGenerator { cfg })
    }

    /// Run on a 0/1 string; returns (output, trace dict).
    fn run(&self, py: Python<'_>, input: &str) -> PyResult<(String, Py<PyAny>)> {
        let u = parse_bits(input)?;
        let (out, trace) =
            gen_fo::generate(&u, &self.cfg).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok((out.to_string(), to_py(py, &trace)?))
    }

    fn range_scan(&self, n: usize) -> PyResult<Vec<String>> {
        let range = gen_fo::range_scan(n, &self.cfg)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(range.iter().map(|b| b.to_string()).collect())
    }

    #[pyo3(signature = (horizon=12))]
    fn incompleteness_demo(&self, py: Python<'_>, horizon: usize) -> PyResult<Py<PyAny>> {
        let report = gen_fo::incompleteness_demo(&self.cfg, horizon)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &report)
    }

    #[pyo3(signature = (template, n_min, n_max, seed=0))]
    fn hit_test(
        &self,
        py: Python<'_>,
        template: &str,
        n_min: usize,
        n_max: usize,
        seed: u64,
    ) -> PyResult<Py<PyAny>> {
        let phi = crate::template(template)?;
        let report = gen_fo::hitting_experiment(&phi, n_min..=n_max, &self.cfg, seed)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &report)
    }
}

/// Propositional generator bound to a proof system.
#[pyclass]
struct PropGenerator {
    cfg: PropGenConfig,
}

#[pymethods]
impl PropGenerator {
    #[new]
    #[pyo3(signature = (system="sch", profile="desk"))]
    fn new(system: &str, profile: &str) -> PyResult<Self> {
        let s = crate::system(system)?;
        let cfg = match profile {
            "desk" => PropGenConfig::desk(s),
            "paper" => PropGenConfig::paper(s),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown profile {other:?} (desk|paper)"
                )))
            }
        };
        Ok(PropGenerator { cfg })
    }

    /// Run on a 0/1 string; returns (output, trace dict).
    fn run(&self, py: Python<'_>, input: &str) -> PyResult<(String, Py<PyAny>)> {
        let u = parse_bits(input)?;
        let (out, trace) = gen_prop::generate_prop(&u, &self.cfg)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok((out.to_string(), to_py(py, &trace)?))
    }

    /// Re-check the step-accounting factor bounds of a fresh run.
    fn step_report(&self, py: Python<'_>, input: &str) -> PyResult<Py<PyAny>> {
        let u = parse_bits(input)?;
        let (_, trace) = gen_prop::generate_prop(&u, &self.cfg)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &step_report(&trace, u.len()))
    }
}

/// Evaluate an analytic template on x.
#[pyfunction]
fn eval_template(template: &str, x: &str) -> PyResult<bool> {
    let phi = crate::template(template)?;
    eval_phi(&phi, &parse_bits(x)?).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Exact or horizon-bounded truth of the sentence "all large members of
/// the template avoid prefix w".
#[pyfunction]
#[pyo3(signature = (template, w, horizon=12))]
fn sentence_truth(template: &str, w: &str, horizon: usize) -> PyResult<String> {
    let phi = crate::template(template)?;
    let s = build_phi_w(phi, parse_bits(w)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let verdict = phi_w_truth(&s, horizon).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(format!("{verdict:?}"))
}

/// Search for a backend proof; returns the payload bits or None.
#[pyfunction]
#[pyo3(signature = (template, w, backend="cert", size_bound=64))]
fn search_backend_proof(
    template: &str,
    w: &str,
    backend: &str,
    size_bound: usize,
) -> PyResult<Option<String>> {
    let phi = crate::template(template)?;
    let b = crate::backend(backend)?;
    let s = build_phi_w(phi, parse_bits(w)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(search_proof(b.as_ref(), &s, size_bound).map(|p| p.payload.to_string()))
}

/// Verify a backend proof payload against the sentence.
#[pyfunction]
#[pyo3(signature = (template, w, payload, backend="cert"))]
fn verify_backend_proof(template: &str, w: &str, payload: &str, backend: &str) -> PyResult<bool> {
    let phi = crate::template(template)?;
    let b = crate::backend(backend)?;
    let s = build_phi_w(phi, parse_bits(w)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(b.verify(&s, &Proof::new(parse_bits(payload)?)))
}

/// Translate (template, w, n); returns a dict with the JSON AST, the
/// DIMACS export, atom count and construction steps.
#[pyfunction]
fn translate_formula(py: Python<'_>, template: &str, w: &str, n: usize) -> PyResult<Py<PyAny>> {
    let phi = crate::template(template)?;
    let (f, steps) =
        translate(&phi, &parse_bits(w)?, n).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let dict = PyDict::new(py);
    dict.set_item("ast", f.to_json())?;
    dict.set_item("dimacs", f.to_dimacs())?;
    dict.set_item("atoms", f.atom_count())?;
    dict.set_item("steps", steps)?;
    use pyo3::IntoPyObjectExt;
    dict.into_py_any(py)
}

/// Brute-force tautology status of translate(template, w, n).
#[pyfunction]
fn translation_is_tautology(template: &str, w: &str, n: usize) -> PyResult<bool> {
    let phi = crate::template(template)?;
    let (f, _) =
        translate(&phi, &parse_bits(w)?, n).map_err(|e| PyValueError::new_err(e.to_string()))?;
    is_tautology_bruteforce(&f).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Verify a propositional proof string for translate(template, w, n).
#[pyfunction]
fn verify_prop_proof(
    template: &str,
    w: &str,
    n: usize,
    proof: &str,
    system: &str,
) -> PyResult<bool> {
    let phi = crate::template(template)?;
    let (f, _) =
        translate(&phi, &parse_bits(w)?, n).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let sys = crate::system(system)?;
    Ok(sys.verify(&f, &parse_bits(proof)?))
}

/// The circuit-search budget at input length n.
#[pyfunction]
fn circuit_budget(n: usize) -> PyResult<(usize, usize)> {
    let b = budget(n).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((b.k_max, b.size_max))
}

/// Truth table of a circuit in the text format.
#[pyfunction]
fn circuit_tt(circuit: &str) -> PyResult<String> {
    let c = Circuit::from_text(circuit).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(tt(&c)
        .map_err(|e| PyValueError::new_err(e.to_string()))?
        .to_string())
}

/// Build a circuit computing the given truth table; returns its text form.
#[pyfunction]
fn synthesize_circuit(target: &str) -> PyResult<String> {
    let c = synthesize_tt(&parse_bits(target)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(c.to_text())
}

#[pymodule]
fn stretchgen_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FoGenerator>()?;
    m.add_class::<PropGenerator>()?;
    m.add_function(wrap_pyfunction!(eval_template, m)?)?;
    m.add_function(wrap_pyfunction!(sentence_truth, m)?)?;
    m.add_function(wrap_pyfunction!(search_backend_proof, m)?)?;
    m.add_function(wrap_pyfunction!(verify_backend_proof, m)?)?;
    m.add_function(wrap_pyfunction!(translate_formula, m)?)?;
    m.add_function(wrap_pyfunction!(translation_is_tautology, m)?)?;
    m.add_function(wrap_pyfunction!(verify_prop_proof, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_budget, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_tt, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_circuit, m)?)?;
    Ok(())
}
