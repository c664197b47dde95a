//! Python bindings. Specs are JSON text or a dict with the same shape;
//! every function returns `{"passed", "verdicts", "results"}` as a dict.

use choquet_rn::spec::{load_spec, LoadedSpec};
use choquet_rn_cli::commands::{self, Names};
use choquet_rn_cli::registry::{self, ExampleId};
use choquet_rn_cli::report::Outcome;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

fn invalid(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec_text(spec: &Bound<'_, PyAny>) -> PyResult<String> {
    if spec.is_instance_of::<PyString>() {
        return spec.extract();
    }
    let json = spec.py().import("json")?;
    json.call_method1("dumps", (spec,))?.extract()
}

fn load(spec: &Bound<'_, PyAny>) -> PyResult<LoadedSpec> {
    load_spec(&spec_text(spec)?).map_err(invalid)
}

fn to_dict<'py>(py: Python<'py>, outcome: Outcome) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(&outcome.to_value()).map_err(invalid)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn names(mu: &str, nu: &str, f: &str, g: &str) -> Names {
    Names {
        mu: mu.into(),
        nu: nu.into(),
        f: f.into(),
        g: g.into(),
    }
}

macro_rules! command {
    ($name:ident, $call:path) => {
        #[pyfunction]
        #[pyo3(signature = (spec, *, mu = "mu", nu = "nu", f = "f", g = "g"))]
        fn $name<'py>(
            py: Python<'py>,
            spec: &Bound<'py, PyAny>,
            mu: &str,
            nu: &str,
            f: &str,
            g: &str,
        ) -> PyResult<Bound<'py, PyAny>> {
            let spec = load(spec)?;
            to_dict(py, $call(&spec, &names(mu, nu, f, g)).map_err(invalid)?)
        }
    };
}

command!(props, commands::props);
command!(comonotone, commands::comonotone);
command!(check_decomposition, commands::check);
command!(derive, commands::derive);
command!(verify, commands::verify);
command!(solve, commands::solve);
command!(classical, commands::classical);

/// Choquet integral over `set` (a list of atom names; whole space if omitted).
#[pyfunction]
#[pyo3(signature = (spec, set = None, *, nu = "nu", f = "f"))]
fn integrate<'py>(
    py: Python<'py>,
    spec: &Bound<'py, PyAny>,
    set: Option<Vec<String>>,
    nu: &str,
    f: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = load(spec)?;
    let set = set.map(|atoms| atoms.join(","));
    let out = commands::integrate(&spec, &names("mu", nu, f, "g"), set.as_deref()).map_err(invalid)?;
    to_dict(py, out)
}

#[pyfunction]
#[pyo3(signature = (spec, n = 4, *, nu = "nu", f = "f"))]
fn dyadic<'py>(py: Python<'py>, spec: &Bound<'py, PyAny>, n: u32, nu: &str, f: &str) -> PyResult<Bound<'py, PyAny>> {
    let spec = load(spec)?;
    to_dict(py, commands::dyadic(&spec, &names("mu", nu, f, "g"), n).map_err(invalid)?)
}

#[pyfunction]
#[pyo3(signature = (spec, n = None))]
fn sigma_finite<'py>(py: Python<'py>, spec: &Bound<'py, PyAny>, n: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let spec = load(spec)?;
    to_dict(py, commands::sigma_finite(&spec, n).map_err(invalid)?)
}

/// Runs a named example: `"ex-3-6"`, `"ex-4-4"` or `"classical"`.
#[pyfunction]
#[pyo3(signature = (id, n = None))]
fn example<'py>(py: Python<'py>, id: &str, n: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let id = <ExampleId as clap::ValueEnum>::from_str(id, false).map_err(invalid)?;
    let spec = registry::spec(id, n);
    to_dict(py, registry::run(id, &spec).map_err(invalid)?)
}

#[pyfunction]
#[pyo3(signature = (seed = 0, count = 100))]
fn suite(py: Python<'_>, seed: u64, count: usize) -> PyResult<Bound<'_, PyAny>> {
    to_dict(py, commands::suite(seed, count).map_err(invalid)?)
}

#[pymodule]
#[pyo3(name = "choquet_rn")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(props, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(comonotone, m)?)?;
    m.add_function(wrap_pyfunction!(check_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(derive, m)?)?;
    m.add_function(wrap_pyfunction!(dyadic, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(classical, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_finite, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(suite, m)?)?;
    Ok(())
}
