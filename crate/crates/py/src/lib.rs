//! Python bindings: configurations, `alpha` values, the `F4` ledger and the
//! cached pipeline behind the CLI.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use symwald_core::configs::{build_config, ConfigName};
use symwald_core::graded::{table2_report, HilbertSeries};
use symwald_core::pipeline::Pipeline;
use symwald_core::waldschmidt::{alpha_symbolic_power, f4_reduction_ledger};

fn err(e: symwald_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config_name(name: &str) -> PyResult<ConfigName> {
    name.parse().map_err(err)
}

/// Points of a configuration as `(a:b:c:d)` strings, in the numbering used
/// throughout.
#[pyfunction]
fn config_points(name: &str) -> PyResult<Vec<String>> {
    Ok(build_config(config_name(name)?).points.iter().map(|p| p.to_string()).collect())
}

/// Least degree of a form vanishing to order `m` at every point, searched up
/// to `d_max`; `None` if there is none.
#[pyfunction]
#[pyo3(signature = (name, m, d_max))]
fn alpha(py: Python<'_>, name: &str, m: u32, d_max: u32) -> PyResult<Option<u32>> {
    let points = build_config(config_name(name)?).points;
    Ok(py.detach(|| alpha_symbolic_power(&points, m, d_max).alpha))
}

/// `(passed, terminal vector)` for the symbolic reduction.
#[pyfunction]
fn f4_ledger() -> PyResult<(bool, String)> {
    let l = f4_reduction_ledger().map_err(err)?;
    Ok((l.passed, l.terminal))
}

/// Coefficient of `u^d v^m` in the closed-form Hilbert series.
#[pyfunction]
fn hilbert_dimension(d: u32, m: u32) -> PyResult<usize> {
    Ok(HilbertSeries::stated().expand(d, m).map_err(err)?.get(d, m))
}

#[pyclass(name = "Pipeline", unsendable)]
struct PyPipeline(Pipeline);

#[pymethods]
impl PyPipeline {
    #[new]
    #[pyo3(signature = (cache_dir=None))]
    fn new(cache_dir: Option<PathBuf>) -> Self {
        PyPipeline(Pipeline::new(cache_dir))
    }

    /// `(name, d, m, leading form in s2, s6, s10)` per generator.
    fn table1(&mut self) -> PyResult<Vec<(String, u32, u32, String)>> {
        let r = self.0.table1().map_err(err)?;
        Ok(r.rows.iter().map(|row| (row.name.clone(), row.degree, row.order, row.s_expression.clone())).collect())
    }

    /// `(m, degrees, generator flags)` per even `m <= m_max`.
    fn table2(&mut self, m_max: u32) -> PyResult<Vec<(u32, Vec<u32>, Vec<bool>)>> {
        let gens = self.0.generator_set().map_err(err)?;
        let rows = table2_report(&gens, m_max).map_err(err)?;
        Ok(rows.into_iter().map(|r| (r.m, r.degrees, r.generator)).collect())
    }

    /// `(value, passed)` with the value as a reduced fraction string.
    #[pyo3(signature = (name, m_check=3))]
    fn certificate(&mut self, name: &str, m_check: u32) -> PyResult<(String, bool)> {
        let c = self.0.certificate(config_name(name)?, m_check).map_err(err)?;
        Ok((c.value().to_string(), c.passed()))
    }

    fn warnings(&self) -> Vec<String> {
        self.0.warnings.clone()
    }
}

#[pymodule]
fn symwald(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(config_points, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(f4_ledger, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_dimension, m)?)?;
    m.add_class::<PyPipeline>()?;
    Ok(())
}
