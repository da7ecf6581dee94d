//! Python bindings. Structured results (traces, reports, records) are
//! returned as plain dicts and lists built from their JSON form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use matroid_greedy::guarantees::{self, ReportOptions};
use matroid_greedy::{instances, ratios, Error, GroundSet, Subset};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn subset(ground: GroundSet, elements: Vec<usize>) -> PyResult<Subset> {
    for &j in &elements {
        ground.check_element(j).map_err(err)?;
    }
    Ok(Subset::from_elements(elements))
}

/// A set function tabulated over all subsets; `values[mask]` is the value
/// of the set whose bit `i` is element `i`.
#[pyclass(frozen, name = "SetFunction")]
struct PySetFunction(matroid_greedy::SetFunction);

#[pymethods]
impl PySetFunction {
    #[new]
    fn new(n: usize, values: Vec<f64>) -> PyResult<Self> {
        let ground = GroundSet::new(n).map_err(err)?;
        matroid_greedy::SetFunction::from_table(ground, values)
            .map(PySetFunction)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    #[getter]
    fn eval_count(&self) -> u64 {
        self.0.eval_count()
    }

    fn eval(&self, s: Vec<usize>) -> PyResult<f64> {
        Ok(self.0.eval(subset(self.0.ground(), s)?))
    }

    fn marginal(&self, s: Vec<usize>, j: usize) -> PyResult<f64> {
        self.0.marginal(subset(self.0.ground(), s)?, j).map_err(err)
    }

    fn check_monotone<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.check_monotone())
    }

    fn complement(&self) -> PyResult<Self> {
        self.0.complement_function().map(PySetFunction).map_err(err)
    }

    fn submodularity_ratio(&self) -> PyResult<f64> {
        ratios::submodularity_ratio(&self.0).map_err(err)
    }

    fn curvature(&self) -> PyResult<f64> {
        ratios::curvature(&self.0).map_err(err)
    }

    fn cumulative_submodularity_ratio(&self) -> PyResult<f64> {
        ratios::cumulative_submodularity_ratio(&self.0).map_err(err)
    }

    fn strong_curvature<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &guarantees::strong_curvature(&self.0).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("SetFunction(n={}, values={:?})", self.0.n(), self.0.values())
    }
}

/// A matroid built from its JSON spec, e.g. `{"kind": "uniform", "rank": 2}`.
#[pyclass(frozen, name = "Matroid")]
struct PyMatroid(matroid_greedy::Matroid);

#[pymethods]
impl PyMatroid {
    #[new]
    fn new(n: usize, spec: &str) -> PyResult<Self> {
        let spec: matroid_greedy::MatroidSpec =
            serde_json::from_str(spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let ground = GroundSet::new(n).map_err(err)?;
        spec.build(ground).map(PyMatroid).map_err(err)
    }

    #[getter]
    fn rank_full(&self) -> usize {
        self.0.rank_full()
    }

    #[getter]
    fn spec(&self) -> String {
        serde_json::to_string(self.0.spec()).expect("specs serialize")
    }

    fn is_independent(&self, s: Vec<usize>) -> PyResult<bool> {
        Ok(self.0.is_independent(subset(self.0.ground(), s)?))
    }

    fn rank(&self, s: Vec<usize>) -> PyResult<usize> {
        Ok(self.0.rank(subset(self.0.ground(), s)?))
    }

    fn bases(&self) -> PyResult<Vec<Vec<usize>>> {
        let bases = self.0.enumerate_bases().map_err(err)?;
        Ok(bases.into_iter().map(Subset::to_vec).collect())
    }

    fn dual(&self) -> Self {
        PyMatroid(self.0.dual())
    }

    fn truncate(&self, q: usize) -> Self {
        PyMatroid(self.0.truncate(q))
    }

    fn axioms_hold(&self) -> PyResult<bool> {
        Ok(self.0.check_axioms().map_err(err)?.all_ok())
    }
}

/// A set function, a matroid and the base cardinality `N`.
#[pyclass(frozen, name = "Instance")]
struct PyInstance(instances::Instance);

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        instances::load_instance(path).map(PyInstance).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        instances::Instance::from_json(text).map(PyInstance).map_err(err)
    }

    #[staticmethod]
    fn random(index: usize, n: usize, seed: u64) -> PyResult<Self> {
        instances::suite_instance(index, n, seed).map(PyInstance).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn save(&self, path: &str) -> PyResult<()> {
        instances::save_instance(&self.0, path).map_err(err)
    }

    #[getter]
    fn id(&self) -> String {
        self.0.id.clone()
    }

    #[getter]
    fn cardinality(&self) -> usize {
        self.0.cardinality
    }

    #[getter]
    fn function(&self) -> PySetFunction {
        PySetFunction(self.0.function.clone())
    }

    #[getter]
    fn matroid(&self) -> PyMatroid {
        PyMatroid(self.0.matroid())
    }

    fn forward_greedy<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = matroid_greedy::forward_greedy(&self.0.function, &self.0.matroid(), self.0.cardinality);
        to_py(py, &t.map_err(err)?)
    }

    fn reverse_greedy<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = matroid_greedy::reverse_greedy(&self.0.function, &self.0.matroid(), self.0.cardinality);
        to_py(py, &t.map_err(err)?)
    }

    #[pyo3(signature = (greedy_variants = false, strong = false))]
    fn ratios<'py>(&self, py: Python<'py>, greedy_variants: bool, strong: bool) -> PyResult<Bound<'py, PyAny>> {
        let options = ReportOptions { greedy_variants, strong };
        let report = guarantees::ratio_report(&self.0.function, &self.0.matroid(), self.0.cardinality, options);
        to_py(py, &report.map_err(err)?)
    }

    #[pyo3(signature = (tol = matroid_greedy::DEFAULT_TOLERANCE))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let (f, m, k) = (&self.0.function, self.0.matroid(), self.0.cardinality);
        let records = [
            guarantees::verify_forward(f, &m, k, tol).map_err(err)?.with_id(&self.0.id),
            guarantees::verify_reverse(f, &m, k, tol).map_err(err)?.with_id(&self.0.id),
        ];
        to_py(py, &records)
    }
}

#[pyfunction]
fn t3() -> PyInstance {
    PyInstance(instances::t3())
}

#[pyfunction]
fn forward_bound(gamma: f64, alpha: f64) -> PyResult<f64> {
    guarantees::forward_bound(gamma, alpha).map_err(err)
}

#[pyfunction]
fn reverse_bound(gamma: f64, alpha: f64) -> PyResult<f64> {
    guarantees::reverse_bound(gamma, alpha).map_err(err)
}

#[pyfunction]
fn guo_bound(gamma: f64, alpha: f64, cardinality: usize) -> PyResult<f64> {
    guarantees::guo_bound(gamma, alpha, cardinality).map_err(err)
}

#[pyfunction]
fn bian_bound(gamma: f64, alpha: f64) -> PyResult<f64> {
    guarantees::bian_bound(gamma, alpha).map_err(err)
}

/// CSV comparison of the two guarantees over a `grid × grid` (alpha, gamma) sweep.
#[pyfunction]
#[pyo3(signature = (f_star, f_empty = -1.0, f_full = 1.0, grid = 100))]
fn region_csv(f_star: f64, f_empty: f64, f_full: f64, grid: usize) -> PyResult<String> {
    Ok(guarantees::region_compare(f_empty, f_full, f_star, grid).map_err(err)?.to_csv())
}

#[pymodule]
fn matroid_greedy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySetFunction>()?;
    m.add_class::<PyMatroid>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(t3, m)?)?;
    m.add_function(wrap_pyfunction!(forward_bound, m)?)?;
    m.add_function(wrap_pyfunction!(reverse_bound, m)?)?;
    m.add_function(wrap_pyfunction!(guo_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bian_bound, m)?)?;
    m.add_function(wrap_pyfunction!(region_csv, m)?)?;
    Ok(())
}
