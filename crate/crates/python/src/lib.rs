//! Python bindings: cones, arrangements, intrinsic-volume estimates and the
//! identity checks. Vectors are lists of ints or `"p/q"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use conic_core::arrangement::{intersection_lattice, regions_j, Arrangement, Family, FamilySpec};
use conic_core::exactlin::rational::{parse_rational, rat, RVector, Rational};
use conic_core::identities::{self as id, VerificationReport};
use conic_core::library::{arrangement_library, cone_library};
use conic_core::poly::IntPoly;
use conic_core::volumes::{estimate_iv, exact_iv, SampleConfig};
use conic_core::{Cone, ConicError};

fn value_error(e: ConicError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(rat(i));
    }
    let s: String = obj
        .extract()
        .map_err(|_| PyValueError::new_err("vector entries must be ints or \"p/q\" strings"))?;
    parse_rational(&s).map_err(value_error)
}

fn rows(list: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Vec<RVector>> {
    list.iter().map(|r| r.iter().map(rational).collect()).collect()
}

fn config(samples: u64, seed: u64, workers: usize, tolerance_sigmas: f64) -> PyResult<SampleConfig> {
    let cfg = SampleConfig { n_samples: samples, seed, workers, tolerance_sigmas };
    cfg.validate().map_err(value_error)?;
    Ok(cfg)
}

fn coefficients(p: &IntPoly) -> PyResult<Vec<i64>> {
    p.coeffs()
        .iter()
        .map(|c| i64::try_from(c).map_err(|_| PyValueError::new_err("coefficient exceeds 64 bits")))
        .collect()
}

#[pyclass(name = "Cone", module = "conic", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCone {
    inner: Cone,
}

#[pymethods]
impl PyCone {
    /// `cone(rays) + span(lineality)` in `R^d`.
    #[staticmethod]
    #[pyo3(signature = (d, rays, lineality = Vec::new()))]
    fn from_generators(d: usize, rays: Vec<Vec<Bound<'_, PyAny>>>, lineality: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let inner = Cone::from_generators(&rows(rays)?, &rows(lineality)?, d).map_err(value_error)?;
        Ok(PyCone { inner })
    }

    /// `{x : <a, x> <= 0 for a in inequalities, <e, x> = 0 for e in equalities}`.
    #[staticmethod]
    #[pyo3(signature = (d, inequalities, equalities = Vec::new()))]
    fn from_inequalities(
        d: usize,
        inequalities: Vec<Vec<Bound<'_, PyAny>>>,
        equalities: Vec<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let inner = Cone::from_h(&rows(inequalities)?, &rows(equalities)?, d).map_err(value_error)?;
        Ok(PyCone { inner })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyCone { inner: Cone::from_json_str(s).map_err(value_error)? })
    }

    #[staticmethod]
    fn orthant(d: usize) -> Self {
        PyCone { inner: Cone::orthant(d) }
    }

    /// The bundled example cones as `(name, cone)` pairs.
    #[staticmethod]
    fn library() -> PyResult<Vec<(String, PyCone)>> {
        let lib = cone_library().map_err(value_error)?;
        Ok(lib.into_iter().map(|(n, c)| (n.to_string(), PyCone { inner: c })).collect())
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn lineality_dim(&self) -> usize {
        self.inner.lineality_dim()
    }

    #[getter]
    fn f_vector(&self) -> Vec<usize> {
        self.inner.face_lattice().f_vector
    }

    fn is_pointed(&self) -> bool {
        self.inner.is_pointed()
    }

    fn is_subspace(&self) -> bool {
        self.inner.is_subspace()
    }

    fn polar(&self) -> Self {
        PyCone { inner: self.inner.polar() }
    }

    fn intersect(&self, other: &PyCone) -> PyResult<Self> {
        Ok(PyCone { inner: self.inner.intersect(&other.inner).map_err(value_error)? })
    }

    fn product(&self, other: &PyCone) -> Self {
        PyCone { inner: self.inner.product(&other.inner) }
    }

    /// Both representations and derived sizes, as a JSON string.
    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Monte Carlo `(values, std_errors)` of `v_0, ..., v_d`.
    #[pyo3(signature = (samples = 100_000, seed = 0, workers = 1))]
    fn intrinsic_volumes(&self, py: Python<'_>, samples: u64, seed: u64, workers: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let cfg = config(samples, seed, workers, 4.0)?;
        let est = py.detach(|| estimate_iv(&self.inner, &cfg)).map_err(value_error)?;
        Ok((est.values, est.std_errors))
    }

    /// Exact intrinsic volumes when the cone is of a recognized type.
    fn exact_intrinsic_volumes(&self) -> Option<Vec<f64>> {
        exact_iv(&self.inner).map(|e| e.values)
    }

    fn __eq__(&self, other: &PyCone) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Cone({})", id::describe(&self.inner))
    }
}

#[pyclass(name = "Arrangement", module = "conic", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyArrangement {
    inner: Arrangement,
}

#[pymethods]
impl PyArrangement {
    #[new]
    fn new(d: usize, normals: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        Ok(PyArrangement { inner: Arrangement::new(d, &rows(normals)?).map_err(value_error)? })
    }

    /// A named family such as `"braid:4"` or `"generic:n=5,d=3,seed=1"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec: FamilySpec = spec.parse().map_err(value_error)?;
        Ok(PyArrangement { inner: spec.materialize().map_err(value_error)? })
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Ok(PyArrangement { inner: Arrangement::from_json_str(s).map_err(value_error)? })
    }

    #[staticmethod]
    fn library() -> PyResult<Vec<(String, PyArrangement)>> {
        let lib = arrangement_library().map_err(value_error)?;
        Ok(lib.into_iter().map(|(n, a)| (n.to_string(), PyArrangement { inner: a })).collect())
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn is_generic(&self) -> bool {
        self.inner.is_generic()
    }

    /// Coefficients of `χ(t)`, constant term first.
    fn char_poly(&self) -> PyResult<Vec<i64>> {
        coefficients(&intersection_lattice(&self.inner).char_poly())
    }

    fn level_char_poly(&self, j: usize) -> PyResult<Vec<i64>> {
        coefficients(&intersection_lattice(&self.inner).level_char_poly(j).map_err(value_error)?)
    }

    /// `|R_j|` for `j = 0, ..., d`.
    fn region_counts(&self, py: Python<'_>) -> PyResult<Vec<usize>> {
        py.detach(|| (0..=self.inner.d()).map(|j| regions_j(&self.inner, j).map(|r| r.len())).collect::<Result<_, _>>())
            .map_err(value_error)
    }

    /// The `j`-dimensional regions as cones.
    fn regions(&self, j: usize) -> PyResult<Vec<PyCone>> {
        let r = regions_j(&self.inner, j).map_err(value_error)?;
        Ok(r.into_iter().map(|r| PyCone { inner: r.cone }).collect())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Arrangement(d={}, n={})", self.inner.d(), self.inner.len())
    }
}

#[pyclass(name = "Report", module = "conic", frozen)]
pub struct PyReport {
    inner: VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn identity_name(&self) -> &str {
        &self.inner.identity_name
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn max_z(&self) -> f64 {
        self.inner.max_z()
    }

    /// `(label, lhs, rhs, std_error, residual_or_z, pass)` per check.
    #[getter]
    fn checks(&self) -> Vec<(String, f64, f64, Option<f64>, f64, bool)> {
        self.inner
            .checks
            .iter()
            .map(|c| (c.label.clone(), c.lhs, c.rhs, c.std_error, c.residual_or_z, c.pass))
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn table(&self) -> String {
        self.inner.to_table()
    }

    fn __repr__(&self) -> String {
        format!("Report({} {}: {})", self.inner.identity_name, self.inner.status.as_str(), self.inner.target)
    }
}

fn report(r: conic_core::Result<VerificationReport>) -> PyResult<PyReport> {
    r.map(|inner| PyReport { inner }).map_err(value_error)
}

#[pyfunction]
fn verify_euler(c: &PyCone) -> PyReport {
    PyReport { inner: id::verify_euler(&c.inner) }
}

#[pyfunction]
#[pyo3(signature = (c, samples = 100_000, seed = 0, workers = 1, tolerance_sigmas = 4.0))]
fn verify_gauss_bonnet(py: Python<'_>, c: &PyCone, samples: u64, seed: u64, workers: usize, tolerance_sigmas: f64) -> PyResult<PyReport> {
    let cfg = config(samples, seed, workers, tolerance_sigmas)?;
    report(py.detach(|| id::verify_gauss_bonnet(&c.inner, &cfg)))
}

#[pyfunction]
#[pyo3(signature = (c, samples = 100_000, seed = 0, workers = 1, tolerance_sigmas = 4.0))]
fn verify_sommerville(py: Python<'_>, c: &PyCone, samples: u64, seed: u64, workers: usize, tolerance_sigmas: f64) -> PyResult<PyReport> {
    let cfg = config(samples, seed, workers, tolerance_sigmas)?;
    report(py.detach(|| id::verify_sommerville(&c.inner, &cfg)))
}

#[pyfunction]
#[pyo3(signature = (c, t_grid = id::STEINER_GRID.to_vec(), samples = 100_000, seed = 0, workers = 1, tolerance_sigmas = 4.0))]
fn verify_steiner_mgf(
    py: Python<'_>,
    c: &PyCone,
    t_grid: Vec<f64>,
    samples: u64,
    seed: u64,
    workers: usize,
    tolerance_sigmas: f64,
) -> PyResult<PyReport> {
    let cfg = config(samples, seed, workers, tolerance_sigmas)?;
    report(py.detach(|| id::verify_steiner_mgf(&c.inner, &t_grid, &cfg)))
}

#[pyfunction]
#[pyo3(signature = (c, d_cone, k, trials = id::DEFAULT_TRIALS, samples = id::DEFAULT_INNER_SAMPLES, seed = 0, tolerance_sigmas = 4.0))]
fn verify_kinematic(
    py: Python<'_>,
    c: &PyCone,
    d_cone: &PyCone,
    k: usize,
    trials: u64,
    samples: u64,
    seed: u64,
    tolerance_sigmas: f64,
) -> PyResult<PyReport> {
    let cfg = config(samples, seed, 1, tolerance_sigmas)?;
    report(py.detach(|| id::verify_kinematic(&c.inner, &d_cone.inner, k, trials, &cfg)))
}

#[pyfunction]
fn verify_zaslavsky(a: &PyArrangement) -> PyResult<PyReport> {
    report(id::verify_zaslavsky(&a.inner))
}

#[pyfunction]
#[pyo3(signature = (a, j, samples = 100_000, seed = 0, workers = 1, tolerance_sigmas = 4.0))]
fn verify_klivans_swartz(
    py: Python<'_>,
    a: &PyArrangement,
    j: usize,
    samples: u64,
    seed: u64,
    workers: usize,
    tolerance_sigmas: f64,
) -> PyResult<PyReport> {
    let cfg = config(samples, seed, workers, tolerance_sigmas)?;
    report(py.detach(|| id::verify_klivans_swartz(&a.inner, j, &cfg)))
}

/// `family` is `"braid"` or `"bc"`.
#[pyfunction]
#[pyo3(signature = (family, j, samples = 100_000, seed = 0, workers = 1, tolerance_sigmas = 4.0))]
fn verify_family_statdim(
    py: Python<'_>,
    family: &str,
    j: usize,
    samples: u64,
    seed: u64,
    workers: usize,
    tolerance_sigmas: f64,
) -> PyResult<PyReport> {
    let family = match family.to_ascii_lowercase().as_str() {
        "braid" => Family::Braid,
        "bc" => Family::BC,
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}; expected braid or bc"))),
    };
    let cfg = config(samples, seed, workers, tolerance_sigmas)?;
    report(py.detach(|| id::verify_family_statdim(&family, j, &cfg)))
}

/// The whole battery; returns `(passed, reports)`.
#[pyfunction]
#[pyo3(signature = (samples = 100_000, seed = 0, trials = id::DEFAULT_TRIALS, workers = 1))]
fn run_suite(py: Python<'_>, samples: u64, seed: u64, trials: u64, workers: usize) -> PyResult<(bool, Vec<PyReport>)> {
    let cfg = config(samples, seed, workers, 4.0)?;
    let s = py.detach(|| id::run_suite(&cfg, trials)).map_err(value_error)?;
    Ok((s.passed(), s.reports.into_iter().map(|inner| PyReport { inner }).collect()))
}

#[pymodule]
pub fn conic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCone>()?;
    m.add_class::<PyArrangement>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(verify_euler, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gauss_bonnet, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sommerville, m)?)?;
    m.add_function(wrap_pyfunction!(verify_steiner_mgf, m)?)?;
    m.add_function(wrap_pyfunction!(verify_kinematic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_zaslavsky, m)?)?;
    m.add_function(wrap_pyfunction!(verify_klivans_swartz, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family_statdim, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
