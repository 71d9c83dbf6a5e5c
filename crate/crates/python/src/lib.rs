//! Python bindings: shapes, the online engine, the lower-bound game and the
//! offline solvers. Points cross the boundary as `(x, y)` tuples.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hitset::adversary::{build_instance_with_tol, play_with_tol, responder_by_name, GameTranscript};
use hitset::offline::{exact_min_hitting_set, greedy_hitting_set, to_set_system};
use hitset::report::{competitive_bound, run_stream, OptMode};
use hitset::{Decision, EngineConfig, Error, Point, Shape};

type Xy = (f64, f64);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } | Error::BrokenInvariant(_) | Error::ConstructionFailed(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_points(xs: &[Xy]) -> Vec<Point> {
    xs.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

fn tuples(ps: &[Point]) -> Vec<Xy> {
    ps.iter().map(|p| (p.x, p.y)).collect()
}

fn config(tol: Option<f64>) -> EngineConfig {
    let mut c = EngineConfig::default();
    if let Some(t) = tol {
        c.tol = t;
    }
    c
}

/// Unit disk or regular k-gon of inradius 1 centered at the origin.
#[pyclass(name = "Shape", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyShape {
    inner: Shape,
}

#[pymethods]
impl PyShape {
    #[staticmethod]
    fn disk() -> Self {
        PyShape { inner: Shape::disk() }
    }

    #[staticmethod]
    fn polygon(k: u32) -> PyResult<Self> {
        Ok(PyShape { inner: Shape::polygon(k).map_err(py_err)? })
    }

    #[getter]
    fn k(&self) -> Option<u32> {
        self.inner.k()
    }

    #[getter]
    fn is_disk(&self) -> bool {
        self.inner.is_disk()
    }

    #[getter]
    fn is_reflected(&self) -> bool {
        self.inner.is_reflected()
    }

    #[getter]
    fn r_out(&self) -> f64 {
        self.inner.r_out()
    }

    fn vertices(&self) -> Vec<Xy> {
        tuples(self.inner.vertices())
    }

    fn reflect(&self) -> Self {
        PyShape { inner: self.inner.reflect() }
    }

    /// Smallest scale of the shape centered at `center` that reaches `p`.
    fn distance(&self, center: Xy, p: Xy) -> f64 {
        self.inner.convex_distance(Point::new(center.0, center.1), Point::new(p.0, p.1))
    }

    #[pyo3(signature = (center, p, tol = hitset::DEFAULT_TOL))]
    fn contains(&self, center: Xy, p: Xy, tol: f64) -> bool {
        self.inner.at(Point::new(center.0, center.1)).contains(Point::new(p.0, p.1), tol)
    }

    fn __repr__(&self) -> String {
        match self.inner.k() {
            None => format!("Shape.disk(reflected={})", self.inner.is_reflected()),
            Some(k) => format!("Shape.polygon({k}, reflected={})", self.inner.is_reflected()),
        }
    }
}

/// The online engine over a fixed point set.
#[pyclass(name = "HittingState")]
pub struct PyHittingState {
    inner: hitset::HittingState,
}

#[pymethods]
impl PyHittingState {
    #[new]
    #[pyo3(signature = (points, shape, tol = None))]
    fn new(points: Vec<Xy>, shape: &PyShape, tol: Option<f64>) -> PyResult<Self> {
        let inner = hitset::HittingState::with_config(&to_points(&points), shape.inner.clone(), config(tol)).map_err(py_err)?;
        Ok(PyHittingState { inner })
    }

    /// Feeds the translate centered at `center`; returns the outcome and the
    /// instance indices of any points added.
    fn process(&mut self, center: Xy) -> PyResult<(String, Vec<usize>)> {
        let obj = self.inner.shape().at(Point::new(center.0, center.1));
        Ok(match self.inner.process(&obj).map_err(py_err)? {
            Decision::AlreadyStabbed => ("already_stabbed".into(), vec![]),
            Decision::Added(ps) => ("added".into(), ps.iter().map(|p| p.point).collect()),
            Decision::Infeasible => ("infeasible".into(), vec![]),
        })
    }

    fn solution(&self) -> Vec<Xy> {
        tuples(&self.inner.solution())
    }

    fn hit_ids(&self) -> Vec<usize> {
        self.inner.hit_ids().to_vec()
    }

    fn points(&self) -> Vec<Xy> {
        tuples(self.inner.points())
    }

    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().to_vec()
    }

    fn is_stabbed(&self, center: Xy) -> bool {
        let obj = self.inner.shape().at(Point::new(center.0, center.1));
        self.inner.is_stabbed(&obj)
    }
}

#[pyclass(name = "GameTranscript", frozen, get_all)]
pub struct PyGameTranscript {
    responder: String,
    m: u32,
    n: usize,
    forced: usize,
    placed: usize,
    opt_size: Option<usize>,
    /// Object ids in the order presented.
    presented: Vec<usize>,
}

impl From<&GameTranscript> for PyGameTranscript {
    fn from(t: &GameTranscript) -> Self {
        PyGameTranscript {
            responder: t.responder.clone(),
            m: t.m,
            n: t.n,
            forced: t.forced,
            placed: t.placed,
            opt_size: t.opt_size,
            presented: t.rounds.iter().map(|r| r.object).collect(),
        }
    }
}

#[pymethods]
impl PyGameTranscript {
    fn ratio(&self) -> Option<f64> {
        self.opt_size.filter(|&o| o > 0).map(|o| self.forced as f64 / o as f64)
    }
}

/// Points and every interval object's center of the lower-bound instance.
#[pyfunction]
#[pyo3(signature = (shape, m, tol = hitset::DEFAULT_TOL))]
fn adversary_instance(shape: &PyShape, m: u32, tol: f64) -> PyResult<(Vec<Xy>, Vec<Xy>)> {
    let inst = build_instance_with_tol(&shape.inner, m, tol).map_err(py_err)?;
    let centers: Vec<Point> = inst.objects.iter().map(|o| o.center).collect();
    Ok((tuples(&inst.points), tuples(&centers)))
}

/// Plays the lower-bound game against `first-point` or `algorithm1`.
#[pyfunction]
#[pyo3(signature = (shape, m, responder = "first-point", tol = hitset::DEFAULT_TOL))]
fn play(shape: &PyShape, m: u32, responder: &str, tol: f64) -> PyResult<PyGameTranscript> {
    let inst = build_instance_with_tol(&shape.inner, m, tol).map_err(py_err)?;
    let mut r = responder_by_name(responder, &inst, config(Some(tol))).map_err(py_err)?;
    let t = play_with_tol(&inst, r.as_mut(), tol).map_err(py_err)?;
    Ok(PyGameTranscript::from(&t))
}

fn hitting_set(points: &[Xy], shape: &PyShape, centers: &[Xy], tol: f64, exact: bool) -> PyResult<Vec<usize>> {
    let objects: Vec<_> = to_points(centers).into_iter().map(|c| shape.inner.at(c)).collect();
    let sys = to_set_system(&to_points(points), &objects, tol).feasible_part();
    if exact { exact_min_hitting_set(&sys) } else { greedy_hitting_set(&sys) }.map_err(py_err)
}

/// Indices of a minimum set of points hitting every object that holds a point.
#[pyfunction]
#[pyo3(signature = (points, shape, centers, tol = hitset::DEFAULT_TOL))]
fn exact_hitting_set(points: Vec<Xy>, shape: &PyShape, centers: Vec<Xy>, tol: f64) -> PyResult<Vec<usize>> {
    hitting_set(&points, shape, &centers, tol, true)
}

#[pyfunction]
#[pyo3(name = "greedy_hitting_set", signature = (points, shape, centers, tol = hitset::DEFAULT_TOL))]
fn greedy_hitting_set_py(points: Vec<Xy>, shape: &PyShape, centers: Vec<Xy>, tol: f64) -> PyResult<Vec<usize>> {
    hitting_set(&points, shape, &centers, tol, false)
}

/// Swaps points and object centers and reflects the shape.
#[pyfunction]
fn dualize(points: Vec<Xy>, shape: &PyShape, centers: Vec<Xy>) -> PyResult<(PyShape, Vec<Xy>, Vec<Xy>)> {
    let objects: Vec<_> = to_points(&centers).into_iter().map(|c| shape.inner.at(c)).collect();
    let d = hitset::dual::dualize(&to_points(&points), &objects, &shape.inner).map_err(py_err)?;
    Ok((PyShape { inner: d.shape.clone() }, tuples(&d.points), tuples(&d.centers())))
}

/// Seeded points in `[0, span]²` and object centers around them.
#[pyfunction]
#[pyo3(signature = (shape, n_points, n_objects, seed = 0, span = 3.0))]
fn random_instance(shape: &PyShape, n_points: usize, n_objects: usize, seed: u64, span: f64) -> PyResult<(Vec<Xy>, Vec<Xy>)> {
    let inst = hitset::generate::random_instance(&shape.inner, n_points, n_objects, seed, span).map_err(py_err)?;
    Ok((tuples(&inst.points), tuples(&inst.centers())))
}

/// Full run report as a JSON string.
#[pyfunction]
#[pyo3(signature = (points, shape, centers, exact = true, tol = None))]
fn run_report(points: Vec<Xy>, shape: &PyShape, centers: Vec<Xy>, exact: bool, tol: Option<f64>) -> PyResult<String> {
    let mode = if exact { OptMode::Exact } else { OptMode::Greedy };
    let r = run_stream(&to_points(&points), &shape.inner, &to_points(&centers), config(tol), mode).map_err(py_err)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn bound(shape: &PyShape, n: usize) -> u64 {
    competitive_bound(&shape.inner, n)
}

#[pymodule]
pub fn hitset_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyShape>()?;
    m.add_class::<PyHittingState>()?;
    m.add_class::<PyGameTranscript>()?;
    m.add_function(wrap_pyfunction!(adversary_instance, m)?)?;
    m.add_function(wrap_pyfunction!(play, m)?)?;
    m.add_function(wrap_pyfunction!(exact_hitting_set, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_hitting_set_py, m)?)?;
    m.add_function(wrap_pyfunction!(dualize, m)?)?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    m.add_function(wrap_pyfunction!(run_report, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    Ok(())
}
