//! Python bindings. Matrices cross as lists of rows, structured reports as
//! JSON strings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use isodrum_core::algebra as alg;
use isodrum_core::conformal::{self, DemoConfig};
use isodrum_core::fem;
use isodrum_core::geometry::{self as geo, DiscretizedVolume};
use isodrum_core::graph::{self, ColorMode};
use isodrum_core::group;
use isodrum_core::search;
use isodrum_core::Label;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn matrix(r: Vec<Vec<f64>>) -> PyResult<DMatrix<f64>> {
    let n = r.len();
    let k = r.first().map_or(0, Vec::len);
    if r.iter().any(|row| row.len() != k) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    Ok(DMatrix::from_fn(n, k, |i, j| r[i][j]))
}

fn label(c: char) -> PyResult<Label> {
    match c {
        'a' => Ok(Label::Alpha),
        'b' => Ok(Label::Beta),
        'c' => Ok(Label::Gamma),
        _ => Err(PyValueError::new_err(format!("side label {c:?} is not one of a, b, c"))),
    }
}

/// Triangle with sides alpha, beta, gamma.
#[pyclass(frozen, skip_from_py_object, module = "isodrum")]
#[derive(Clone)]
struct Tile {
    inner: geo::Tile,
}

#[pymethods]
impl Tile {
    #[new]
    fn new(alpha: f64, beta: f64, gamma: f64) -> PyResult<Self> {
        geo::Tile::new([alpha, beta, gamma], Label::ALL).map(|inner| Tile { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn equilateral() -> Self {
        Tile { inner: geo::Tile::equilateral() }
    }

    #[getter]
    fn lengths(&self) -> [f64; 3] {
        self.inner.lengths()
    }

    fn is_scalene(&self) -> bool {
        self.inner.is_scalene()
    }

    fn __repr__(&self) -> String {
        let [a, b, c] = self.inner.lengths();
        format!("Tile({a}, {b}, {c})")
    }
}

/// Copies of a tile glued along sides.
#[pyclass(frozen, skip_from_py_object, module = "isodrum")]
#[derive(Clone)]
struct Volume {
    inner: DiscretizedVolume,
}

#[pymethods]
impl Volume {
    /// Copy `k + 1` is copy `k` reflected through side `word[k]` (letters a, b, c).
    #[staticmethod]
    fn from_word(tile: &Tile, word: &str) -> PyResult<Self> {
        let w: Vec<Label> = word.chars().map(label).collect::<PyResult<_>>()?;
        geo::apply_word(&tile.inner, &w).map(|inner| Volume { inner }).map_err(value_err)
    }

    /// Gluing list of `(copy, copy, "a"|"b"|"c")`, copies 0-based.
    #[staticmethod]
    #[pyo3(signature = (tile, gluing, copies=None))]
    fn from_gluing(tile: &Tile, gluing: Vec<(usize, usize, char)>, copies: Option<usize>) -> PyResult<Self> {
        let gl: Vec<geo::Gluing> =
            gluing.into_iter().map(|(a, b, l)| Ok(geo::Gluing::new(a, b, label(l)?))).collect::<PyResult<_>>()?;
        let n = gl.iter().map(|g| g.a.max(g.b) + 1).max().unwrap_or(1).max(copies.unwrap_or(0));
        geo::build_dv_with_copies(&tile.inner, &gl, n).map(|inner| Volume { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        geo::dv_from_json(s).map(|inner| Volume { inner }).map_err(value_err)
    }

    fn to_json(&self) -> String {
        geo::dv_to_json(&self.inner)
    }

    fn to_svg(&self) -> String {
        geo::dv_to_svg(&self.inner)
    }

    #[getter]
    fn n_copies(&self) -> usize {
        self.inner.n_copies()
    }

    #[getter]
    fn tile(&self) -> Tile {
        Tile { inner: self.inner.tile().clone() }
    }

    #[getter]
    fn gluing(&self) -> Vec<(usize, usize, char)> {
        self.inner.internal_sides().iter().map(|g| (g.a, g.b, g.label.letter())).collect()
    }

    fn walk(&self) -> String {
        graph::walk_notation(&graph::graph_from_dv(&self.inner))
    }

    /// `X = D + A`.
    fn auxiliary(&self) -> Vec<Vec<f64>> {
        rows(&alg::to_f64(&alg::auxiliary(&self.inner)))
    }

    fn group(&self) -> PermutationGroup {
        PermutationGroup { inner: group::group_from_dv(&self.inner) }
    }

    fn congruent_to(&self, other: &Volume) -> bool {
        geo::are_equivalent(&self.inner, &other.inner)
    }

    /// Lowest `k` Dirichlet eigenvalues and their residuals.
    #[pyo3(signature = (refine=4, k=6))]
    fn spectrum(&self, py: Python<'_>, refine: usize, k: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let dv = self.inner.clone();
        let (_, eig) = py.detach(move || fem::solve(&dv, refine, k)).map_err(value_err)?;
        Ok((eig.values, eig.residuals))
    }

    fn __repr__(&self) -> String {
        format!("Volume({} copies, {})", self.inner.n_copies(), self.walk())
    }
}

/// Permutation group on copies 1..n.
#[pyclass(frozen, module = "isodrum")]
struct PermutationGroup {
    inner: group::PermutationGroup,
}

#[pymethods]
impl PermutationGroup {
    /// Generators in 1-based cycle notation, e.g. `"(1,2)(3,4)"`.
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let g: Vec<&str> = generators.iter().map(String::as_str).collect();
        group::PermutationGroup::from_cycle_strings(degree, &g).map(|inner| PermutationGroup { inner }).map_err(value_err)
    }

    fn order(&self) -> u128 {
        self.inner.order()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    /// Product of named generators, e.g. `"aba"`, in cycle notation.
    fn word(&self, w: &str) -> PyResult<String> {
        group::word_rewrite(&self.inner, w).map(|p| p.to_string()).map_err(value_err)
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }
}

/// One row of an enumeration.
#[pyclass(frozen, get_all, module = "isodrum")]
struct Enumerated {
    volume: Volume,
    walk: String,
    n3: usize,
    nisb: [usize; 3],
    group_order: u128,
    slits: usize,
}

/// All volumes of `n` copies up to congruence.
#[pyfunction]
fn enumerate(py: Python<'_>, tile: &Tile, n: usize) -> PyResult<Vec<Enumerated>> {
    let t = tile.inner.clone();
    let e = py.detach(move || graph::enumerate_dv_graphs(&t, n, ColorMode::TileSymmetry)).map_err(value_err)?;
    Ok(e.volumes
        .into_iter()
        .map(|v| Enumerated {
            walk: graph::walk_notation(&v.graph),
            n3: v.features.n3,
            nisb: v.features.nisb,
            group_order: v.features.group_order,
            slits: v.slits,
            volume: Volume { inner: v.dv },
        })
        .collect())
}

/// Candidate isospectral pairs as a JSON report.
#[pyfunction]
#[pyo3(signature = (tile, n=7, tol=1e-9))]
fn isospectral_search(py: Python<'_>, tile: &Tile, n: usize, tol: f64) -> PyResult<String> {
    if !(tol > 0.0) {
        return Err(PyValueError::new_err("tol must be positive"));
    }
    let t = tile.inner.clone();
    let r = py.detach(move || search::isospectral_search(&t, n, tol)).map_err(value_err)?;
    serde_json::to_string(&r).map_err(runtime_err)
}

/// Orthogonal `M` with `M S1 = S2 M` for every signed gluing operator.
#[pyfunction]
fn find_intertwiner(a: &Volume, b: &Volume) -> PyResult<Vec<Vec<f64>>> {
    alg::find_intertwiner(&a.inner, &b.inner).map(|m| rows(&m)).map_err(value_err)
}

/// Orthogonal `M` with `M X1 M^T = X2`, plus residuals.
#[pyfunction]
fn find_transplantation(a: &Volume, b: &Volume) -> PyResult<(Vec<Vec<f64>>, f64, f64)> {
    let p = alg::find_transplantation_for(&a.inner, &b.inner).map_err(value_err)?;
    Ok((rows(&p.m), p.residual_similarity, p.residual_qo))
}

/// Minimum-norm least-squares `(X, Y, residual)` for `A X B + C Y D = E`.
#[pyfunction]
fn solve_axb_cyd(
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    c: Vec<Vec<f64>>,
    d: Vec<Vec<f64>>,
    e: Vec<Vec<f64>>,
) -> PyResult<(Vec<Vec<f64>>, Vec<Vec<f64>>, f64)> {
    let s = alg::solve_axb_cyd(&matrix(a)?, &matrix(b)?, &matrix(c)?, &matrix(d)?, &matrix(e)?).map_err(value_err)?;
    Ok((rows(&s.x), rows(&s.y), s.residual))
}

/// Conformal map of the unit disk onto the unit square.
#[pyclass(frozen, module = "isodrum")]
struct SquareMap {
    inner: conformal::SquareMap,
}

#[pymethods]
impl SquareMap {
    #[new]
    #[pyo3(signature = (rounded=false))]
    fn new(rounded: bool) -> Self {
        let inner = if rounded { conformal::SquareMap::rounded() } else { conformal::SquareMap::calibrated() };
        SquareMap { inner }
    }

    #[getter]
    fn constant(&self) -> f64 {
        self.inner.constant()
    }

    fn disk_to_square(&self, z: Complex64) -> PyResult<Complex64> {
        self.inner.disk_to_square(z).map_err(value_err)
    }

    fn square_to_disk(&self, w: Complex64) -> PyResult<Complex64> {
        self.inner.square_to_disk(w).map_err(value_err)
    }
}

/// Transplant the square's fundamental mode to the disk, expand and correct.
/// Returns the metrics as JSON.
#[pyfunction]
#[pyo3(signature = (terms=6))]
fn conformal_demo(py: Python<'_>, terms: usize) -> PyResult<String> {
    let demo = py
        .detach(move || conformal::run_demo(&DemoConfig { terms, ..DemoConfig::default() }))
        .map_err(|e| match e {
            conformal::ConformalError::InvalidTerms(_) => value_err(e),
            _ => runtime_err(e),
        })?;
    Ok(conformal::metrics_json(&demo.report))
}

#[pymodule]
fn isodrum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Tile>()?;
    m.add_class::<Volume>()?;
    m.add_class::<PermutationGroup>()?;
    m.add_class::<Enumerated>()?;
    m.add_class::<SquareMap>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(isospectral_search, m)?)?;
    m.add_function(wrap_pyfunction!(find_intertwiner, m)?)?;
    m.add_function(wrap_pyfunction!(find_transplantation, m)?)?;
    m.add_function(wrap_pyfunction!(solve_axb_cyd, m)?)?;
    m.add_function(wrap_pyfunction!(conformal_demo, m)?)?;
    Ok(())
}
