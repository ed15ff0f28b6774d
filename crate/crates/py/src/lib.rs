//! Python bindings: β specs, rules, solved grids and theorem reports.

use bwythoff::exact::IrrationalSpec;
use bwythoff::verify::verify_theorem;
use bwythoff::{self as core, parse_beta_spec, Position};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};

create_exception!(bwythoff_py, BwythoffError, PyException);
create_exception!(bwythoff_py, ParseError, BwythoffError);
create_exception!(bwythoff_py, NotIrrational, BwythoffError);
create_exception!(bwythoff_py, BetaOutOfRange, BwythoffError);
create_exception!(bwythoff_py, PrecisionExhausted, BwythoffError);
create_exception!(bwythoff_py, CapacityExceeded, BwythoffError);
create_exception!(bwythoff_py, IllegalMove, BwythoffError);
create_exception!(bwythoff_py, OutOfBounds, BwythoffError);

fn to_py(e: core::Error) -> PyErr {
    use core::Error as E;
    let msg = e.to_string();
    match e {
        E::Parse { .. } => ParseError::new_err(msg),
        E::NotIrrational(_) => NotIrrational::new_err(msg),
        E::BetaOutOfRange(_) => BetaOutOfRange::new_err(msg),
        E::PrecisionExhausted(_) => PrecisionExhausted::new_err(msg),
        E::CapacityExceeded { .. } => CapacityExceeded::new_err(msg),
        E::IllegalMove(reason) => IllegalMove::new_err(reason.as_str()),
        E::OutOfBounds { .. } => OutOfBounds::new_err(msg),
        _ => BwythoffError::new_err(msg),
    }
}

/// An exact irrational constant.
#[pyclass(name = "BetaSpec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBetaSpec(IrrationalSpec);

#[pymethods]
impl PyBetaSpec {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_beta_spec(text).map(PyBetaSpec).map_err(to_py)
    }

    fn floor_mul(&self, n: u64) -> PyResult<u64> {
        self.0.floor_mul(n).map_err(to_py)
    }

    fn beatty_prefix(&self, count: u64) -> PyResult<Vec<u64>> {
        self.0.beatty_prefix(count).map_err(to_py)
    }

    fn beatty_member(&self, x: u64) -> PyResult<Option<u64>> {
        self.0.beatty_member(x).map_err(to_py)
    }

    fn derive_alpha(&self) -> PyResult<Self> {
        self.0.derive_alpha().map(PyBetaSpec).map_err(to_py)
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn __float__(&self) -> f64 {
        self.0.approx_f64()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("BetaSpec({:?})", self.0.render())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// A move, by the amounts taken from each pile.
#[pyclass(name = "Move", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq)]
struct PyMove(core::Move);

#[pymethods]
impl PyMove {
    #[staticmethod]
    fn nim_x(t: u64) -> Self {
        PyMove(core::Move::NimX(t))
    }

    #[staticmethod]
    fn nim_y(t: u64) -> Self {
        PyMove(core::Move::NimY(t))
    }

    #[staticmethod]
    fn diagonal(s: u64, t: u64) -> Self {
        PyMove(core::Move::Diagonal(s, t))
    }

    /// `(s, t)` removed from `(x, y)`.
    #[getter]
    fn amounts(&self) -> (u64, u64) {
        self.0.amounts()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            core::Move::NimX(_) => "nim_x",
            core::Move::NimY(_) => "nim_y",
            core::Move::Diagonal(..) => "diagonal",
        }
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("moves serialize")
    }

    fn __repr__(&self) -> String {
        match self.0 {
            core::Move::NimX(t) => format!("Move.nim_x({t})"),
            core::Move::NimY(t) => format!("Move.nim_y({t})"),
            core::Move::Diagonal(s, t) => format!("Move.diagonal({s}, {t})"),
        }
    }
}

fn spec_arg(beta: &Bound<'_, PyAny>) -> PyResult<IrrationalSpec> {
    if let Ok(spec) = beta.cast::<PyBetaSpec>() {
        return Ok(spec.get().0.clone());
    }
    let text = beta.cast::<PyString>()?.to_cow()?;
    parse_beta_spec(&text).map_err(to_py)
}

#[pyclass(name = "RuleSet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRuleSet(core::RuleSet);

#[pymethods]
impl PyRuleSet {
    /// β-Wythoff Nim; `beta` is a spec string or a `BetaSpec`.
    #[staticmethod]
    fn variant(beta: &Bound<'_, PyAny>) -> PyResult<Self> {
        core::RuleSet::variant(spec_arg(beta)?)
            .map(PyRuleSet)
            .map_err(to_py)
    }

    /// k-Wythoff Nim without the restriction.
    #[staticmethod]
    fn invariant(k: u64) -> PyResult<Self> {
        if k == 0 {
            return Err(BwythoffError::new_err("k must be at least 1"));
        }
        Ok(PyRuleSet(core::RuleSet::invariant(k)))
    }

    #[getter]
    fn k(&self) -> u64 {
        self.0.k()
    }

    #[getter]
    fn is_variant(&self) -> bool {
        self.0.is_variant()
    }

    fn is_restricted(&self, x: u64, y: u64) -> PyResult<bool> {
        self.0.is_restricted(Position::new(x, y)).map_err(to_py)
    }

    fn legal_moves(&self, x: u64, y: u64) -> PyResult<Vec<PyMove>> {
        let moves = self.0.legal_moves(Position::new(x, y)).map_err(to_py)?;
        Ok(moves.into_iter().map(PyMove).collect())
    }

    /// Raises `IllegalMove` with the reason when `mv` is not legal.
    fn validate(&self, x: u64, y: u64, mv: &PyMove) -> PyResult<(u64, u64)> {
        let pos = Position::new(x, y);
        self.0.validate(pos, mv.0).map_err(to_py)?;
        let next = core::apply_move(pos, mv.0).map_err(to_py)?;
        Ok((next.x, next.y))
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "OutcomeGrid", frozen)]
struct PyGrid(core::OutcomeGrid);

#[pymethods]
impl PyGrid {
    #[getter]
    fn n_max(&self) -> u64 {
        self.0.n_max()
    }

    /// `"P"` or `"N"`.
    fn classify(&self, x: u64, y: u64) -> PyResult<&'static str> {
        Ok(match self.0.classify(Position::new(x, y)).map_err(to_py)? {
            core::Outcome::P => "P",
            core::Outcome::N => "N",
        })
    }

    fn best_move(&self, x: u64, y: u64) -> PyResult<Option<PyMove>> {
        Ok(self
            .0
            .best_move(Position::new(x, y))
            .map_err(to_py)?
            .map(PyMove))
    }

    fn p_positions(&self) -> Vec<(u64, u64)> {
        self.0
            .p_positions()
            .into_iter()
            .map(|p| (p.x, p.y))
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&core::solver::GridExport::from_grid(&self.0))
            .expect("grid serializes")
    }
}

#[pyfunction]
fn solve_grid(py: Python<'_>, rules: &PyRuleSet, n_max: u64) -> PyResult<PyGrid> {
    let rules = rules.0.clone();
    py.detach(move || core::solve_grid(&rules, n_max))
        .map(PyGrid)
        .map_err(to_py)
}

/// `(n, ⌊nα⌋, ⌊nβ⌋)` for every entry with `⌊nβ⌋ <= n_max`.
#[pyfunction]
fn formula_positions(beta: &Bound<'_, PyAny>, n_max: u64) -> PyResult<Vec<(u64, u64, u64)>> {
    let pair = core::BeattyPair::new(spec_arg(beta)?).map_err(to_py)?;
    let fs = core::formula_positions(&pair, n_max).map_err(to_py)?;
    Ok(fs.entries().iter().map(|e| (e.n, e.a, e.b)).collect())
}

/// The full verification report as a dict.
#[pyfunction]
fn verify(py: Python<'_>, rules: &PyRuleSet, n_max: u64) -> PyResult<Py<PyDict>> {
    let rules = rules.0.clone();
    let report = py
        .detach(move || verify_theorem(&rules, n_max))
        .map_err(to_py)?;
    let text = serde_json::to_string(&report).expect("report serializes");
    let value = py.import("json")?.call_method1("loads", (text,))?;
    Ok(value.cast_into::<PyDict>()?.unbind())
}

#[pymodule]
pub fn bwythoff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyBetaSpec>()?;
    m.add_class::<PyMove>()?;
    m.add_class::<PyRuleSet>()?;
    m.add_class::<PyGrid>()?;
    m.add_function(wrap_pyfunction!(solve_grid, m)?)?;
    m.add_function(wrap_pyfunction!(formula_positions, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("BwythoffError", py.get_type::<BwythoffError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("NotIrrational", py.get_type::<NotIrrational>())?;
    m.add("BetaOutOfRange", py.get_type::<BetaOutOfRange>())?;
    m.add("PrecisionExhausted", py.get_type::<PrecisionExhausted>())?;
    m.add("CapacityExceeded", py.get_type::<CapacityExceeded>())?;
    m.add("IllegalMove", py.get_type::<IllegalMove>())?;
    m.add("OutOfBounds", py.get_type::<OutOfBounds>())?;
    Ok(())
}
