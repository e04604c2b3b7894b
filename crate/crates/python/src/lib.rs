//! Python module `bandperm`.
//!
//! Factorizations, reports and verification results cross the boundary as
//! canonical JSON strings; rational matrix entries as strings such as
//! `"-3/4"` (so `str(fractions.Fraction(...))` works).

use bandperm as bp;

use bp::doc::{BcDocument, LayersDocument, PermDocument};
use bp::factor::{factor_bc, factor_layers};
use bp::index::{center, find_split, minus_index, plus_index_at, rewire_split, window_r};
use bp::oracle::{asplund_check, finite_index, rank_exact, truncation_counts, RationalMatrix};
use bp::report::{FactorMode, FactorReport, Report};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: bp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents always serialize")
}

/// A banded permutation of the integers, `π(i) = i + s` outside a finite
/// window or periodic with a table of displacements.
#[pyclass(name = "BandedPermutation", module = "bandperm", frozen, eq)]
#[derive(PartialEq)]
pub struct PyBandedPermutation {
    inner: bp::BandedPermutation,
}

impl From<bp::BandedPermutation> for PyBandedPermutation {
    fn from(inner: bp::BandedPermutation) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyBandedPermutation {
    #[staticmethod]
    fn eventual_shift(s: i64, lo: i64, images: Vec<i64>) -> PyResult<Self> {
        bp::BandedPermutation::eventual_shift(s, lo, images)
            .map(Self::from)
            .map_err(err)
    }

    #[staticmethod]
    fn periodic(displacements: Vec<i64>) -> PyResult<Self> {
        bp::BandedPermutation::periodic(displacements)
            .map(Self::from)
            .map_err(err)
    }

    #[staticmethod]
    fn identity() -> Self {
        bp::BandedPermutation::identity().into()
    }

    /// `S^k`, i.e. `π(i) = i - k`.
    #[staticmethod]
    fn shift_power(k: i64) -> Self {
        bp::BandedPermutation::shift_power(k).into()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        PermDocument::parse(text)
            .and_then(|d| d.to_permutation())
            .map(Self::from)
            .map_err(err)
    }

    /// One of `shift`, `identity`, `intertwined`, `intertwined-shifted`, `rewire-demo`.
    #[staticmethod]
    fn example(name: &str) -> PyResult<Self> {
        bp::fixtures::fixture(name)
            .map(Self::from)
            .ok_or_else(|| PyValueError::new_err(format!("unknown example {name:?}")))
    }

    fn to_json(&self) -> String {
        PermDocument::from_permutation(&self.inner, None).to_json()
    }

    fn apply(&self, i: i64) -> i64 {
        self.inner.apply(i)
    }

    fn inverse(&self) -> Self {
        self.inner.inverse().into()
    }

    /// Matrix product `self · other`: row `i` maps to `other(self(i))`.
    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.inner.compose(&other.inner).map(Self::from).map_err(err)
    }

    fn bandwidth(&self) -> i64 {
        self.inner.bandwidth()
    }

    #[getter]
    fn period(&self) -> Option<usize> {
        self.inner.period()
    }

    /// Dense 0/1 rows for rows `[row_lo, row_hi)` and columns `[col_lo, col_hi)`.
    fn window_matrix(&self, row_lo: i64, row_hi: i64, col_lo: i64, col_hi: i64) -> Vec<Vec<u8>> {
        self.inner.window_matrix(row_lo..row_hi, col_lo..col_hi).to_rows()
    }

    /// `(w, n, kappa)` for the counting window at `jstar`.
    #[pyo3(signature = (jstar = 0))]
    fn window_r(&self, jstar: i64) -> (i64, i64, i64) {
        let r = window_r(&self.inner, jstar);
        (r.w, r.n, r.kappa())
    }

    #[pyo3(signature = (jstar = 0))]
    fn plus_index(&self, jstar: i64) -> i64 {
        plus_index_at(&self.inner, jstar)
    }

    fn minus_index(&self) -> i64 {
        minus_index(&self.inner)
    }

    /// `(kappa, S^kappa · self)`.
    fn center(&self) -> (i64, Self) {
        let c = center(&self.inner);
        (c.kappa, c.centered.into())
    }

    /// First `(istar, jstar)` with `istar` in `[lo, hi)`, or `None`.
    fn find_split(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        find_split(&self.inner, lo..hi).map(|s| (s.istar, s.jstar))
    }

    fn rewire_split(&self, jstar: i64) -> Self {
        rewire_split(&self.inner, jstar).into()
    }

    /// `(alpha, beta)` of the truncation to rows and columns `>= k`.
    fn truncation_counts(&self, k: i64) -> (usize, usize) {
        let c = truncation_counts(&self.inner, k);
        (c.alpha, c.beta)
    }

    fn truncation_index(&self, k: i64) -> i64 {
        truncation_counts(&self.inner, k).index()
    }

    /// Block factorization document of a centered permutation.
    #[pyo3(signature = (anchor = None))]
    fn factor_bc(&self, anchor: Option<i64>) -> PyResult<String> {
        let f = factor_bc(&self.inner, anchor).map_err(err)?;
        Ok(to_json(&BcDocument::from(&f)))
    }

    /// Transposition layers document of a centered permutation.
    fn factor_layers(&self) -> PyResult<String> {
        let f = factor_layers(&self.inner).map_err(err)?;
        Ok(to_json(&LayersDocument::from(&f)))
    }

    /// `mode` is `"bc"` or `"layers"`; non-centered input is centered first.
    fn factor_report(&self, mode: &str) -> PyResult<String> {
        let mode = match mode {
            "bc" => FactorMode::Bc,
            "layers" => FactorMode::Layers,
            _ => return Err(PyValueError::new_err("mode must be \"bc\" or \"layers\"")),
        };
        FactorReport::new(&self.inner, mode).map(|r| to_json(&r)).map_err(err)
    }

    #[pyo3(signature = (jstar = 0))]
    fn report(&self, jstar: i64) -> String {
        to_json(&Report::new(&self.inner, jstar))
    }

    #[pyo3(signature = (rows_lo, rows_hi, format = "ascii"))]
    fn render(&self, rows_lo: i64, rows_hi: i64, format: &str) -> PyResult<String> {
        if rows_lo >= rows_hi {
            return Err(PyValueError::new_err("empty row range"));
        }
        match format {
            "ascii" => Ok(bp::render::ascii(&self.inner, rows_lo..rows_hi)),
            "dot" => Ok(bp::render::dot(&self.inner, rows_lo..rows_hi)),
            _ => Err(PyValueError::new_err("format must be \"ascii\" or \"dot\"")),
        }
    }

    fn __repr__(&self) -> String {
        format!("BandedPermutation({})", self.to_json())
    }
}

fn matrix(rows: Vec<Vec<String>>) -> PyResult<RationalMatrix> {
    let n_cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    let n_rows = rows.len();
    let mut entries = Vec::with_capacity(n_rows * n_cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, text) in row.into_iter().enumerate() {
            let q: BigRational = text
                .trim()
                .parse()
                .map_err(|_| PyValueError::new_err(format!("entry ({i}, {j}) is not a rational: {text:?}")))?;
            entries.push(q);
        }
    }
    Ok(RationalMatrix::new(n_rows, n_cols, entries))
}

/// Exact rank of a matrix given as rows of rational strings.
#[pyfunction(name = "rank_exact")]
fn py_rank_exact(rows: Vec<Vec<String>>) -> PyResult<usize> {
    Ok(rank_exact(&matrix(rows)?))
}

/// Nullity minus corank of a square matrix; always zero.
#[pyfunction(name = "finite_index")]
fn py_finite_index(rows: Vec<Vec<String>>) -> PyResult<i64> {
    finite_index(&matrix(rows)?).map_err(err)
}

/// `(cond_i, cond_ii)` for an invertible square matrix.
#[pyfunction(name = "asplund_check")]
fn py_asplund_check(rows: Vec<Vec<String>>, p: usize, k: usize) -> PyResult<(bool, bool)> {
    let v = asplund_check(&matrix(rows)?, p, k).map_err(err)?;
    Ok((v.cond_i, v.cond_ii))
}

/// Property-suite report as JSON; `input` is an optional permutation.
#[pyfunction(name = "verify", signature = (input = None, trials = 100, seed = 0))]
fn py_verify(input: Option<PyRef<'_, PyBandedPermutation>>, trials: usize, seed: u64) -> String {
    to_json(&bp::verify::run(input.as_ref().map(|p| &p.inner), trials, seed))
}

#[pyfunction]
fn examples() -> Vec<&'static str> {
    bp::fixtures::FIXTURES.iter().map(|f| f.name).collect()
}

#[pymodule]
#[pyo3(name = "bandperm")]
pub fn bandperm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBandedPermutation>()?;
    m.add_function(wrap_pyfunction!(py_rank_exact, m)?)?;
    m.add_function(wrap_pyfunction!(py_finite_index, m)?)?;
    m.add_function(wrap_pyfunction!(py_asplund_check, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
