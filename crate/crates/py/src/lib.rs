//! Python module `foatic`.

use foatic_core::dynamics::{self, EngineConfig, Form};
use foatic_core::foata as foata_map;
use foatic_core::homomesy::{self, HomomesyVerdict};
use foatic_core::{
    heaps, FoaticAction as CoreAction, PermRank, Permutation as CorePerm, StatisticId, SymmetryOp,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn engine(workers: Option<usize>, allow_large_n: bool) -> EngineConfig {
    let mut cfg = match workers {
        Some(w) => EngineConfig::with_workers(w),
        None => EngineConfig::default(),
    };
    cfg.allow_large_n = allow_large_n;
    cfg
}

/// Permutation in one-line notation, values 1..=n.
#[pyclass(name = "Permutation", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Permutation(CorePerm);

#[pymethods]
impl Permutation {
    /// Accepts a list of values or a string such as "31425" or "10 2 1 ...".
    #[new]
    fn py_new(values: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = values.extract::<String>() {
            return s.parse().map(Permutation).map_err(value_err);
        }
        let v: Vec<i64> = values.extract()?;
        CorePerm::from_values(&v)
            .map(Permutation)
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        CorePerm::identity(n).map(Permutation).map_err(value_err)
    }

    #[staticmethod]
    fn from_ccd(text: &str) -> PyResult<Self> {
        let c: foatic_core::CycleDecomposition = text.parse().map_err(value_err)?;
        Ok(Permutation(c.to_permutation()))
    }

    #[staticmethod]
    fn unrank(n: usize, index: u64) -> PyResult<Self> {
        let rank = PermRank::new(n, index).map_err(value_err)?;
        CorePerm::unrank(rank).map(Permutation).map_err(value_err)
    }

    #[staticmethod]
    fn all(n: usize) -> PyResult<Vec<Self>> {
        Ok(CorePerm::all(n)
            .map_err(value_err)?
            .map(Permutation)
            .collect())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn word(&self) -> Vec<u8> {
        self.0.word().to_vec()
    }

    fn rank(&self) -> PyResult<u64> {
        Ok(self.0.rank().map_err(value_err)?.index)
    }

    fn inverse(&self) -> Self {
        Permutation(self.0.inverse())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    fn compose(&self, other: &Permutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Permutation).map_err(value_err)
    }

    fn to_ccd(&self) -> String {
        self.0.to_ccd().to_string()
    }

    fn cycles(&self) -> Vec<Vec<u8>> {
        self.0.to_ccd().cycles().to_vec()
    }

    fn foata(&self) -> Self {
        Permutation(foata_map::foata(&self.0))
    }

    fn foata_inverse(&self) -> Self {
        Permutation(foata_map::foata_inverse(&self.0))
    }

    fn stat(&self, name: &str) -> PyResult<i64> {
        let s: StatisticId = name.parse().map_err(value_err)?;
        s.evaluate(&self.0).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.degree()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.0)
    }
}

/// A Foatic map given by two symmetries and a form ("bar" or "conj").
#[pyclass(name = "FoaticAction", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct FoaticAction(CoreAction);

#[pymethods]
impl FoaticAction {
    #[new]
    #[pyo3(signature = (a, b, form = "bar"))]
    fn py_new(a: &str, b: &str, form: &str) -> PyResult<Self> {
        let a: SymmetryOp = a.parse().map_err(value_err)?;
        let b: SymmetryOp = b.parse().map_err(value_err)?;
        let form: Form = form.parse().map_err(value_err)?;
        Ok(FoaticAction(CoreAction { a, b, form }))
    }

    /// Named maps: "phi_bar", "phi", "gamma_bar", "rho_bar", "tau_bar".
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let a = match name {
            "phi_bar" => CoreAction::PHI_BAR,
            "phi" => CoreAction::PHI,
            "gamma_bar" => CoreAction::GAMMA_BAR,
            "rho_bar" => CoreAction::RHO_BAR,
            "tau_bar" => CoreAction::TAU_BAR,
            _ => return Err(value_err(format!("unknown action name `{name}`"))),
        };
        Ok(FoaticAction(a))
    }

    #[staticmethod]
    #[pyo3(signature = (form = "bar", extended = false))]
    fn standard(form: &str, extended: bool) -> PyResult<Vec<Self>> {
        let form: Form = form.parse().map_err(value_err)?;
        let list = if extended {
            CoreAction::extended(form)
        } else {
            CoreAction::standard(form)
        };
        Ok(list.into_iter().map(FoaticAction).collect())
    }

    #[getter]
    fn a(&self) -> &'static str {
        self.0.a.name()
    }

    #[getter]
    fn b(&self) -> &'static str {
        self.0.b.name()
    }

    #[getter]
    fn form(&self) -> &'static str {
        self.0.form.name()
    }

    fn apply(&self, w: &Permutation) -> Permutation {
        Permutation(self.0.apply(&w.0))
    }

    fn __call__(&self, w: &Permutation) -> Permutation {
        self.apply(w)
    }

    /// The orbit of `w`, starting at `w`.
    fn walk(&self, w: &Permutation) -> Vec<Permutation> {
        dynamics::walk(self.0, &w.0)
            .into_iter()
            .map(Permutation)
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "FoaticAction('{}', '{}', '{}')",
            self.0.a, self.0.b, self.0.form
        )
    }
}

#[pyfunction]
fn foata(w: &Permutation) -> Permutation {
    w.foata()
}

#[pyfunction]
fn foata_inverse(w: &Permutation) -> Permutation {
    w.foata_inverse()
}

#[pyfunction]
fn to_ccd(w: &Permutation) -> String {
    w.to_ccd()
}

/// Applies one of C, R, rot, I, D, Q, Q3, id.
#[pyfunction]
fn apply_symmetry(name: &str, w: &Permutation) -> PyResult<Permutation> {
    let op: SymmetryOp = name.parse().map_err(value_err)?;
    Ok(Permutation(op.apply(&w.0)))
}

#[pyfunction]
fn phi_fast(w: &Permutation) -> Permutation {
    Permutation(heaps::phi_fast(&w.0))
}

#[pyfunction]
fn heap_height(w: &Permutation) -> PyResult<u32> {
    heaps::word_height(w.0.word()).map_err(value_err)
}

/// Orbit of `w`, starting at its lexicographically least element.
#[pyfunction]
fn orbit_of(action: &FoaticAction, w: &Permutation) -> Vec<Permutation> {
    dynamics::orbit_of(action.0, &w.0)
        .elements()
        .iter()
        .cloned()
        .map(Permutation)
        .collect()
}

/// One table column as a dict; `lcm` is a Python int of any size.
#[pyfunction]
#[pyo3(signature = (action, n, workers = None, allow_large_n = false))]
fn orbit_table<'py>(
    py: Python<'py>,
    action: &FoaticAction,
    n: usize,
    workers: Option<usize>,
    allow_large_n: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = engine(workers, allow_large_n);
    let row = py
        .detach(|| dynamics::orbit_table(action.0, n, &cfg))
        .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("n", row.n)?;
    d.set_item("num_orbits", row.num_orbits)?;
    let lcm = py
        .import("builtins")?
        .getattr("int")?
        .call1((row.lcm_sizes.to_string(),))?;
    d.set_item("lcm", lcm)?;
    d.set_item("gcd", row.gcd_sizes)?;
    d.set_item("longest", row.longest)?;
    d.set_item("shortest", row.shortest)?;
    d.set_item("id_orbit", row.id_orbit)?;
    Ok(d)
}

/// `(numerator, denominator)` of the common orbit average, or None if some
/// two orbits disagree.
#[pyfunction]
#[pyo3(signature = (action, stat, n, workers = None))]
fn is_homomesic(
    py: Python<'_>,
    action: &FoaticAction,
    stat: &str,
    n: usize,
    workers: Option<usize>,
) -> PyResult<Option<(i64, i64)>> {
    let s: StatisticId = stat.parse().map_err(value_err)?;
    let cfg = engine(workers, false);
    let v = py
        .detach(|| homomesy::is_homomesic(action.0, s, n, &cfg))
        .map_err(value_err)?;
    Ok(match v {
        HomomesyVerdict::Homomesic(c) => Some((*c.numer(), *c.denom())),
        HomomesyVerdict::Violated { .. } => None,
    })
}

#[pymodule]
fn foatic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<FoaticAction>()?;
    m.add_function(wrap_pyfunction!(foata, m)?)?;
    m.add_function(wrap_pyfunction!(foata_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(to_ccd, m)?)?;
    m.add_function(wrap_pyfunction!(apply_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(phi_fast, m)?)?;
    m.add_function(wrap_pyfunction!(heap_height, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_of, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_table, m)?)?;
    m.add_function(wrap_pyfunction!(is_homomesic, m)?)?;
    Ok(())
}
