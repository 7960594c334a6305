//! Python bindings: algebras, ideals, modules, recollements and the checks.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::recollement as core;
use core::catalog::module_catalog;
use core::ideal::{self, EnumerationMode};
use core::report::Check;
use core::{kuhn, ttf, Element, FunctorTag};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(name: &str) -> PyResult<EnumerationMode> {
    match name {
        "brute" => Ok(EnumerationMode::Brute),
        "vertex" => Ok(EnumerationMode::Vertex),
        _ => Err(PyValueError::new_err(format!("mode must be \"brute\" or \"vertex\", not {name:?}"))),
    }
}

/// (name, passed, instances) per check.
type Rows = Vec<(String, bool, usize)>;

fn rows(checks: &[Check]) -> Rows {
    checks.iter().map(|c| (c.name.clone(), c.passed, c.instances)).collect()
}

#[pyclass(frozen, name = "Algebra")]
struct PyAlgebra {
    inner: Arc<core::Algebra>,
}

#[pymethods]
impl PyAlgebra {
    /// A built-in name or a path to a TOML document.
    #[staticmethod]
    fn load(source: &str) -> PyResult<Self> {
        let spec = core::load_algebra(source).map_err(err)?;
        Ok(PyAlgebra { inner: spec.algebra })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        let spec = core::parse_algebra_toml(text).map_err(err)?;
        Ok(PyAlgebra { inner: spec.algebra })
    }

    #[staticmethod]
    fn builtins() -> Vec<&'static str> {
        core::builtins::NAMES.to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Coordinates of an expression such as "e11 + e22".
    fn element(&self, expr: &str) -> PyResult<Vec<u32>> {
        Ok(self.inner.parse_element(expr).map_err(err)?.0)
    }

    fn format(&self, x: Vec<u32>) -> PyResult<String> {
        Ok(self.inner.format(&self.checked(x)?))
    }

    fn mul(&self, x: Vec<u32>, y: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.inner.mul(&self.checked(x)?, &self.checked(y)?).0)
    }

    fn is_idempotent(&self, x: Vec<u32>) -> PyResult<bool> {
        Ok(self.inner.is_idempotent(&self.checked(x)?))
    }

    fn radical_dim(&self) -> PyResult<usize> {
        Ok(self.inner.radical_subspace().map_err(err)?.dim())
    }

    /// Every idempotent, by exhaustive search.
    fn idempotents(&self) -> PyResult<Vec<Vec<u32>>> {
        let es = self.inner.enumerate_idempotents(1 << 20).map_err(err)?;
        Ok(es.into_iter().map(|e| e.0).collect())
    }

    /// Sums of vertex idempotents, for quiver algebras.
    fn vertex_idempotents(&self) -> Option<Vec<Vec<u32>>> {
        self.inner.vertex_subset_idempotents().map(|es| es.into_iter().map(|e| e.0).collect())
    }

    fn ideals(&self) -> PyResult<Vec<PyIdeal>> {
        let is = ideal::enumerate_ideals(&self.inner).map_err(err)?;
        Ok(is.into_iter().map(|inner| PyIdeal { inner }).collect())
    }

    #[pyo3(signature = (mode_name = "brute"))]
    fn idempotent_ideals(&self, mode_name: &str) -> PyResult<Vec<PyIdeal>> {
        let is = ideal::enumerate_idempotent_ideals(&self.inner, mode(mode_name)?).map_err(err)?;
        Ok(is.into_iter().map(|inner| PyIdeal { inner }).collect())
    }

    fn radical(&self) -> PyResult<PyIdeal> {
        Ok(PyIdeal {
            inner: ideal::Ideal::radical(&self.inner).map_err(err)?,
        })
    }

    /// The ideal A e A.
    fn ideal_of_idempotent(&self, e: Vec<u32>) -> PyResult<PyIdeal> {
        let e = self.checked(e)?;
        Ok(PyIdeal {
            inner: ideal::idempotent_to_ideal(&self.inner, &e).map_err(err)?,
        })
    }

    /// Indecomposables up to the dimension bound, one per isomorphism class.
    fn modules(&self, dim_bound: usize) -> PyResult<Vec<PyModule_>> {
        let cat = module_catalog(&self.inner, dim_bound).map_err(err)?;
        Ok(cat.modules().iter().cloned().map(|inner| PyModule_ { inner }).collect())
    }

    fn regular_module(&self) -> PyModule_ {
        PyModule_ {
            inner: core::Module::regular(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, p={}, basis={:?})", self.inner.dim(), self.inner.p(), self.inner.labels())
    }
}

impl PyAlgebra {
    fn checked(&self, x: Vec<u32>) -> PyResult<Element> {
        if x.len() != self.inner.dim() {
            return Err(PyValueError::new_err(format!("expected {} coordinates, got {}", self.inner.dim(), x.len())));
        }
        Ok(Element(x.into_iter().map(|c| c % self.inner.p()).collect()))
    }
}

#[pyclass(frozen, name = "Ideal")]
struct PyIdeal {
    inner: ideal::Ideal,
}

#[pymethods]
impl PyIdeal {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn basis(&self) -> Vec<Vec<u32>> {
        self.inner.basis().into_iter().map(|e| e.0).collect()
    }

    fn is_idempotent(&self) -> bool {
        ideal::is_idempotent_ideal(&self.inner)
    }

    /// (dim I/I^2, dim Tor_1(A/I, A/I)).
    fn tor_dims(&self) -> PyResult<(usize, usize)> {
        let t = ideal::tor1_self_quotient(&self.inner).map_err(err)?;
        Ok((t.quotient_dim, t.tor_dim))
    }

    /// An idempotent e with A e A equal to this ideal, if one exists.
    fn generating_idempotent(&self) -> PyResult<Option<Vec<u32>>> {
        let e = kuhn::idempotent_generation_check(self.inner.algebra(), &self.inner).map_err(err)?;
        Ok(e.map(|e| e.0))
    }

    /// Checks that (-)[I] and (-)·I behave on the catalog's exact sequences.
    fn verify_radical_functor(&self, dim_bound: usize) -> PyResult<Rows> {
        let cat = module_catalog(self.inner.algebra(), dim_bound).map_err(err)?;
        let seqs = ttf::catalog_sequences(&cat).map_err(err)?;
        Ok(rows(&ttf::verify_radical_functor(&self.inner, &seqs, &cat).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner.describe())
    }
}

#[pyclass(frozen, name = "Module")]
struct PyModule_ {
    inner: core::Module,
}

#[pymethods]
impl PyModule_ {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Right action matrices of the basis elements, as row lists.
    fn action(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner
            .action()
            .iter()
            .map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
            .collect()
    }

    fn hom_dim(&self, other: &PyModule_) -> PyResult<usize> {
        core::module::hom_dim(&self.inner, &other.inner).map_err(err)
    }

    fn ext1_dim(&self, other: &PyModule_) -> PyResult<usize> {
        core::module::ext1(&self.inner, &other.inner).map_err(err)
    }

    fn is_isomorphic(&self, other: &PyModule_) -> PyResult<bool> {
        core::module::is_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    fn direct_sum(&self, other: &PyModule_) -> PyModule_ {
        PyModule_ {
            inner: self.inner.direct_sum(&other.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!("Module(dim={})", self.inner.dim())
    }
}

#[pyclass(frozen, name = "Recollement")]
struct PyRecollement {
    inner: core::Recollement,
}

fn functor(name: &str) -> PyResult<FunctorTag> {
    FunctorTag::ALL
        .into_iter()
        .find(|t| t.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown functor {name:?}")))
}

#[pymethods]
impl PyRecollement {
    #[new]
    fn new(algebra: &PyAlgebra, idempotent: Vec<u32>) -> PyResult<Self> {
        let e = algebra.checked(idempotent)?;
        Ok(PyRecollement {
            inner: core::recollement_from_idempotent(&algebra.inner, &e).map_err(err)?,
        })
    }

    fn corner_algebra(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.corner_algebra().clone(),
        }
    }

    fn quotient_algebra(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.inner.quotient_algebra().clone(),
        }
    }

    #[staticmethod]
    fn functors() -> Vec<&'static str> {
        FunctorTag::ALL.iter().map(|t| t.name()).collect()
    }

    /// Applies one of the six functors by name, e.g. "j_shriek".
    fn apply(&self, name: &str, m: &PyModule_) -> PyResult<PyModule_> {
        Ok(PyModule_ {
            inner: self.inner.apply(functor(name)?, &m.inner).map_err(err)?,
        })
    }

    /// Every recollement check over catalogs up to the bound.
    fn verify(&self, dim_bound: usize) -> PyResult<Rows> {
        let r = &self.inner;
        let ca = module_catalog(&r.base, dim_bound).map_err(err)?;
        let cc = module_catalog(r.corner_algebra(), dim_bound).map_err(err)?;
        let cb = module_catalog(r.quotient_algebra(), dim_bound).map_err(err)?;
        let mut checks = core::verify_recollement(r, &ca, &cc, &cb).map_err(err)?;
        checks.extend(core::check_quotient_equivalence(r, &ca).map_err(err)?);
        Ok(rows(&checks))
    }
}

/// Idempotent ideal and TTF class counts, and whether they correspond.
#[pyfunction]
#[pyo3(signature = (algebra, dim_bound = 2, mode_name = "brute"))]
fn jans_check(algebra: &PyAlgebra, dim_bound: usize, mode_name: &str) -> PyResult<(usize, usize, bool)> {
    let j = ttf::jans_bijection(&algebra.inner, dim_bound, mode(mode_name)?).map_err(err)?;
    Ok((j.ideals.len(), j.classes.len(), j.is_bijection()))
}

/// Builds the equivalence witness for an idempotent ideal and verifies it.
/// Returns (n, corner dimension, checks).
#[pyfunction]
#[pyo3(signature = (ideal, dim_bound = 2, copies = 1))]
fn kuhn_demo(ideal: &PyIdeal, dim_bound: usize, copies: usize) -> PyResult<(usize, usize, Rows)> {
    let a = ideal.inner.algebra();
    let cat = module_catalog(a, dim_bound).map_err(err)?;
    let spec = kuhn::GeneratorSpec { idempotent: None, copies };
    let w = kuhn::kuhn_construction(a, &ideal.inner, &spec, &cat).map_err(err)?;
    let checks = kuhn::verify_equivalence_witness(&w).map_err(err)?;
    Ok((w.n, w.corner.algebra.dim(), rows(&checks)))
}

/// Runs a command-line invocation in process and returns the report JSON.
#[pyfunction]
fn run_cli(args: Vec<String>) -> PyResult<String> {
    use core::cli::{run, Cli};
    use pyo3::exceptions::PyRuntimeError;
    let argv = std::iter::once("recollement".to_string()).chain(args);
    let cli = <Cli as clap::Parser>::try_parse_from(argv).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (report, _) = run(&cli).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(report.to_json())
}

#[pymodule]
fn recollement_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyModule_>()?;
    m.add_class::<PyRecollement>()?;
    m.add_function(wrap_pyfunction!(jans_check, m)?)?;
    m.add_function(wrap_pyfunction!(kuhn_demo, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
