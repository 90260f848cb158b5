//! Python bindings: structures, posets and the main operations on them.

use copieslab_core::embeddings as emb;
use copieslab_core::{acceptance, corpus, dot, format, orders, similarity, transfer};
use copieslab_core::{Error, FinitePoset, Language, Structure};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for copieslab_core::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A finite relational structure on `{0, .., size-1}`.
#[pyclass(name = "Structure", module = "copieslab", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyStructure {
    inner: Structure,
}

#[pymethods]
impl PyStructure {
    #[new]
    fn new(arities: Vec<usize>, size: usize, relations: Vec<Vec<Vec<usize>>>) -> PyResult<Self> {
        let language = Language::new(arities).or_raise()?;
        let inner = Structure::new(language, size, relations).or_raise()?;
        Ok(Self { inner })
    }

    /// Parses one structure in the text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: format::parse_structure(text).or_raise()?,
        })
    }

    fn to_text(&self) -> String {
        format::emit_structure(&self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn arities(&self) -> Vec<usize> {
        self.inner.language().arities().to_vec()
    }

    fn tuples(&self, symbol: usize) -> PyResult<Vec<Vec<usize>>> {
        if symbol >= self.inner.language().symbol_count() {
            return Err(PyValueError::new_err(format!("no symbol {symbol}")));
        }
        Ok(self.inner.tuples(symbol).to_vec())
    }

    fn is_connected(&self) -> PyResult<bool> {
        self.inner.is_connected().or_raise()
    }

    fn __repr__(&self) -> String {
        format!(
            "Structure(arities={:?}, size={}, tuples={})",
            self.inner.language().arities(),
            self.inner.size(),
            self.inner.tuple_count()
        )
    }
}

/// A finite partial order.
#[pyclass(name = "Poset", module = "copieslab", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoset {
    inner: FinitePoset,
}

#[pymethods]
impl PyPoset {
    /// The reflexive-transitive closure of `pairs` on `n` points.
    #[new]
    fn new(n: usize, pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: FinitePoset::from_pairs(n, &pairs).or_raise()?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: format::parse_poset(text).or_raise()?,
        })
    }

    fn to_text(&self) -> String {
        format::emit_poset(&self.inner)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn le(&self, a: usize, b: usize) -> PyResult<bool> {
        let n = self.inner.size();
        if a >= n || b >= n {
            return Err(PyValueError::new_err(format!("elements must be below {n}")));
        }
        Ok(self.inner.le(a, b))
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers()
    }

    fn least(&self) -> Option<usize> {
        self.inner.least()
    }

    fn minimal_elements(&self) -> Vec<usize> {
        self.inner.minimal_elements().to_vec()
    }

    fn is_isomorphic(&self, other: &PyPoset) -> bool {
        orders::poset_iso(&self.inner, &other.inner).is_some()
    }

    /// Graphviz text for the Hasse diagram.
    fn to_dot(&self) -> String {
        dot::hasse_dot(&self.inner, "poset", None)
    }

    fn __repr__(&self) -> String {
        format!("Poset(size={}, covers={:?})", self.inner.size(), self.inner.covers())
    }
}

fn poset(inner: FinitePoset) -> PyPoset {
    PyPoset { inner }
}

#[pyfunction]
fn embeddings(x: &PyStructure, y: &PyStructure) -> PyResult<Vec<Vec<usize>>> {
    Ok(emb::enumerate_embeddings(&x.inner, &y.inner).or_raise()?.assignments())
}

#[pyfunction]
fn isomorphisms(x: &PyStructure, y: &PyStructure) -> PyResult<Vec<Vec<usize>>> {
    Ok(emb::enumerate_isos(&x.inner, &y.inner).or_raise()?.assignments())
}

#[pyfunction]
fn automorphisms(x: &PyStructure) -> Vec<Vec<usize>> {
    emb::automorphisms(&x.inner).assignments()
}

/// Images of the embeddings of `x` into `y` (default `x`), as sorted lists.
#[pyfunction]
#[pyo3(signature = (x, y=None))]
fn copies(x: &PyStructure, y: Option<&PyStructure>) -> PyResult<Vec<Vec<usize>>> {
    let y = y.unwrap_or(x);
    let set = emb::copies(&x.inner, &y.inner).or_raise()?;
    Ok(set.subsets().iter().map(|s| s.to_vec()).collect())
}

#[pyfunction]
#[pyo3(signature = (x, y=None))]
fn copies_poset(x: &PyStructure, y: Option<&PyStructure>) -> PyResult<PyPoset> {
    let y = y.unwrap_or(x);
    Ok(poset(emb::copies_poset(&x.inner, &y.inner).or_raise()?))
}

/// Green's right order on the self-embeddings: `(classes, order)`.
#[pyfunction]
fn green(x: &PyStructure) -> PyResult<(Vec<Vec<Vec<usize>>>, PyPoset)> {
    let g = emb::green_quotient(&x.inner).or_raise()?;
    let classes = g
        .classes
        .iter()
        .map(|c| c.iter().map(|&i| g.embeddings.maps[i].assignment().to_vec()).collect())
        .collect();
    Ok((classes, poset(g.order)))
}

/// Truth values of the twelve similarity relations.
#[pyfunction]
fn classify(x: &PyStructure, y: &PyStructure) -> PyResult<Vec<bool>> {
    Ok(similarity::classify_pair(&x.inner, &y.inner).or_raise()?.holds.to_vec())
}

/// `(quotient, classes)`.
#[pyfunction]
fn separative_quotient(p: &PyPoset) -> (PyPoset, Vec<Vec<usize>>) {
    let q = orders::sep_quotient(&p.inner);
    let classes = q.classes.iter().map(|c| c.to_vec()).collect();
    (poset(q.order), classes)
}

/// Regular open sets of the separative quotient, with the algebra's size and atom count.
#[pyfunction]
fn regular_open<'py>(py: Python<'py>, p: &PyPoset) -> PyResult<Bound<'py, PyDict>> {
    let ro = orders::regular_open(&p.inner).or_raise()?;
    let d = PyDict::new(py);
    d.set_item("size", ro.len())?;
    d.set_item("atoms", ro.atom_count())?;
    let elements: Vec<Vec<usize>> = ro.elements().iter().map(|e| e.to_vec()).collect();
    d.set_item("elements", elements)?;
    d.set_item("order", poset(ro.as_poset()))?;
    Ok(d)
}

#[pyfunction]
fn is_quasi_homogeneous(p: &PyPoset) -> PyResult<bool> {
    orders::is_quasi_homogeneous(&p.inner).or_raise()
}

#[pyfunction]
fn is_homogeneous(p: &PyPoset) -> bool {
    orders::is_homogeneous(&p.inner)
}

/// All interpretations of a language on `size` points, or one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (arities, size, up_to_iso=false))]
fn generate_corpus(arities: Vec<usize>, size: usize, up_to_iso: bool) -> PyResult<Vec<PyStructure>> {
    let language = Language::new(arities).or_raise()?;
    let c = corpus::generate_corpus(&language, size, up_to_iso).or_raise()?;
    Ok(c.interpretations.into_iter().map(|inner| PyStructure { inner }).collect())
}

/// The least rigid digraph on `m` points, or the transitive tournament.
#[pyfunction]
#[pyo3(signature = (m, tournament=false))]
fn rigid_digraph(m: usize, tournament: bool) -> PyResult<PyStructure> {
    let w = if tournament {
        transfer::transitive_tournament(m)
    } else {
        transfer::find_rigid_digraph(m)
    }
    .or_raise()?;
    Ok(PyStructure {
        inner: w.theta().clone(),
    })
}

/// Transfers a binary `rho` into the language `arities`. The witness is
/// the transitive tournament on `theta_size` points (default `|rho| + 1`).
#[pyfunction]
#[pyo3(signature = (rho, arities, theta_size=None, unpadded=false))]
fn tau(rho: &PyStructure, arities: Vec<usize>, theta_size: Option<usize>, unpadded: bool) -> PyResult<PyStructure> {
    let language = Language::new(arities).or_raise()?;
    let tr = if unpadded {
        transfer::tau_unpadded(&rho.inner, &language)
    } else {
        let w = transfer::transitive_tournament(theta_size.unwrap_or(rho.inner.size() + 1)).or_raise()?;
        transfer::tau(&rho.inner, &language, &w)
    }
    .or_raise()?;
    Ok(PyStructure { inner: tr.tau })
}

/// Runs acceptance criteria; each result is a dict with `id`, `name`,
/// `passed`, `checked` and `detail`.
#[pyfunction]
#[pyo3(signature = (seed=0, criteria=None))]
fn accept<'py>(py: Python<'py>, seed: u64, criteria: Option<Vec<u8>>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let ids = criteria.unwrap_or_else(|| acceptance::CRITERIA.iter().map(|&(id, _)| id).collect());
    let outcomes: Vec<_> = py.detach(|| ids.iter().map(|&id| acceptance::run_criterion(id, seed)).collect());
    outcomes
        .into_iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("id", o.id)?;
            d.set_item("name", o.name)?;
            d.set_item("passed", o.passed)?;
            d.set_item("checked", o.checked)?;
            d.set_item("detail", o.detail)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn copieslab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyPoset>()?;
    m.add_function(wrap_pyfunction!(embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(automorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(copies, m)?)?;
    m.add_function(wrap_pyfunction!(copies_poset, m)?)?;
    m.add_function(wrap_pyfunction!(green, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(separative_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(regular_open, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasi_homogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(is_homogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(generate_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(rigid_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(accept, m)?)?;
    m.add("RELATION_DESCRIPTIONS", similarity::RELATION_DESCRIPTIONS.to_vec())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
