//! Python bindings. The typed classes cover the common operations; anything
//! else goes through `run_job`, which takes the same JSON documents as the
//! command-line tool.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use primult::doublepoint::{self as dp, LocalDoubleRing};
use primult::fpmod::{self, Grading, IdealModule, Locality, PresMod, QuasiFreeType};
use primult::hilbert;
use primult::multiring::{TruncElem, TruncRing};
use primult::regseq;

fn err(e: primult::Error) -> PyErr {
    match e {
        primult::Error::CrossCheck { .. } => PyRuntimeError::new_err(format!("[{}] {e}", e.code())),
        _ => PyValueError::new_err(format!("[{}] {e}", e.code())),
    }
}

fn locality(origin: bool) -> Locality {
    if origin {
        Locality::AtOrigin
    } else {
        Locality::Global
    }
}

/// `Q[vars][t]/(t^n)`.
#[pyclass(name = "Ring", frozen, from_py_object)]
#[derive(Clone)]
struct PyRing {
    inner: TruncRing,
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(vars: Vec<String>, n: u32) -> PyResult<Self> {
        Ok(PyRing { inner: TruncRing::new(&vars, n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn nbase(&self) -> usize {
        self.inner.nbase()
    }

    fn parse(&self, s: &str) -> PyResult<PyElem> {
        Ok(PyElem { inner: self.inner.parse(s).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Ring(nbase={}, n={})", self.inner.nbase(), self.inner.n())
    }
}

#[pyclass(name = "Elem", frozen, from_py_object)]
#[derive(Clone)]
struct PyElem {
    inner: TruncElem,
}

#[pymethods]
impl PyElem {
    fn __add__(&self, o: &PyElem) -> PyResult<PyElem> {
        Ok(PyElem { inner: self.inner.add(&o.inner).map_err(err)? })
    }

    fn __sub__(&self, o: &PyElem) -> PyResult<PyElem> {
        Ok(PyElem { inner: self.inner.sub(&o.inner).map_err(err)? })
    }

    fn __mul__(&self, o: &PyElem) -> PyResult<PyElem> {
        Ok(PyElem { inner: self.inner.mul(&o.inner).map_err(err)? })
    }

    fn __neg__(&self) -> PyElem {
        PyElem { inner: self.inner.neg() }
    }

    fn __eq__(&self, o: &PyElem) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Elem({:?})", self.inner.to_string())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_zero_divisor(&self) -> bool {
        self.inner.is_zero_divisor()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    /// Coefficients of `1, t, .., t^(n-1)` as strings.
    fn coefficients(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(ToString::to_string).collect()
    }
}

fn elems(ring: &PyRing, gens: &[String]) -> PyResult<Vec<TruncElem>> {
    gens.iter().map(|g| ring.inner.parse(g).map_err(err)).collect()
}

/// A finitely presented module: `ngens` generators modulo the rows of
/// `relations`. Graded when `t_weight` is given.
#[pyclass(name = "Module", frozen)]
struct PyModule_ {
    inner: PresMod,
}

#[pymethods]
impl PyModule_ {
    #[new]
    #[pyo3(signature = (ring, ngens, relations, t_weight=None, gen_degrees=None))]
    fn new(
        ring: &PyRing,
        ngens: usize,
        relations: Vec<Vec<String>>,
        t_weight: Option<i64>,
        gen_degrees: Option<Vec<i64>>,
    ) -> PyResult<Self> {
        let rels = relations.iter().map(|r| elems(ring, r)).collect::<PyResult<Vec<_>>>()?;
        let grading =
            t_weight.map(|w| Grading::standard(ring.inner.nbase(), w, gen_degrees.unwrap_or_else(|| vec![0; ngens])));
        Ok(PyModule_ { inner: PresMod::new(&ring.inner, ngens, &rels, grading).map_err(err)? })
    }

    /// `R[n]/I` for `I` generated by `gens`.
    #[staticmethod]
    #[pyo3(signature = (ring, gens, t_weight=None))]
    fn cyclic(ring: &PyRing, gens: Vec<String>, t_weight: Option<i64>) -> PyResult<Self> {
        let g = elems(ring, &gens)?;
        let grading = t_weight.map(|w| Grading::standard(ring.inner.nbase(), w, vec![0]));
        Ok(PyModule_ { inner: PresMod::cyclic(&ring.inner, &g, grading).map_err(err)? })
    }

    /// The ideal generated by `gens`, as a module.
    #[staticmethod]
    #[pyo3(signature = (ring, gens, t_weight=None))]
    fn ideal(ring: &PyRing, gens: Vec<String>, t_weight: Option<i64>) -> PyResult<Self> {
        let im = IdealModule::new(&ring.inner, &elems(ring, &gens)?, t_weight).map_err(err)?;
        Ok(PyModule_ { inner: im.module().clone() })
    }

    #[getter]
    fn ngens(&self) -> usize {
        self.inner.ngens()
    }

    fn relations(&self) -> Vec<Vec<String>> {
        self.inner.relations().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    #[pyo3(signature = (origin=false))]
    fn is_balanced(&self, origin: bool) -> PyResult<bool> {
        Ok(fpmod::is_balanced_at(&self.inner, locality(origin)).map_err(err)?.0)
    }

    /// `[m_1, .., m_n]` with `M ≅ ⊕ R[i]^{m_i}`, or `None`.
    fn quasi_free_type(&self) -> PyResult<Option<Vec<usize>>> {
        Ok(match fpmod::quasi_free_type(&self.inner).map_err(err)? {
            QuasiFreeType::Type(v) => Some(v),
            QuasiFreeType::Absent { .. } => None,
        })
    }

    fn generic_type(&self) -> PyResult<Vec<usize>> {
        fpmod::generic_type(&self.inner).map_err(err)
    }

    fn is_torsion_free(&self) -> PyResult<bool> {
        Ok(primult::dualtor::torsion(&self.inner).map_err(err)?.is_torsion_free())
    }

    fn dual(&self) -> PyResult<PyModule_> {
        Ok(PyModule_ { inner: primult::dualtor::dual(&self.inner).map_err(err)? })
    }

    fn ext1(&self, target: &PyModule_) -> PyResult<PyModule_> {
        Ok(PyModule_ { inner: fpmod::ext1_module(&self.inner, &target.inner).map_err(err)? })
    }

    /// Coefficients in `d`, ascending, as strings.
    fn hilbert_polynomial(&self) -> PyResult<Vec<String>> {
        let p = hilbert::hilbert_polynomial(&self.inner).map_err(err)?;
        Ok(p.coeffs().iter().map(ToString::to_string).collect())
    }

    fn reduced_hilbert_polynomial(&self) -> PyResult<Vec<String>> {
        let p = hilbert::reduced_hilbert_polynomial(&self.inner, None).map_err(err)?;
        Ok(p.coeffs().iter().map(ToString::to_string).collect())
    }

    fn __repr__(&self) -> String {
        format!("Module(ngens={}, relations={})", self.inner.ngens(), self.inner.relations().len())
    }
}

/// Whether the sequence is regular; `origin` localizes at the origin.
#[pyfunction]
#[pyo3(signature = (ring, seq, origin=false))]
fn is_regular_sequence(ring: &PyRing, seq: Vec<String>, origin: bool) -> PyResult<bool> {
    Ok(regseq::is_regular_sequence(&elems(ring, &seq)?, locality(origin)).map_err(err)?.regular)
}

/// The ideal `(x + a t, y + b t)` in `Q[x,y,t]/(t^2)` near the origin.
#[pyclass(name = "PointIdeal", frozen)]
struct PyPointIdeal {
    inner: dp::PointIdeal,
}

#[pymethods]
impl PyPointIdeal {
    #[new]
    #[pyo3(signature = (a, b, jet_order=dp::DEFAULT_JET_ORDER))]
    fn new(a: &str, b: &str, jet_order: u32) -> PyResult<Self> {
        let r = LocalDoubleRing::new(jet_order).map_err(err)?;
        let a = r.parse_base(a).map_err(err)?;
        let b = r.parse_base(b).map_err(err)?;
        Ok(PyPointIdeal { inner: dp::PointIdeal::new(&r, &a, &b).map_err(err)? })
    }

    /// `(c_x, c_y)` as strings.
    fn tau(&self) -> PyResult<(String, String)> {
        let t = dp::tau(&self.inner).map_err(err)?;
        Ok((t.c_x.to_string(), t.c_y.to_string()))
    }

    fn lambda_coord(&self) -> PyResult<(String, String)> {
        let l = dp::lambda_coord(&self.inner).map_err(err)?;
        Ok((l.coords[0].to_string(), l.coords[1].to_string()))
    }

    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(ToString::to_string).collect()
    }

    fn __eq__(&self, other: &PyPointIdeal) -> PyResult<bool> {
        dp::ideals_equal(&self.inner, &other.inner).map_err(err)
    }
}

/// Runs a JSON job document and returns the JSON result document. Errors
/// come back inside the document, as from the command-line tool.
#[pyfunction]
#[pyo3(signature = (job, verify=false))]
fn run_job(job: &str, verify: bool) -> String {
    let opts = primult_cli::Options { verify, ..Default::default() };
    primult_cli::run_document(job, &opts).0.to_string()
}

#[pymodule]
#[pyo3(name = "primult")]
fn primult_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyElem>()?;
    m.add_class::<PyModule_>()?;
    m.add_class::<PyPointIdeal>()?;
    m.add_function(wrap_pyfunction!(is_regular_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add("COMMANDS", primult_cli::COMMANDS.to_vec())?;
    Ok(())
}
