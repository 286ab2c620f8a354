//! Python bindings.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use ktwist_core::detect::detection_matrix;
use ktwist_core::fusion::{coform, identity_class};
use ktwist_core::repth::{level_of, weight_multiplicities};
use ktwist_core::{Canonical, Error, HighestWeight, KClass, Weight};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.kind()))
}

fn datum_of(lie_type: &str) -> PyResult<Arc<ktwist_core::RootDatum>> {
    let t = lie_type.parse().map_err(py_err)?;
    ktwist_core::RootDatum::new(t).map(Arc::new).map_err(py_err)
}

#[pyclass(frozen)]
struct RootDatum {
    inner: Arc<ktwist_core::RootDatum>,
}

#[pymethods]
impl RootDatum {
    #[new]
    fn new(lie_type: &str) -> PyResult<Self> {
        Ok(Self {
            inner: datum_of(lie_type)?,
        })
    }

    #[getter]
    fn lie_type(&self) -> String {
        self.inner.lie_type().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_rows()
    }

    #[getter]
    fn basic_gram(&self) -> Vec<Vec<i64>> {
        self.inner.basic_gram().to_rows()
    }

    #[getter]
    fn rho(&self) -> Vec<i64> {
        self.inner.rho().0.clone()
    }

    #[getter]
    fn dual_coxeter_number(&self) -> i64 {
        self.inner.dual_coxeter_number()
    }

    #[getter]
    fn weyl_order(&self) -> usize {
        self.inner.weyl_order()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().iter().map(|r| r.weight.0.clone()).collect()
    }

    fn __repr__(&self) -> String {
        format!("RootDatum('{}')", self.inner.lie_type())
    }
}

#[pyclass(frozen)]
struct LevelForm {
    inner: ktwist_core::LevelForm,
}

#[pymethods]
impl LevelForm {
    /// Exactly one of `level` and `rep` (a highest weight) must be given.
    #[new]
    #[pyo3(signature = (lie_type, level=None, rep=None))]
    fn new(lie_type: &str, level: Option<i64>, rep: Option<Vec<i64>>) -> PyResult<Self> {
        let datum = datum_of(lie_type)?;
        let inner = match (level, rep) {
            (Some(k), None) => ktwist_core::LevelForm::new(datum, k),
            (None, Some(w)) => HighestWeight::new(&datum, Weight(w))
                .and_then(|hw| ktwist_core::LevelForm::from_representation(datum, &hw)),
            _ => return Err(PyValueError::new_err("pass exactly one of level and rep")),
        }
        .map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn level(&self) -> i64 {
        self.inner.level()
    }

    #[getter]
    fn gram(&self) -> Vec<Vec<i64>> {
        self.inner.gram().to_rows()
    }

    fn basis(&self) -> Vec<Vec<i64>> {
        self.inner.enumerate_regular_orbits().into_iter().map(|r| r.weight.0).collect()
    }

    fn is_regular(&self, chi: Vec<i64>) -> PyResult<bool> {
        self.inner.datum().check_rank(&chi).map_err(py_err)?;
        Ok(self.inner.is_regular(&Weight(chi)))
    }

    /// `(representative, sign)` for a regular weight, `None` otherwise.
    fn canonicalize(&self, chi: Vec<i64>) -> PyResult<Option<(Vec<i64>, i64)>> {
        self.inner.datum().check_rank(&chi).map_err(py_err)?;
        Ok(match self.inner.canonicalize(&Weight(chi)) {
            Canonical::Regular { rep, sign } => Some((rep.weight.0, sign)),
            Canonical::Singular { .. } => None,
        })
    }

    fn identity(&self) -> PyResult<Vec<i64>> {
        identity_class(&self.inner).map(|e| e.0).map_err(py_err)
    }

    #[pyo3(signature = (omega=None))]
    fn coform(&self, omega: Option<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
        let omega = Weight(omega.unwrap_or_else(|| vec![0; self.inner.datum().rank()]));
        coform(&self.inner, &omega).map(|c| c.matrix.to_rows()).map_err(py_err)
    }

    fn finite_group(&self) -> PyResult<FiniteGroup> {
        ktwist_core::FiniteGroupF::new(&self.inner)
            .map(|inner| FiniteGroup { inner })
            .map_err(py_err)
    }

    fn fusion_ring(&self) -> PyResult<FusionRing> {
        ktwist_core::FusionRing::new(&self.inner)
            .map(|inner| FusionRing { inner })
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("LevelForm('{}', level={})", self.inner.datum().lie_type(), self.inner.level())
    }
}

#[pyclass(frozen)]
struct FiniteGroup {
    inner: ktwist_core::FiniteGroupF,
}

#[pymethods]
impl FiniteGroup {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn elementary_divisors(&self) -> Vec<i64> {
        self.inner.elementary_divisors()
    }

    #[getter]
    fn exponent(&self) -> i64 {
        self.inner.exponent()
    }

    fn verify_duality(&self) -> bool {
        self.inner.verify_duality()
    }

    /// `(coords, orbit size)` with `coords / exponent` the simple-coroot
    /// coordinates of the least element of each regular orbit.
    fn regular_orbits(&self) -> Vec<(Vec<i64>, usize)> {
        self.inner
            .regular_orbits()
            .into_iter()
            .map(|(f, n)| (f.coords, n))
            .collect()
    }

    fn detection_matrix_json(&self) -> PyResult<String> {
        let m = detection_matrix(&self.inner).map_err(py_err)?;
        serde_json::to_string(&m).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn detection_matrix_is_nonsingular(&self) -> PyResult<bool> {
        detection_matrix(&self.inner).map(|m| m.is_nonsingular()).map_err(py_err)
    }
}

#[pyclass(frozen)]
struct FusionRing {
    inner: ktwist_core::FusionRing,
}

#[pymethods]
impl FusionRing {
    #[getter]
    fn basis(&self) -> Vec<Vec<i64>> {
        self.inner.table().basis.iter().map(|w| w.0.clone()).collect()
    }

    #[getter]
    fn identity(&self) -> Option<Vec<i64>> {
        self.inner.table().identity.as_ref().map(|e| e.0.clone())
    }

    #[getter]
    fn structure_constants(&self) -> Vec<Vec<Vec<i64>>> {
        self.inner.table().n.clone()
    }

    fn multiply(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<Vec<i64>> {
        self.inner.multiply(&KClass(x), &KClass(y)).map(|z| z.0).map_err(py_err)
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.table().validate().map_err(PyValueError::new_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(self.inner.table()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.dimension()
    }
}

/// Weight multiplicities of the irreducible representation with the given
/// highest weight, keyed by weight tuples.
#[pyfunction(name = "weight_multiplicities")]
fn py_weight_multiplicities<'py>(
    py: Python<'py>,
    lie_type: &str,
    highest_weight: Vec<i64>,
) -> PyResult<Bound<'py, PyDict>> {
    let datum = datum_of(lie_type)?;
    let hw = HighestWeight::new(&datum, Weight(highest_weight)).map_err(py_err)?;
    let system = weight_multiplicities(&datum, &hw).map_err(py_err)?;
    let out = PyDict::new(py);
    for (w, m) in system.iter() {
        out.set_item(PyTuple::new(py, w.coords())?, m)?;
    }
    Ok(out)
}

/// Level of the form defined by the trace form of a representation.
#[pyfunction(name = "level_of")]
fn py_level_of(lie_type: &str, highest_weight: Vec<i64>) -> PyResult<i64> {
    let datum = datum_of(lie_type)?;
    let hw = HighestWeight::new(&datum, Weight(highest_weight)).map_err(py_err)?;
    level_of(&datum, &hw).map_err(py_err)
}

#[pymodule]
fn ktwist(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootDatum>()?;
    m.add_class::<LevelForm>()?;
    m.add_class::<FiniteGroup>()?;
    m.add_class::<FusionRing>()?;
    m.add_function(wrap_pyfunction!(py_weight_multiplicities, m)?)?;
    m.add_function(wrap_pyfunction!(py_level_of, m)?)?;
    Ok(())
}
