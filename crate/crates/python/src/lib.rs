//! Python bindings for `quatsuper`.
//!
//! Coefficients are passed in as ints, strings (`"-1/2"`) or anything whose
//! `str()` the ring can parse. Structured results come back as plain dicts and
//! lists built from the crate's JSON forms.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyList, PyModule};

use quatsuper::algebra::{AlgebraParams, Parity, Quaternion};
use quatsuper::biderivations::{
    adjudicate_real_part, canonical_eval, is_super_biderivation, solve_biderivations,
    BiderivationSpec,
};
use quatsuper::derivations::{
    inner_decomposition, inner_superderivation, is_superderivation, outer_dimension,
    solve_superderivations,
};
use quatsuper::json;
use quatsuper::linear::{BilinMap, LinMap};
use quatsuper::local::classify_local;
use quatsuper::ring::{Ring, RingElement};
use quatsuper::theorems::{verify_theorems, VerifyOptions};

fn err(e: quatsuper::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn element(ring: Ring, obj: &Bound<'_, PyAny>) -> PyResult<RingElement> {
    let text = obj.str()?.to_string();
    ring.parse(&text).map_err(err)
}

fn elements(ring: Ring, obj: &Bound<'_, PyAny>, len: usize) -> PyResult<Vec<RingElement>> {
    let items: Vec<Bound<'_, PyAny>> = obj.try_iter()?.collect::<PyResult<_>>()?;
    if items.len() != len {
        return Err(PyValueError::new_err(format!(
            "expected {len} entries, got {}",
            items.len()
        )));
    }
    items.iter().map(|x| element(ring, x)).collect()
}

fn parity(degree: u8) -> PyResult<Parity> {
    Parity::from_u8(degree).map_err(err)
}

/// `H^{a,b}` over Q, F_p or Z/nZ.
#[pyclass(name = "Algebra", frozen, skip_from_py_object, module = "pyquatsuper")]
#[derive(Clone)]
pub struct PyAlgebra {
    params: AlgebraParams,
}

#[pyclass(
    name = "Quaternion",
    frozen,
    skip_from_py_object,
    module = "pyquatsuper"
)]
#[derive(Clone)]
pub struct PyQuaternion {
    inner: Quaternion,
}

impl PyAlgebra {
    fn linmap(&self, matrix: &Bound<'_, PyAny>) -> PyResult<LinMap> {
        let rows: Vec<Bound<'_, PyAny>> = matrix.try_iter()?.collect::<PyResult<_>>()?;
        if rows.len() != 4 {
            return Err(PyValueError::new_err("matrix must have 4 rows"));
        }
        let mut flat = Vec::with_capacity(16);
        for row in &rows {
            flat.extend(elements(self.params.ring(), row, 4)?);
        }
        LinMap::from_flat(&self.params, &flat).map_err(err)
    }

    fn bilinmap(&self, values: &Bound<'_, PyAny>) -> PyResult<BilinMap> {
        let rows: Vec<Bound<'_, PyAny>> = values.try_iter()?.collect::<PyResult<_>>()?;
        if rows.len() != 4 {
            return Err(PyValueError::new_err("tensor must have 4 rows"));
        }
        let mut flat = Vec::with_capacity(64);
        for row in &rows {
            let cells: Vec<Bound<'_, PyAny>> = row.try_iter()?.collect::<PyResult<_>>()?;
            if cells.len() != 4 {
                return Err(PyValueError::new_err("tensor rows must have 4 entries"));
            }
            for cell in &cells {
                flat.extend(elements(self.params.ring(), cell, 4)?);
            }
        }
        BilinMap::from_flat(&self.params, &flat).map_err(err)
    }

    fn wrap(&self, q: Quaternion) -> PyQuaternion {
        PyQuaternion { inner: q }
    }

    fn own(&self, x: &PyQuaternion) -> PyResult<Quaternion> {
        if !x.inner.params().same(&self.params) {
            return Err(PyValueError::new_err(
                "quaternion belongs to a different algebra",
            ));
        }
        Ok(x.inner.clone())
    }
}

#[pymethods]
impl PyAlgebra {
    /// `ring` is "q", "fp" or "zn"; `modulus` is required for the last two.
    #[new]
    #[pyo3(signature = (a, b, ring = "q", modulus = None))]
    fn new(
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        ring: &str,
        modulus: Option<u64>,
    ) -> PyResult<Self> {
        let need = || {
            modulus.ok_or_else(|| PyValueError::new_err(format!("ring {ring:?} needs a modulus")))
        };
        let r = match ring {
            "q" => Ring::Rationals,
            "fp" => Ring::prime_field(need()?).map_err(err)?,
            "zn" => Ring::residue_ring(need()?).map_err(err)?,
            other => return Err(PyValueError::new_err(format!("unknown ring {other:?}"))),
        };
        let params = AlgebraParams::new(r, element(r, a)?, element(r, b)?).map_err(err)?;
        Ok(PyAlgebra { params })
    }

    #[getter]
    fn a(&self) -> String {
        self.params.a().to_string()
    }

    #[getter]
    fn b(&self) -> String {
        self.params.b().to_string()
    }

    #[getter]
    fn ring(&self) -> String {
        self.params.ring().to_string()
    }

    fn quaternion(&self, coeffs: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let v = elements(self.params.ring(), coeffs, 4)?;
        Ok(self.wrap(self.params.from_vector(&v).map_err(err)?))
    }

    /// Basis element 0..=3 (1, i, j, k).
    fn basis(&self, p: usize) -> PyResult<PyQuaternion> {
        if p > 3 {
            return Err(PyValueError::new_err("basis index must be 0..=3"));
        }
        Ok(self.wrap(self.params.basis(p)))
    }

    fn derivations(&self, py: Python<'_>, degree: u8) -> PyResult<Py<PyAny>> {
        let s = solve_superderivations(&self.params, parity(degree)?).map_err(err)?;
        to_py(py, &json::derivation_space_to_json(&s))
    }

    #[pyo3(signature = (degree, symmetry = "any"))]
    fn biderivations(&self, py: Python<'_>, degree: u8, symmetry: &str) -> PyResult<Py<PyAny>> {
        let spec = BiderivationSpec::new(
            parity(degree)?,
            json::symmetry_from_name(symmetry).map_err(err)?,
        );
        let s = solve_biderivations(&self.params, spec).map_err(err)?;
        to_py(py, &json::biderivation_space_to_json(&s))
    }

    fn is_superderivation(&self, matrix: &Bound<'_, PyAny>, degree: u8) -> PyResult<bool> {
        Ok(is_superderivation(&self.linmap(matrix)?, parity(degree)?).is_ok())
    }

    fn is_super_biderivation(&self, values: &Bound<'_, PyAny>, degree: u8) -> PyResult<bool> {
        Ok(is_super_biderivation(&self.bilinmap(values)?, parity(degree)?).is_ok())
    }

    fn classify_local(
        &self,
        py: Python<'_>,
        matrix: &Bound<'_, PyAny>,
        degree: u8,
    ) -> PyResult<Py<PyAny>> {
        let v = classify_local(&self.linmap(matrix)?, parity(degree)?).map_err(err)?;
        to_py(py, &json::local_verdict_to_json(&v))
    }

    /// `{"map", "degree0", "degree1"}` for `y -> [x, y]_s`.
    fn inner(&self, py: Python<'_>, x: &PyQuaternion) -> PyResult<Py<PyAny>> {
        let x = self.own(x)?;
        let (even, odd) = inner_decomposition(&x);
        to_py(
            py,
            &serde_json::json!({
                "map": json::linmap_to_json(&inner_superderivation(&x)),
                "degree0": json::linmap_to_json(&even),
                "degree1": json::linmap_to_json(&odd),
            }),
        )
    }

    fn outer_dimension(&self) -> PyResult<usize> {
        outer_dimension(&self.params).map_err(err)
    }

    fn canonical_eval(
        &self,
        lam: &Bound<'_, PyAny>,
        x: &PyQuaternion,
        y: &PyQuaternion,
    ) -> PyResult<PyQuaternion> {
        let lam = element(self.params.ring(), lam)?;
        let q = canonical_eval(&lam, &self.own(x)?, &self.own(y)?).map_err(err)?;
        Ok(self.wrap(q))
    }

    fn real_part_adjudication(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let a = adjudicate_real_part(&self.params).map_err(err)?;
        to_py(py, &json::adjudication_to_json(&a))
    }

    /// List of `(name, passed, detail)` tuples.
    #[pyo3(signature = (samples = 200, seed = 0x5eed))]
    fn verify_theorems(&self, samples: usize, seed: u64) -> PyResult<Vec<(String, bool, String)>> {
        let report = verify_theorems(
            &self.params,
            VerifyOptions {
                local_samples: samples,
                seed,
            },
        )
        .map_err(err)?;
        Ok(report
            .checks
            .into_iter()
            .map(|c| (c.name.to_string(), c.passed, c.detail))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Algebra({})", self.params)
    }
}

fn other_quaternion(lhs: &PyQuaternion, rhs: &Bound<'_, PyAny>) -> PyResult<Quaternion> {
    let q = rhs
        .cast::<PyQuaternion>()
        .map_err(|_| PyTypeError::new_err("expected a Quaternion"))?
        .get()
        .inner
        .clone();
    if !q.params().same(lhs.inner.params()) {
        return Err(PyValueError::new_err(
            "quaternions belong to different algebras",
        ));
    }
    Ok(q)
}

#[pymethods]
impl PyQuaternion {
    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.inner
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    /// 0 or 1 for homogeneous elements (zero counts as even).
    fn parity(&self) -> PyResult<u8> {
        Ok(self.inner.parity_of().map_err(err)?.value())
    }

    fn grade_split(&self) -> (PyQuaternion, PyQuaternion) {
        let (e, o) = self.inner.grade_split();
        (PyQuaternion { inner: e }, PyQuaternion { inner: o })
    }

    fn lie(&self, other: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let q = self
            .inner
            .lie_super(&other_quaternion(self, other)?)
            .map_err(err)?;
        Ok(PyQuaternion { inner: q })
    }

    fn jordan(&self, other: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let q = self
            .inner
            .jordan_super(&other_quaternion(self, other)?)
            .map_err(err)?;
        Ok(PyQuaternion { inner: q })
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let q = self
            .inner
            .checked_add(&other_quaternion(self, other)?)
            .map_err(err)?;
        Ok(PyQuaternion { inner: q })
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let rhs = other_quaternion(self, other)?;
        let minus_one = self.inner.params().ring().from_i64(-1);
        let q = self
            .inner
            .checked_add(&rhs.scale(&minus_one))
            .map_err(err)?;
        Ok(PyQuaternion { inner: q })
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyQuaternion> {
        let q = self
            .inner
            .qmul(&other_quaternion(self, other)?)
            .map_err(err)?;
        Ok(PyQuaternion { inner: q })
    }

    fn __neg__(&self) -> PyQuaternion {
        let minus_one = self.inner.params().ring().from_i64(-1);
        PyQuaternion {
            inner: self.inner.scale(&minus_one),
        }
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        match other.cast::<PyQuaternion>() {
            Ok(o) => o.get().inner == self.inner,
            Err(_) => false,
        }
    }

    fn __repr__(&self) -> String {
        format!("Quaternion({})", self.inner)
    }
}

#[pymodule]
fn pyquatsuper(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyQuaternion>()?;
    m.add("BASIS", PyList::new(m.py(), ["1", "i", "j", "k"])?)?;
    Ok(())
}
