//! Python bindings: exact Witt and quaternion arithmetic, the curve's
//! point and automorphism data, Eisenstein series, and the named
//! verification checks, importable as `morava2_py`.

use morava2::cannibal::binomial_series;
use morava2::checks::{run_checks, CheckConfig, CheckReport, CheckStatus};
use morava2::curve::{
    all_points, frobenius_map, generate, matrix_of, negation, omega_twist, order_four,
};
use morava2::fgl::from_curve;
use morava2::qexp::{eisenstein, QRing};
use morava2::rings::{E0Ring, F4Field, Ring, WittElement, WittRing, Z2Ring};
use morava2::stabilizer::{identity_action, minus_one_action, omega_action, order_four_action};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn pyerr(e: morava2::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An element of `W(F4) = Z2[w]` at fixed 2-adic precision.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Witt {
    ring: WittRing,
    elem: WittElement,
}

impl Witt {
    fn same_ring(&self, other: &Witt) -> PyResult<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PyValueError::new_err("mixed 2-adic precisions"))
        }
    }
}

#[pymethods]
impl Witt {
    /// `a0 + a1 w` with coordinates mod `2^precision`.
    #[new]
    #[pyo3(signature = (a0, a1 = 0, precision = 12))]
    fn new(a0: i64, a1: i64, precision: u32) -> PyResult<Self> {
        if precision < 1 {
            return Err(PyValueError::new_err("precision must be at least 1"));
        }
        let ring = WittRing::new(precision);
        Ok(Witt {
            elem: ring.element(a0, a1),
            ring,
        })
    }

    /// The cube root of unity `w` itself.
    #[staticmethod]
    #[pyo3(signature = (precision = 12))]
    fn omega(precision: u32) -> PyResult<Self> {
        let ring = WittRing::new(precision.max(1));
        Ok(Witt {
            elem: ring.omega(),
            ring,
        })
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.ring.precision()
    }

    /// Coordinates `(a0, a1)` as canonical residues.
    #[getter]
    fn coordinates(&self) -> (u128, u128) {
        (self.elem.a0, self.elem.a1)
    }

    fn __add__(&self, other: &Witt) -> PyResult<Witt> {
        self.same_ring(other)?;
        Ok(Witt {
            ring: self.ring,
            elem: self.ring.add(&self.elem, &other.elem),
        })
    }

    fn __sub__(&self, other: &Witt) -> PyResult<Witt> {
        self.same_ring(other)?;
        Ok(Witt {
            ring: self.ring,
            elem: self.ring.sub(&self.elem, &other.elem),
        })
    }

    fn __mul__(&self, other: &Witt) -> PyResult<Witt> {
        self.same_ring(other)?;
        Ok(Witt {
            ring: self.ring,
            elem: self.ring.mul(&self.elem, &other.elem),
        })
    }

    fn __neg__(&self) -> Witt {
        Witt {
            ring: self.ring,
            elem: self.ring.neg(&self.elem),
        }
    }

    /// The Galois conjugate `w -> w^2`.
    fn conj(&self) -> Witt {
        Witt {
            ring: self.ring,
            elem: self.ring.conj(&self.elem),
        }
    }

    /// The norm `x * conj(x)`, a plain 2-adic residue.
    fn norm(&self) -> u128 {
        self.ring.norm(&self.elem)
    }

    fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.elem)
    }

    fn invert(&self) -> PyResult<Witt> {
        let elem = self.ring.try_invert(&self.elem).map_err(pyerr)?;
        Ok(Witt {
            ring: self.ring,
            elem,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Witt({} mod 2^{})",
            self.ring.display(&self.elem),
            self.ring.precision()
        )
    }
}

/// An element `a + b S` of the quaternion order, with `a, b` Witt.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Quaternion {
    order: morava2::quaternion::QuaternionOrder,
    elem: morava2::quaternion::Quat,
}

impl Quaternion {
    fn same_order(&self, other: &Quaternion) -> PyResult<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(PyValueError::new_err("mixed 2-adic precisions"))
        }
    }

    fn wrap(&self, elem: morava2::quaternion::Quat) -> Quaternion {
        Quaternion {
            order: self.order,
            elem,
        }
    }
}

#[pymethods]
impl Quaternion {
    /// `(a0 + a1 w) + (b0 + b1 w) S` mod `2^precision`.
    #[new]
    #[pyo3(signature = (a0, a1 = 0, b0 = 0, b1 = 0, precision = 12))]
    fn new(a0: i64, a1: i64, b0: i64, b1: i64, precision: u32) -> PyResult<Self> {
        if precision < 1 {
            return Err(PyValueError::new_err("precision must be at least 1"));
        }
        let w = WittRing::new(precision);
        let order = morava2::quaternion::QuaternionOrder::new(w);
        Ok(Quaternion {
            elem: order.element(w.element(a0, a1), w.element(b0, b1)),
            order,
        })
    }

    /// The generator `S` with `S^2 = 2`.
    #[staticmethod]
    #[pyo3(signature = (precision = 12))]
    fn s(precision: u32) -> PyResult<Self> {
        let order = morava2::quaternion::QuaternionOrder::new(WittRing::new(precision.max(1)));
        Ok(Quaternion {
            elem: order.s(),
            order,
        })
    }

    /// The unit `w` of order three.
    #[staticmethod]
    #[pyo3(signature = (precision = 12))]
    fn omega(precision: u32) -> PyResult<Self> {
        let order = morava2::quaternion::QuaternionOrder::new(WittRing::new(precision.max(1)));
        Ok(Quaternion {
            elem: order.omega(),
            order,
        })
    }

    #[getter]
    fn precision(&self) -> u32 {
        self.order.witt.precision()
    }

    fn __add__(&self, other: &Quaternion) -> PyResult<Quaternion> {
        self.same_order(other)?;
        Ok(self.wrap(self.order.add(&self.elem, &other.elem)))
    }

    fn __mul__(&self, other: &Quaternion) -> PyResult<Quaternion> {
        self.same_order(other)?;
        Ok(self.wrap(self.order.mul(&self.elem, &other.elem)))
    }

    fn __neg__(&self) -> Quaternion {
        self.wrap(self.order.neg(&self.elem))
    }

    fn pow(&self, k: u32) -> Quaternion {
        self.wrap(self.order.pow(&self.elem, k))
    }

    /// The standard involution `a + bS -> conj(a) - bS`.
    fn conj(&self) -> Quaternion {
        self.wrap(self.order.conj(&self.elem))
    }

    /// The reduced norm `a conj(a) - 2 b conj(b)` as a Witt scalar.
    fn det(&self) -> Witt {
        Witt {
            ring: self.order.witt,
            elem: self.order.det(&self.elem),
        }
    }

    fn invert(&self) -> PyResult<Quaternion> {
        Ok(self.wrap(self.order.try_invert(&self.elem).map_err(pyerr)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Quaternion({} mod 2^{})",
            self.order.display(&self.elem),
            self.order.witt.precision()
        )
    }
}

fn report_dict<'py>(py: Python<'py>, r: &CheckReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("check_id", &r.check_id)?;
    d.set_item("description", &r.description)?;
    let params = PyDict::new(py);
    params.set_item("n", r.params.n)?;
    params.set_item("m", r.params.m)?;
    params.set_item("cap", r.params.cap)?;
    params.set_item("q", r.params.q)?;
    params.set_item("dx", r.params.dx)?;
    d.set_item("params", params)?;
    let status = match r.status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skip => "skip",
    };
    d.set_item("status", status)?;
    d.set_item("details", &r.details)?;
    Ok(d)
}

/// All known check ids, sorted.
#[pyfunction]
fn check_ids() -> Vec<String> {
    morava2::checks::registry()
        .iter()
        .map(|d| d.id.to_string())
        .collect()
}

/// Runs one named check and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (check_id, n = 12, m = 8, cap = 10, q = 6, dx = 9, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn run_check<'py>(
    py: Python<'py>,
    check_id: &str,
    n: u32,
    m: u32,
    cap: u32,
    q: u32,
    dx: u32,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = CheckConfig {
        n,
        m,
        cap,
        q,
        dx,
        seed,
    };
    let reports = run_checks(&[check_id.into()], &cfg, 1).map_err(pyerr)?;
    report_dict(py, &reports[0])
}

/// Runs the full battery and returns the reports as a list of dicts.
#[pyfunction]
#[pyo3(signature = (n = 12, m = 8, cap = 10, q = 6, dx = 9, seed = 0, jobs = 1))]
#[allow(clippy::too_many_arguments)]
fn run_all<'py>(
    py: Python<'py>,
    n: u32,
    m: u32,
    cap: u32,
    q: u32,
    dx: u32,
    seed: u64,
    jobs: usize,
) -> PyResult<Bound<'py, PyList>> {
    let cfg = CheckConfig {
        n,
        m,
        cap,
        q,
        dx,
        seed,
    };
    let reports = run_checks(&[], &cfg, jobs).map_err(pyerr)?;
    let list = PyList::empty(py);
    for r in &reports {
        list.append(report_dict(py, r)?)?;
    }
    Ok(list)
}

/// The nine points of `y^2 + y = x^3` over F4, as debug strings.
#[pyfunction]
fn curve_points() -> Vec<String> {
    all_points().iter().map(|p| format!("{p:?}")).collect()
}

/// The four automorphism matrices in GL2(Z/3), keyed by name.
#[pyfunction]
fn automorphism_matrices(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    for map in [negation(), omega_twist(), order_four(), frobenius_map()] {
        let m = matrix_of(&map).map_err(pyerr)?;
        d.set_item(
            map.name,
            m.e.map(|row| row.map(u32::from).to_vec()).to_vec(),
        )?;
    }
    Ok(d)
}

/// Order of the group generated by the automorphism matrices.
#[pyfunction]
fn gl2_order() -> PyResult<usize> {
    let mats = [
        matrix_of(&negation()).map_err(pyerr)?,
        matrix_of(&omega_twist()).map_err(pyerr)?,
        matrix_of(&order_four()).map_err(pyerr)?,
        matrix_of(&frobenius_map()).map_err(pyerr)?,
    ];
    Ok(generate(&mats).len())
}

/// The 2-series of the curve's formal group law over F4.
#[pyfunction]
#[pyo3(signature = (cap = 10))]
fn two_series(cap: u32) -> PyResult<String> {
    let f4 = F4Field;
    let law = from_curve(&f4, &f4.zero(), &f4.one(), cap.max(6)).map_err(pyerr)?;
    Ok(law.n_series(2).map_err(pyerr)?.display())
}

/// q-coefficients of the weight-2k Eisenstein series, as exact
/// rational strings starting with the constant term.
#[pyfunction]
#[pyo3(signature = (k, q_order = 6))]
fn eisenstein_series(k: u32, q_order: u32) -> PyResult<Vec<String>> {
    if k < 1 || q_order < 1 {
        return Err(PyValueError::new_err("need k >= 1 and q_order >= 1"));
    }
    let qr = QRing::new(q_order);
    let g = eisenstein(&qr, k);
    let f = qr.cyclo();
    Ok(g.c.iter().map(|c| f.display(c)).collect())
}

/// The cubic droplet `(t0^2 u1 + (2/3) t1)^3 - t0^3` of a named
/// stabilizer action, displayed in `E0`.
#[pyfunction]
#[pyo3(signature = (name, n = 10, m = 6, cap = 6))]
fn q0_droplet(name: &str, n: u32, m: u32, cap: u32) -> PyResult<String> {
    if n < 1 || m < 1 || cap < 3 {
        return Err(PyValueError::new_err("need n, m >= 1 and cap >= 3"));
    }
    let e0 = E0Ring::with_precision(n, m);
    let act = match name {
        "identity" => identity_action(&e0, cap),
        "omega" => omega_action(&e0, cap),
        "minus-one" => minus_one_action(&e0, cap).map_err(pyerr)?,
        "i" | "order-four" => order_four_action(&e0, cap).map_err(pyerr)?,
        _ => {
            return Err(PyValueError::new_err(
                "unknown action; try identity, omega, minus-one, or i",
            ))
        }
    };
    let droplet = morava2::qexp::q0_droplet(&act).map_err(pyerr)?;
    Ok(e0.display(&droplet))
}

/// Coefficients of `(1 + t)^alpha` as canonical residues, plus the
/// number of trustworthy low bits after carry-loss tracking.
#[pyfunction]
#[pyo3(signature = (alpha, cap = 12, precision = 16))]
fn binomial_coefficients(alpha: u64, cap: u32, precision: u32) -> PyResult<(Vec<u128>, u32)> {
    if !(1..=64).contains(&precision) {
        return Err(PyValueError::new_err("precision must be in 1..=64"));
    }
    let z2 = Z2Ring::new(precision);
    let b = binomial_series(&z2, u128::from(alpha), cap).map_err(pyerr)?;
    let coeffs = (0..cap).map(|k| b.series.coeff1(k)).collect();
    Ok((coeffs, b.effective_precision()))
}

/// Exact arithmetic and named verification checks for the
/// supersingular-curve formula layer.
#[pymodule]
fn morava2_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Witt>()?;
    m.add_class::<Quaternion>()?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_all, m)?)?;
    m.add_function(wrap_pyfunction!(curve_points, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(gl2_order, m)?)?;
    m.add_function(wrap_pyfunction!(two_series, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein_series, m)?)?;
    m.add_function(wrap_pyfunction!(q0_droplet, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_coefficients, m)?)?;
    Ok(())
}
