//! The graded ring `E_* = E0[u, u^-1]` with `u` invertible of degree -2.
//!
//! Elements are homogeneous: a body in `E0` times a power of `u`.  Zero is
//! degree-flexible so that series accumulation works; adding two nonzero
//! elements of different degrees is a grading error and panics loudly.

use super::{E0Element, E0Ring, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedRing {
    pub e0: E0Ring,
}

/// `body * u^u_power`; topological degree `-2 * u_power`.
#[derive(Debug, Clone, Eq)]
pub struct GradedElement {
    pub body: E0Element,
    pub u_power: i64,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        // Zero compares equal regardless of the attached power.
        let self_zero = self.body.c.iter().all(|w| w.a0 == 0 && w.a1 == 0);
        let other_zero = other.body.c.iter().all(|w| w.a0 == 0 && w.a1 == 0);
        if self_zero || other_zero {
            return self_zero == other_zero;
        }
        self.u_power == other.u_power && self.body == other.body
    }
}

impl GradedRing {
    pub fn new(e0: E0Ring) -> Self {
        GradedRing { e0 }
    }

    pub fn from_e0(&self, body: E0Element, u_power: i64) -> GradedElement {
        GradedElement { body, u_power }
    }

    /// The periodicity generator `u`.
    pub fn u(&self) -> GradedElement {
        GradedElement {
            body: self.e0.one(),
            u_power: 1,
        }
    }

    pub fn degree(&self, a: &GradedElement) -> i64 {
        -2 * a.u_power
    }
}

impl Ring for GradedRing {
    type Element = GradedElement;

    fn zero(&self) -> GradedElement {
        GradedElement {
            body: self.e0.zero(),
            u_power: 0,
        }
    }

    fn one(&self) -> GradedElement {
        GradedElement {
            body: self.e0.one(),
            u_power: 0,
        }
    }

    fn add(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        if self.e0.is_zero(&a.body) {
            return b.clone();
        }
        if self.e0.is_zero(&b.body) {
            return a.clone();
        }
        assert_eq!(
            a.u_power, b.u_power,
            "inhomogeneous sum: u^{} + u^{}",
            a.u_power, b.u_power
        );
        GradedElement {
            body: self.e0.add(&a.body, &b.body),
            u_power: a.u_power,
        }
    }

    fn neg(&self, a: &GradedElement) -> GradedElement {
        GradedElement {
            body: self.e0.neg(&a.body),
            u_power: a.u_power,
        }
    }

    fn mul(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let body = self.e0.mul(&a.body, &b.body);
        if self.e0.is_zero(&body) {
            return self.zero();
        }
        GradedElement {
            body,
            u_power: a.u_power + b.u_power,
        }
    }

    fn is_zero(&self, a: &GradedElement) -> bool {
        self.e0.is_zero(&a.body)
    }

    fn from_i64(&self, n: i64) -> GradedElement {
        GradedElement {
            body: self.e0.from_i64(n),
            u_power: 0,
        }
    }

    fn try_invert(&self, a: &GradedElement) -> Result<GradedElement> {
        let body = self.e0.try_invert(&a.body).map_err(|e| match e {
            Error::NotAUnit(s) => Error::NotAUnit(format!("graded element: {s}")),
            other => other,
        })?;
        Ok(GradedElement {
            body,
            u_power: -a.u_power,
        })
    }

    fn display(&self, a: &GradedElement) -> String {
        if self.e0.is_zero(&a.body) {
            return "0".into();
        }
        let b = self.e0.display(&a.body);
        match a.u_power {
            0 => b,
            1 => format!("({b})*u"),
            p => format!("({b})*u^{p}"),
        }
    }
}
