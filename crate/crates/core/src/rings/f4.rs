//! The field with four elements, presented as `F2[a]` with `a^2 = a + 1`.

use super::Ring;
use crate::error::{Error, Result};

/// Context for `F4`.  Carries no parameters; it exists so `F4` plugs into
/// the generic series machinery like every other coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct F4Field;

/// `c0 + c1*a` with `c0, c1` in `F2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F4Element {
    c0: bool,
    c1: bool,
}

impl F4Element {
    pub const ZERO: F4Element = F4Element {
        c0: false,
        c1: false,
    };
    pub const ONE: F4Element = F4Element {
        c0: true,
        c1: false,
    };
    /// The generator `a`.
    pub const A: F4Element = F4Element {
        c0: false,
        c1: true,
    };
    /// `a + 1 = a^2`.
    pub const A1: F4Element = F4Element { c0: true, c1: true };

    pub fn new(c0: bool, c1: bool) -> Self {
        F4Element { c0, c1 }
    }

    /// Frobenius `x -> x^2`; fixes `F2` and swaps `a` with `a + 1`.
    pub fn frobenius(self) -> Self {
        F4Element {
            c0: self.c0 ^ self.c1,
            c1: self.c1,
        }
    }

    /// All four elements, in a fixed order.
    pub fn all() -> [F4Element; 4] {
        [Self::ZERO, Self::ONE, Self::A, Self::A1]
    }
}

impl Ring for F4Field {
    type Element = F4Element;

    fn zero(&self) -> F4Element {
        F4Element::ZERO
    }

    fn one(&self) -> F4Element {
        F4Element::ONE
    }

    fn add(&self, a: &F4Element, b: &F4Element) -> F4Element {
        F4Element {
            c0: a.c0 ^ b.c0,
            c1: a.c1 ^ b.c1,
        }
    }

    fn neg(&self, a: &F4Element) -> F4Element {
        *a
    }

    // (a0 + a1 a)(b0 + b1 a) = a0 b0 + a1 b1 + (a0 b1 + a1 b0 + a1 b1) a.
    fn mul(&self, a: &F4Element, b: &F4Element) -> F4Element {
        let cross = a.c1 && b.c1;
        F4Element {
            c0: (a.c0 && b.c0) ^ cross,
            c1: (a.c0 && b.c1) ^ (a.c1 && b.c0) ^ cross,
        }
    }

    fn is_zero(&self, a: &F4Element) -> bool {
        !a.c0 && !a.c1
    }

    fn from_i64(&self, n: i64) -> F4Element {
        if n.rem_euclid(2) == 1 {
            F4Element::ONE
        } else {
            F4Element::ZERO
        }
    }

    fn try_invert(&self, a: &F4Element) -> Result<F4Element> {
        if self.is_zero(a) {
            return Err(Error::NotAUnit("0 in F4".into()));
        }
        // Nonzero elements are the cube roots of 1, so x^-1 = x^2.
        Ok(a.frobenius())
    }

    fn display(&self, a: &F4Element) -> String {
        match (a.c0, a.c1) {
            (false, false) => "0".into(),
            (true, false) => "1".into(),
            (false, true) => "a".into(),
            (true, true) => "a+1".into(),
        }
    }
}
