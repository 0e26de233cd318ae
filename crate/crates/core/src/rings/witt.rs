//! Witt vectors of `F4` at finite 2-adic precision.
//!
//! `W(F4) = Z2[w]` where `w` is a primitive cube root of unity, so
//! `w^2 = -1 - w` and conjugation (the lift of Frobenius) swaps `w` with
//! `w^2`.  The context truncates everything mod `2^n`.

use super::{inv_odd_u128, F4Element, Ring};
use crate::error::{Error, Result};

/// `W(F4)` mod `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WittRing {
    n: u32,
    mask: u128,
}

/// `a0 + a1*w`, both coordinates canonical in `[0, 2^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WittElement {
    pub a0: u128,
    pub a1: u128,
}

impl WittRing {
    /// Precision `n` with `1 <= n <= 120`.
    pub fn new(n: u32) -> Self {
        assert!((1..=120).contains(&n), "witt precision out of range: {n}");
        WittRing {
            n,
            mask: (1u128 << n) - 1,
        }
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn element(&self, a0: i64, a1: i64) -> WittElement {
        WittElement {
            a0: (a0 as i128 as u128) & self.mask,
            a1: (a1 as i128 as u128) & self.mask,
        }
    }

    /// The cube root of unity `w`.
    pub fn omega(&self) -> WittElement {
        WittElement { a0: 0, a1: 1 }
    }

    /// Conjugation `w -> w^2 = -1 - w`; the lift of Frobenius.
    pub fn conj(&self, x: &WittElement) -> WittElement {
        WittElement {
            a0: x.a0.wrapping_sub(x.a1) & self.mask,
            a1: x.a1.wrapping_neg() & self.mask,
        }
    }

    /// `x * conj(x) = a0^2 - a0 a1 + a1^2`, an element of `Z/2^n`.
    pub fn norm(&self, x: &WittElement) -> u128 {
        let sq =
            x.a0.wrapping_mul(x.a0)
                .wrapping_add(x.a1.wrapping_mul(x.a1));
        sq.wrapping_sub(x.a0.wrapping_mul(x.a1)) & self.mask
    }

    /// Units are exactly the elements of odd norm.
    pub fn is_unit(&self, x: &WittElement) -> bool {
        self.norm(x) & 1 == 1
    }

    /// Reduction mod 2, sending `w` to the generator `a` of `F4`.
    pub fn reduce_mod2(&self, x: &WittElement) -> F4Element {
        F4Element::new(x.a0 & 1 == 1, x.a1 & 1 == 1)
    }

    /// Reinterpret at another precision (truncating or zero-extending the
    /// canonical representative).
    pub fn reinterpret(&self, x: &WittElement, target: &WittRing) -> WittElement {
        WittElement {
            a0: x.a0 & target.mask,
            a1: x.a1 & target.mask,
        }
    }
}

impl Ring for WittRing {
    type Element = WittElement;

    fn zero(&self) -> WittElement {
        WittElement { a0: 0, a1: 0 }
    }

    fn one(&self) -> WittElement {
        WittElement { a0: 1, a1: 0 }
    }

    fn add(&self, a: &WittElement, b: &WittElement) -> WittElement {
        WittElement {
            a0: a.a0.wrapping_add(b.a0) & self.mask,
            a1: a.a1.wrapping_add(b.a1) & self.mask,
        }
    }

    fn neg(&self, a: &WittElement) -> WittElement {
        WittElement {
            a0: a.a0.wrapping_neg() & self.mask,
            a1: a.a1.wrapping_neg() & self.mask,
        }
    }

    // (a0 + a1 w)(b0 + b1 w) = (a0 b0 - a1 b1) + (a0 b1 + a1 b0 - a1 b1) w.
    fn mul(&self, a: &WittElement, b: &WittElement) -> WittElement {
        let cross = a.a1.wrapping_mul(b.a1);
        WittElement {
            a0: a.a0.wrapping_mul(b.a0).wrapping_sub(cross) & self.mask,
            a1: a
                .a0
                .wrapping_mul(b.a1)
                .wrapping_add(a.a1.wrapping_mul(b.a0))
                .wrapping_sub(cross)
                & self.mask,
        }
    }

    fn is_zero(&self, a: &WittElement) -> bool {
        a.a0 == 0 && a.a1 == 0
    }

    fn from_i64(&self, n: i64) -> WittElement {
        WittElement {
            a0: (n as i128 as u128) & self.mask,
            a1: 0,
        }
    }

    // x^-1 = conj(x) / norm(x); defined exactly when the norm is odd.
    fn try_invert(&self, a: &WittElement) -> Result<WittElement> {
        let nm = self.norm(a);
        if nm & 1 == 0 {
            return Err(Error::NotAUnit(format!(
                "{} has even norm {nm} in W(F4) mod 2^{}",
                self.display(a),
                self.n
            )));
        }
        let ninv = inv_odd_u128(nm, self.mask);
        let c = self.conj(a);
        Ok(WittElement {
            a0: c.a0.wrapping_mul(ninv) & self.mask,
            a1: c.a1.wrapping_mul(ninv) & self.mask,
        })
    }

    fn display(&self, a: &WittElement) -> String {
        let signed = |v: u128| -> i128 {
            // Prefer the small negative representative for readability.
            let half = 1u128 << (self.n - 1);
            if v > half {
                v as i128 - (1i128 << self.n)
            } else {
                v as i128
            }
        };
        match (a.a0, a.a1) {
            (0, 0) => "0".into(),
            (_, 0) => format!("{}", signed(a.a0)),
            (0, 1) => "w".into(),
            (0, _) => format!("{}w", signed(a.a1)),
            (_, 1) => format!("{}+w", signed(a.a0)),
            (_, _) => format!("{}{:+}w", signed(a.a0), signed(a.a1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_relations() {
        let r = WittRing::new(12);
        let w = r.omega();
        // w^3 = 1 and w^2 + w + 1 = 0
        assert_eq!(r.pow(&w, 3), r.one());
        let s = r.add(&r.add(&r.mul(&w, &w), &w), &r.one());
        assert!(r.is_zero(&s));
        // conj is w -> w^2
        assert_eq!(r.conj(&w), r.mul(&w, &w));
    }

    #[test]
    fn norm_and_inverse() {
        let r = WittRing::new(16);
        let x = r.element(1, 2); // 1 + 2w
        assert_eq!(r.norm(&x), 3);
        assert_eq!(r.conj(&x), r.element(-1, -2));
        let inv = r.try_invert(&x).unwrap();
        assert_eq!(r.mul(&x, &inv), r.one());
        // 2 is not a unit
        assert!(r.try_invert(&r.from_i64(2)).is_err());
    }

    #[test]
    fn norm_is_multiplicative() {
        let r = WittRing::new(20);
        let xs = [
            r.element(3, 5),
            r.element(-7, 2),
            r.element(0, 1),
            r.element(11, -4),
        ];
        for x in &xs {
            for y in &xs {
                let lhs = r.norm(&r.mul(x, y));
                let rhs = r.norm(x).wrapping_mul(r.norm(y)) & r.mask;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conj_is_ring_map() {
        let r = WittRing::new(14);
        let xs = [r.element(3, 5), r.element(-1, 9), r.element(6, -2)];
        for x in &xs {
            for y in &xs {
                assert_eq!(r.conj(&r.mul(x, y)), r.mul(&r.conj(x), &r.conj(y)));
                assert_eq!(r.conj(&r.add(x, y)), r.add(&r.conj(x), &r.conj(y)));
            }
        }
    }
}
