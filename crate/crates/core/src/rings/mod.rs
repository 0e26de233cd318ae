//! The coefficient ring tower.
//!
//! Everything downstream is generic over [`Ring`], a context object that
//! owns the precision parameters and performs all arithmetic.  Elements are
//! plain data without a back-pointer to their context; binary operations go
//! through the ring value, and structures that hold two contexts (series,
//! group laws) compare them and refuse to mix.
//!
//! Concrete rings, from the bottom up:
//!
//! * [`F4Field`] — the field with four elements, `F2[a]` with `a^2 = a + 1`.
//! * [`WittRing`] — Witt vectors `W(F4) = Z2[w]`, `w^2 = -1 - w`, truncated
//!   at `2^n`.
//! * [`Z2Ring`] — the subring `Z/2^n` (2-adic scalars and exponents).
//! * [`E0Ring`] — the deformation base `W(F4)[[u1]]` truncated at `u1^m`.
//! * [`GradedRing`] — `E0[u, u^-1]` with homogeneous elements `e * u^k`.
//! * [`RationalField`] — arbitrary-precision rationals.
//! * [`CycloField`] — `Q(zeta12)`, which contains the cube and sixth roots
//!   of unity needed for q-expansions shifted by 2*pi*i/3.

mod cyclo;
mod e0;
mod f4;
mod graded;
mod rational;
mod witt;
mod z2;

pub use cyclo::{CycloField, CycloRational};
pub use e0::{E0Element, E0Ring};
pub use f4::{F4Element, F4Field};
pub use graded::{GradedElement, GradedRing};
pub use rational::RationalField;
pub use witt::{WittElement, WittRing};
pub use z2::Z2Ring;

use crate::error::Result;

/// Commutative ring context.  `Element` values are inert data; all
/// arithmetic goes through the context so that precision parameters live in
/// exactly one place.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    type Element: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn is_zero(&self, a: &Self::Element) -> bool;
    /// Image of an integer under the unique map from Z.
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Element;
    /// Multiplicative inverse, or [`crate::Error::NotAUnit`].
    fn try_invert(&self, a: &Self::Element) -> Result<Self::Element>;
    /// Human-readable form used in reports and error messages.
    fn display(&self, a: &Self::Element) -> String;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    /// `a * n` for an integer `n`.
    fn mul_i64(&self, a: &Self::Element, n: i64) -> Self::Element {
        self.mul(a, &self.from_i64(n))
    }

    /// `a^k` by repeated squaring.
    fn pow(&self, a: &Self::Element, k: u32) -> Self::Element {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Inverse of an odd residue mod `2^n` (`mask = 2^n - 1`) by Newton lifting.
pub(crate) fn inv_odd_u128(x: u128, mask: u128) -> u128 {
    debug_assert!(x & 1 == 1, "inverse of an even residue");
    let mut inv: u128 = 1;
    // Each step doubles the number of correct bits; 7 steps cover 128.
    for _ in 0..7 {
        inv = inv.wrapping_mul(2u128.wrapping_sub(x.wrapping_mul(inv))) & mask;
    }
    inv
}

/// 2-adic valuation of `n`, with `v2(0)` treated as `u32::MAX`.
pub fn v2(n: u128) -> u32 {
    if n == 0 {
        u32::MAX
    } else {
        n.trailing_zeros()
    }
}

/// 2-adic valuation of `n!` (Legendre: `n - s2(n)`).
pub fn v2_factorial(n: u64) -> u32 {
    (n - u64::from(n.count_ones())) as u32
}
