//! `Z/2^n`: 2-adic integers at finite precision.
//!
//! Used both as a coefficient ring (binomial series, K-theory theta classes)
//! and as the home of 2-adic exponents.

use super::{inv_odd_u128, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Z2Ring {
    n: u32,
    mask: u128,
}

impl Z2Ring {
    pub fn new(n: u32) -> Self {
        assert!((1..=120).contains(&n), "2-adic precision out of range: {n}");
        Z2Ring {
            n,
            mask: (1u128 << n) - 1,
        }
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn element(&self, v: i64) -> u128 {
        (v as i128 as u128) & self.mask
    }

    /// Truncate to a lower precision context.
    pub fn reinterpret(&self, x: u128, target: &Z2Ring) -> u128 {
        x & target.mask
    }

    /// Exact division by `2^k`; errors if `x` is not divisible.  The result
    /// is only meaningful mod `2^(n-k)`.
    pub fn shr_exact(&self, x: u128, k: u32) -> Result<u128> {
        if k == 0 {
            return Ok(x);
        }
        if x & ((1u128 << k) - 1) != 0 {
            return Err(Error::PrecisionExhausted(format!(
                "{x} is not divisible by 2^{k} mod 2^{}",
                self.n
            )));
        }
        Ok(x >> k)
    }
}

impl Ring for Z2Ring {
    type Element = u128;

    fn zero(&self) -> u128 {
        0
    }

    fn one(&self) -> u128 {
        1
    }

    fn add(&self, a: &u128, b: &u128) -> u128 {
        a.wrapping_add(*b) & self.mask
    }

    fn neg(&self, a: &u128) -> u128 {
        a.wrapping_neg() & self.mask
    }

    fn mul(&self, a: &u128, b: &u128) -> u128 {
        a.wrapping_mul(*b) & self.mask
    }

    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u128 {
        (n as i128 as u128) & self.mask
    }

    fn try_invert(&self, a: &u128) -> Result<u128> {
        if a & 1 == 0 {
            return Err(Error::NotAUnit(format!("{a} is even mod 2^{}", self.n)));
        }
        Ok(inv_odd_u128(*a, self.mask))
    }

    fn display(&self, a: &u128) -> String {
        let half = 1u128 << (self.n - 1);
        if *a > half {
            format!("{}", *a as i128 - (1i128 << self.n))
        } else {
            format!("{a}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_inverses() {
        let r = Z2Ring::new(20);
        for v in [1i64, 3, -5, 77, 1023] {
            let x = r.element(v);
            let inv = r.try_invert(&x).unwrap();
            assert_eq!(r.mul(&x, &inv), 1);
        }
        assert!(r.try_invert(&r.element(6)).is_err());
    }

    #[test]
    fn exact_shift() {
        let r = Z2Ring::new(10);
        assert_eq!(r.shr_exact(8, 3).unwrap(), 1);
        assert!(r.shr_exact(6, 2).is_err());
    }
}
