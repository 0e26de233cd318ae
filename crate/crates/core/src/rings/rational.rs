//! Arbitrary-precision rationals as a coefficient ring.

use super::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalField;

impl RationalField {
    pub fn from_ratio(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// 2-adic valuation of a nonzero rational (negative for even denominators).
    pub fn v2(&self, x: &BigRational) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let tz = |n: &BigInt| -> i64 {
            let mut n = n.abs();
            let mut v = 0i64;
            let two = BigInt::from(2);
            while (&n % &two).is_zero() {
                n /= &two;
                v += 1;
            }
            v
        };
        Some(tz(x.numer()) - tz(x.denom()))
    }

    /// Reduce a 2-integral rational mod `2^n` (numerator times inverse of
    /// the odd denominator).  Errors on even denominators.
    pub fn reduce_mod_2pow(&self, x: &BigRational, n: u32) -> Result<u128> {
        let modulus = BigInt::one() << n;
        let den = x.denom();
        if (den % BigInt::from(2)).is_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "{x} has an even denominator; not 2-integral"
            )));
        }
        // den^-1 mod 2^n by Euler: den^(2^(n-1) - 1).
        let mut inv = BigInt::one();
        let mut base = den.mod_floor_pos(&modulus);
        let mut e = (BigInt::one() << (n - 1)) - BigInt::one();
        while e > BigInt::zero() {
            if (&e % BigInt::from(2)).is_one() {
                inv = (&inv * &base) % &modulus;
            }
            base = (&base * &base) % &modulus;
            e >>= 1;
        }
        let r = (x.numer().mod_floor_pos(&modulus) * inv) % &modulus;
        let digits = r.to_u64_digits().1;
        let lo = digits.first().copied().unwrap_or(0) as u128;
        let hi = digits.get(1).copied().unwrap_or(0) as u128;
        Ok(lo | (hi << 64))
    }
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl Ring for RationalField {
    type Element = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn try_invert(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NotAUnit("0 in Q".into()));
        }
        Ok(a.recip())
    }

    fn display(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_reduction() {
        let q = RationalField;
        // 1/3 = 3^-1; 3 * 2731 = 8193 = 2*4096 + 1, so 1/3 = 2731 mod 2^12
        let third = q.from_ratio(1, 3);
        assert_eq!(q.reduce_mod_2pow(&third, 12).unwrap(), 2731);
        let x = q.from_ratio(-7, 5);
        let r = q.reduce_mod_2pow(&x, 10).unwrap();
        // 5 * r = -7 mod 2^10
        assert_eq!((5 * r) % 1024, (1024 * 5 - 7) % 1024);
        assert!(q.reduce_mod_2pow(&q.from_ratio(1, 2), 8).is_err());
    }

    #[test]
    fn valuation() {
        let q = RationalField;
        assert_eq!(q.v2(&q.from_ratio(12, 5)), Some(2));
        assert_eq!(q.v2(&q.from_ratio(3, 8)), Some(-3));
        assert_eq!(q.v2(&q.zero()), None);
    }
}
