//! The cyclotomic field `Q(zeta)` with `zeta` a primitive 12th root of
//! unity, minimal polynomial `zeta^4 - zeta^2 + 1`.
//!
//! It contains `zeta3 = zeta^4 = zeta^2 - 1` and `zeta6 = zeta^2`, the
//! constants that appear when a q-expansion variable is shifted by
//! `2*pi*i/3`.  Inversion goes through the Galois conjugates: the group of
//! `Q(zeta)/Q` is `(Z/12)^* = {1, 5, 7, 11}` acting by `zeta -> zeta^k`.

use super::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycloField;

/// Coordinates over the power basis `1, zeta, zeta^2, zeta^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRational {
    pub c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl CycloField {
    pub fn from_rational(&self, q: BigRational) -> CycloRational {
        CycloRational {
            c: [
                q,
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> CycloRational {
        self.from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The chosen primitive 12th root of unity.
    pub fn zeta12(&self) -> CycloRational {
        CycloRational {
            c: [
                BigRational::zero(),
                BigRational::one(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    /// `zeta3 = zeta^4 = zeta^2 - 1`, a primitive cube root of unity.
    pub fn zeta3(&self) -> CycloRational {
        CycloRational {
            c: [rat(-1), rat(0), rat(1), rat(0)],
        }
    }

    /// `zeta6 = zeta^2`, a primitive sixth root of unity.
    pub fn zeta6(&self) -> CycloRational {
        CycloRational {
            c: [rat(0), rat(0), rat(1), rat(0)],
        }
    }

    /// Galois map `zeta -> zeta^k` for `k` coprime to 12.
    pub fn galois(&self, x: &CycloRational, k: u32) -> CycloRational {
        assert!(matches!(k % 12, 1 | 5 | 7 | 11), "not a unit mod 12: {k}");
        // Images of the basis powers zeta^(i*k), reduced.
        let mut out = self.from_rational(x.c[0].clone());
        let z = self.zeta_power((k % 12) as usize);
        let mut p = self.from_rational(BigRational::one());
        for i in 1..4 {
            p = self.mul(&p, &z);
            let term = self.scale(&p, &x.c[i]);
            out = self.add(&out, &term);
        }
        out
    }

    /// `zeta^e` for `0 <= e < 12`, reduced to the power basis.
    fn zeta_power(&self, e: usize) -> CycloRational {
        // zeta^6 = -1, and zeta^4 = zeta^2 - 1, zeta^5 = zeta^3 - zeta.
        let table: [[i64; 4]; 12] = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [-1, 0, 1, 0],
            [0, -1, 0, 1],
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, -1, 0],
            [0, 0, 0, -1],
            [1, 0, -1, 0],
            [0, 1, 0, -1],
        ];
        let t = &table[e];
        CycloRational {
            c: [rat(t[0]), rat(t[1]), rat(t[2]), rat(t[3])],
        }
    }

    pub fn scale(&self, x: &CycloRational, q: &BigRational) -> CycloRational {
        CycloRational {
            c: std::array::from_fn(|i| &x.c[i] * q),
        }
    }

    /// Whether the element lies in `Q`.
    pub fn is_rational(&self, x: &CycloRational) -> bool {
        x.c[1].is_zero() && x.c[2].is_zero() && x.c[3].is_zero()
    }

    pub fn to_rational(&self, x: &CycloRational) -> Option<BigRational> {
        if self.is_rational(x) {
            Some(x.c[0].clone())
        } else {
            None
        }
    }
}

impl Ring for CycloField {
    type Element = CycloRational;

    fn zero(&self) -> CycloRational {
        CycloRational {
            c: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    fn one(&self) -> CycloRational {
        self.from_rational(BigRational::one())
    }

    fn add(&self, a: &CycloRational, b: &CycloRational) -> CycloRational {
        CycloRational {
            c: std::array::from_fn(|i| &a.c[i] + &b.c[i]),
        }
    }

    fn neg(&self, a: &CycloRational) -> CycloRational {
        CycloRational {
            c: std::array::from_fn(|i| -&a.c[i]),
        }
    }

    fn mul(&self, a: &CycloRational, b: &CycloRational) -> CycloRational {
        // Multiply into powers 0..6, then fold with zeta^4 = zeta^2 - 1,
        // zeta^5 = zeta^3 - zeta, zeta^6 = -1.
        let mut raw: [BigRational; 7] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            if a.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b.c[j].is_zero() {
                    continue;
                }
                raw[i + j] += &a.c[i] * &b.c[j];
            }
        }
        let mut c: [BigRational; 4] = std::array::from_fn(|i| raw[i].clone());
        c[2] += &raw[4];
        c[0] -= &raw[4];
        c[3] += &raw[5];
        c[1] -= &raw[5];
        c[0] -= &raw[6];
        CycloRational { c }
    }

    fn is_zero(&self, a: &CycloRational) -> bool {
        a.c.iter().all(|q| q.is_zero())
    }

    fn from_i64(&self, n: i64) -> CycloRational {
        self.from_rational(rat(n))
    }

    fn try_invert(&self, a: &CycloRational) -> Result<CycloRational> {
        if self.is_zero(a) {
            return Err(Error::NotAUnit("0 in Q(zeta12)".into()));
        }
        let p = self.mul(
            &self.galois(a, 5),
            &self.mul(&self.galois(a, 7), &self.galois(a, 11)),
        );
        let norm = self.mul(a, &p);
        let nq = self
            .to_rational(&norm)
            .expect("field norm landed outside Q; reduction table is broken");
        assert!(!nq.is_zero(), "zero norm for a nonzero field element");
        Ok(self.scale(&p, &nq.recip()))
    }

    fn display(&self, a: &CycloRational) -> String {
        let mut parts = Vec::new();
        for (i, q) in a.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => q.to_string(),
                1 => format!("({q})z"),
                _ => format!("({q})z^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_orders() {
        let f = CycloField;
        assert_eq!(f.pow(&f.zeta12(), 12), f.one());
        assert_ne!(f.pow(&f.zeta12(), 6), f.one());
        assert_eq!(f.pow(&f.zeta3(), 3), f.one());
        assert_ne!(f.zeta3(), f.one());
        assert_eq!(f.pow(&f.zeta6(), 6), f.one());
        assert_eq!(f.pow(&f.zeta6(), 3), f.from_i64(-1));
        // zeta6 = -zeta3^2 and zeta3 = zeta6^2
        assert_eq!(f.pow(&f.zeta6(), 2), f.zeta3());
    }

    #[test]
    fn inversion() {
        let f = CycloField;
        let x = f.add(&f.zeta12(), &f.from_ratio(3, 2));
        let inv = f.try_invert(&x).unwrap();
        assert_eq!(f.mul(&x, &inv), f.one());
        let z3inv = f.try_invert(&f.zeta3()).unwrap();
        assert_eq!(z3inv, f.pow(&f.zeta3(), 2));
    }

    #[test]
    fn galois_fixes_rationals_and_is_multiplicative() {
        let f = CycloField;
        let x = f.add(&f.zeta12(), &f.from_i64(2));
        let y = f.sub(&f.zeta6(), &f.from_ratio(1, 3));
        for k in [5u32, 7, 11] {
            assert_eq!(f.galois(&f.from_ratio(7, 3), k), f.from_ratio(7, 3));
            assert_eq!(
                f.galois(&f.mul(&x, &y), k),
                f.mul(&f.galois(&x, k), &f.galois(&y, k))
            );
        }
    }
}
