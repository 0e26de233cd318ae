//! The 2-adic quaternion order `Z_2[w]<S>` with `S^2 = 2` and `S a = a* S`,
//! where `a*` is the Galois conjugate on `W = Z_2[w]`.
//!
//! Elements are `a + bS` with `a, b` Witt vectors; multiplication is
//! `(a + bS)(c + dS) = (ac + 2 b d*) + (ad + b c*) S`, the reduced norm is
//! `det(a + bS) = a a* - 2 b b*`, and an element is a unit exactly when
//! its norm is odd.
//!
//! The unit group contains a distinguished anticommuting triple
//! `i, j, k` with `i^2 = j^2 = k^2 = -1`, `ij = k`, cyclically permuted
//! by conjugation with `w`, and satisfying `i + j + k = -1 - 2w`.  Its
//! scalar part is forced to `a = -(1+2w)/3` and the `S`-part has norm
//! `-1/3`, solved to full precision by Newton iteration.  Conjugating the
//! triple into the curve's automorphism matrices, determinants here match
//! determinants in GL_2(F_3).

use crate::error::{Error, Result};
use crate::rings::{Ring, WittElement, WittRing};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quat {
    pub a: WittElement,
    pub b: WittElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuaternionOrder {
    pub witt: WittRing,
}

impl QuaternionOrder {
    pub fn new(witt: WittRing) -> Self {
        QuaternionOrder { witt }
    }

    pub fn element(&self, a: WittElement, b: WittElement) -> Quat {
        Quat { a, b }
    }

    pub fn scalar(&self, a: WittElement) -> Quat {
        Quat {
            a,
            b: self.witt.zero(),
        }
    }

    pub fn one(&self) -> Quat {
        self.scalar(self.witt.one())
    }

    pub fn omega(&self) -> Quat {
        self.scalar(self.witt.omega())
    }

    pub fn s(&self) -> Quat {
        Quat {
            a: self.witt.zero(),
            b: self.witt.one(),
        }
    }

    pub fn add(&self, p: &Quat, q: &Quat) -> Quat {
        Quat {
            a: self.witt.add(&p.a, &q.a),
            b: self.witt.add(&p.b, &q.b),
        }
    }

    pub fn neg(&self, p: &Quat) -> Quat {
        Quat {
            a: self.witt.neg(&p.a),
            b: self.witt.neg(&p.b),
        }
    }

    pub fn mul(&self, p: &Quat, q: &Quat) -> Quat {
        let w = &self.witt;
        let cross = w.mul_i64(&w.mul(&p.b, &w.conj(&q.b)), 2);
        Quat {
            a: w.add(&w.mul(&p.a, &q.a), &cross),
            b: w.add(&w.mul(&p.a, &q.b), &w.mul(&p.b, &w.conj(&q.a))),
        }
    }

    pub fn pow(&self, p: &Quat, k: u32) -> Quat {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Quaternion conjugate `a* - bS`; `q q~ = det(q)`.
    pub fn conj(&self, p: &Quat) -> Quat {
        Quat {
            a: self.witt.conj(&p.a),
            b: self.witt.neg(&p.b),
        }
    }

    pub fn trace(&self, p: &Quat) -> WittElement {
        self.witt.add(&p.a, &self.witt.conj(&p.a))
    }

    /// Reduced norm `a a* - 2 b b*`, a multiplicative map to the scalars.
    pub fn det(&self, p: &Quat) -> WittElement {
        let w = &self.witt;
        let na = w.mul(&p.a, &w.conj(&p.a));
        let nb = w.mul(&p.b, &w.conj(&p.b));
        w.sub(&na, &w.mul_i64(&nb, 2))
    }

    pub fn try_invert(&self, p: &Quat) -> Result<Quat> {
        let d = self.det(p);
        let inv = self.witt.try_invert(&d).map_err(|_| {
            Error::NotAUnit(format!("quaternion norm {} is even", self.witt.display(&d)))
        })?;
        let c = self.conj(p);
        Ok(Quat {
            a: self.witt.mul(&c.a, &inv),
            b: self.witt.mul(&c.b, &inv),
        })
    }

    /// Conjugation by the unit `w`: fixes scalars, multiplies the S-part
    /// by `w^2`.
    pub fn conj_by_omega(&self, p: &Quat) -> Quat {
        let w2 = self.witt.mul(&self.witt.omega(), &self.witt.omega());
        Quat {
            a: p.a,
            b: self.witt.mul(&w2, &p.b),
        }
    }

    /// The anticommuting triple `(i, j, k)`: `j, k` are the `w`-conjugates
    /// of `i`, `ij = k`, each squares to `-1`, and `i + j + k = -1 - 2w`.
    pub fn standard_triple(&self) -> Result<(Quat, Quat, Quat)> {
        let w = &self.witt;
        let third = w.try_invert(&w.element(3, 0))?;
        let a = w.mul(&w.element(-1, -2), &third);
        // S-part (x, 1) with norm x^2 - x + 1 = -1/3: Newton on
        // f(x) = x^2 - x + 4/3, whose derivative is odd.
        let c = w.mul(&w.element(4, 0), &third);
        let mut x = w.zero();
        for _ in 0..8 {
            let f = w.add(&w.sub(&w.mul(&x, &x), &x), &c);
            if w.is_zero(&f) {
                break;
            }
            let fp = w.sub(&w.mul_i64(&x, 2), &w.one());
            x = w.sub(&x, &w.mul(&f, &w.try_invert(&fp)?));
        }
        let b = w.add(&x, &w.mul(&w.omega(), &w.one()));
        let i = Quat { a, b };
        let j = self.conj_by_omega(&i);
        let k = self.conj_by_omega(&j);
        debug_assert_eq!(self.mul(&i, &j), k);
        debug_assert_eq!(self.mul(&i, &i), self.neg(&self.one()));
        Ok((i, j, k))
    }

    /// Units of order four with integer coordinates bounded by `bound`:
    /// solutions of `trace q = 0`, `det q = 1` in the box.
    pub fn find_order_four_units(&self, bound: i64) -> Vec<Quat> {
        let w = &self.witt;
        let mut found = Vec::new();
        let range = -bound..=bound;
        for a0 in range.clone() {
            for a1 in range.clone() {
                for b0 in range.clone() {
                    for b1 in range.clone() {
                        let q = Quat {
                            a: w.element(a0, a1),
                            b: w.element(b0, b1),
                        };
                        if w.is_zero(&self.trace(&q)) && self.det(&q) == w.one() {
                            found.push(q);
                        }
                    }
                }
            }
        }
        found.sort();
        found
    }

    /// Closure of a generating set of units under multiplication.
    pub fn generate(&self, gens: &[Quat]) -> BTreeSet<Quat> {
        let mut set = BTreeSet::new();
        set.insert(self.one());
        loop {
            let mut grew = false;
            let snapshot: Vec<Quat> = set.iter().copied().collect();
            for p in &snapshot {
                for g in gens {
                    if set.insert(self.mul(p, g)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    pub fn display(&self, p: &Quat) -> String {
        format!(
            "({}) + ({})S",
            self.witt.display(&p.a),
            self.witt.display(&p.b)
        )
    }
}
