//! The deformation base `E0 = W(F4)[[u1]]`, truncated at `u1^m`.
//!
//! Elements are coefficient vectors of length `m`.  Inversion works whenever
//! the constant term is a Witt unit, which covers every denominator that
//! appears in the explicit stabilizer formulas (`u1 - 1`, `3`, `t0`, ...).

use super::{F4Element, Ring, WittElement, WittRing};
use crate::error::{Error, Result};

/// `W(F4)[[u1]] / (2^n, u1^m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct E0Ring {
    pub witt: WittRing,
    m: u32,
}

/// Coefficients of `u1^0 .. u1^(m-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0Element {
    pub c: Vec<WittElement>,
}

impl E0Ring {
    pub fn new(witt: WittRing, m: u32) -> Self {
        assert!(m >= 1, "u1-order must be at least 1");
        E0Ring { witt, m }
    }

    /// Convenience constructor from the two precision parameters.
    pub fn with_precision(n: u32, m: u32) -> Self {
        E0Ring::new(WittRing::new(n), m)
    }

    pub fn u1_order(&self) -> u32 {
        self.m
    }

    pub fn from_witt(&self, w: WittElement) -> E0Element {
        let mut c = vec![self.witt.zero(); self.m as usize];
        c[0] = w;
        E0Element { c }
    }

    /// The deformation parameter `u1`.
    pub fn u1(&self) -> E0Element {
        let mut c = vec![self.witt.zero(); self.m as usize];
        if self.m > 1 {
            c[1] = self.witt.one();
        }
        E0Element { c }
    }

    /// The cube root of unity, as a constant.
    pub fn omega(&self) -> E0Element {
        self.from_witt(self.witt.omega())
    }

    pub fn from_coeffs(&self, coeffs: &[WittElement]) -> E0Element {
        let mut c = vec![self.witt.zero(); self.m as usize];
        for (i, w) in coeffs.iter().enumerate().take(self.m as usize) {
            c[i] = *w;
        }
        E0Element { c }
    }

    pub fn coeff(&self, e: &E0Element, k: u32) -> WittElement {
        e.c.get(k as usize)
            .copied()
            .unwrap_or_else(|| self.witt.zero())
    }

    /// Coefficientwise conjugation; the Frobenius fixes `u1`.
    pub fn frobenius(&self, e: &E0Element) -> E0Element {
        E0Element {
            c: e.c.iter().map(|w| self.witt.conj(w)).collect(),
        }
    }

    /// Substitute `u1 -> v` by Horner evaluation.  This is exact when `e`
    /// is a polynomial of degree `< m` or when `v` has zero constant term;
    /// substituting a series with nonzero constant term into a genuinely
    /// truncated element mixes the `2`-adic and `u1`-adic directions and is
    /// the caller's responsibility.
    pub fn substitute(&self, e: &E0Element, v: &E0Element) -> E0Element {
        let mut acc = self.zero();
        for k in (0..self.m as usize).rev() {
            acc = self.mul(&acc, v);
            acc = self.add(&acc, &self.from_witt(e.c[k]));
        }
        acc
    }

    /// Reduction mod `(2, u1)` to `F4`.
    pub fn reduce_residue(&self, e: &E0Element) -> F4Element {
        self.witt.reduce_mod2(&e.c[0])
    }

    /// Reduction mod 2 to a truncated polynomial over `F4`.
    pub fn reduce_mod2(&self, e: &E0Element) -> Vec<F4Element> {
        e.c.iter().map(|w| self.witt.reduce_mod2(w)).collect()
    }

    /// Evaluate at `u1 = 0`, i.e. the constant coefficient.
    pub fn constant_term(&self, e: &E0Element) -> WittElement {
        e.c[0]
    }

    /// Reinterpret into a context of (possibly) smaller precision.
    pub fn reinterpret(&self, e: &E0Element, target: &E0Ring) -> E0Element {
        let mut c = vec![target.witt.zero(); target.m as usize];
        for (slot, coeff) in c.iter_mut().zip(&e.c) {
            *slot = self.witt.reinterpret(coeff, &target.witt);
        }
        E0Element { c }
    }

    fn assert_len(&self, e: &E0Element) {
        debug_assert_eq!(
            e.c.len(),
            self.m as usize,
            "element from a different u1-order"
        );
    }
}

impl Ring for E0Ring {
    type Element = E0Element;

    fn zero(&self) -> E0Element {
        E0Element {
            c: vec![self.witt.zero(); self.m as usize],
        }
    }

    fn one(&self) -> E0Element {
        self.from_witt(self.witt.one())
    }

    fn add(&self, a: &E0Element, b: &E0Element) -> E0Element {
        self.assert_len(a);
        self.assert_len(b);
        E0Element {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.witt.add(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &E0Element) -> E0Element {
        E0Element {
            c: a.c.iter().map(|x| self.witt.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &E0Element, b: &E0Element) -> E0Element {
        self.assert_len(a);
        self.assert_len(b);
        let m = self.m as usize;
        let mut c = vec![self.witt.zero(); m];
        for i in 0..m {
            if self.witt.is_zero(&a.c[i]) {
                continue;
            }
            for j in 0..m - i {
                if self.witt.is_zero(&b.c[j]) {
                    continue;
                }
                c[i + j] = self.witt.add(&c[i + j], &self.witt.mul(&a.c[i], &b.c[j]));
            }
        }
        E0Element { c }
    }

    fn is_zero(&self, a: &E0Element) -> bool {
        a.c.iter().all(|x| self.witt.is_zero(x))
    }

    fn from_i64(&self, n: i64) -> E0Element {
        self.from_witt(self.witt.from_i64(n))
    }

    // Power series inversion: b0 = a0^-1, then
    // b_k = -a0^-1 * sum_{j=1..k} a_j b_{k-j}.
    fn try_invert(&self, a: &E0Element) -> Result<E0Element> {
        self.assert_len(a);
        let a0inv = self.witt.try_invert(&a.c[0]).map_err(|_| {
            Error::NotAUnit(format!(
                "constant term {} is not a unit of W(F4)",
                self.witt.display(&a.c[0])
            ))
        })?;
        let m = self.m as usize;
        let mut b = vec![self.witt.zero(); m];
        b[0] = a0inv;
        for k in 1..m {
            let mut s = self.witt.zero();
            for j in 1..=k {
                s = self.witt.add(&s, &self.witt.mul(&a.c[j], &b[k - j]));
            }
            b[k] = self.witt.neg(&self.witt.mul(&a0inv, &s));
        }
        Ok(E0Element { c: b })
    }

    fn display(&self, a: &E0Element) -> String {
        let mut parts = Vec::new();
        for (k, w) in a.c.iter().enumerate() {
            if self.witt.is_zero(w) {
                continue;
            }
            let cs = self.witt.display(w);
            let needs_parens = cs.contains('+') || (cs.contains('-') && !cs.starts_with('-'));
            let cs = if needs_parens { format!("({cs})") } else { cs };
            parts.push(match k {
                0 => cs,
                1 => format!("{cs}*u1"),
                _ => format!("{cs}*u1^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
