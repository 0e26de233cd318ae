//! Sparse multivariate power series truncated by total degree.
//!
//! A series carries its coefficient ring, its variable count and its cap
//! `D`; monomials of total degree `>= D` are discarded by every operation.
//! Binary operations insist on identical contexts and fail loudly
//! otherwise, so precision can never silently mix.
//!
//! Besides ring arithmetic this module provides the handful of series
//! primitives the explicit formulas need: substitution, reversal of a
//! univariate series, inversion of units, square roots by Newton iteration
//! (wherever 2 is invertible), formal derivative and integral, and the
//! fixed-point solver for the Weierstrass chart equation
//! `w = z^3 - a1 z w - a3 w^2`.

use crate::error::{Error, Result};
use crate::rings::Ring;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    nvars: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, R::Element>,
}

fn total_degree(mono: &[u32]) -> u32 {
    mono.iter().sum()
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(ring: R, nvars: usize, cap: u32) -> Self {
        assert!(nvars >= 1, "series needs at least one variable");
        assert!(cap >= 1, "cap must be positive");
        TruncatedSeries {
            ring,
            nvars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, cap: u32, value: R::Element) -> Self {
        let mut s = Self::zero(ring, nvars, cap);
        s.add_term(vec![0; nvars], value);
        s
    }

    pub fn one(ring: R, nvars: usize, cap: u32) -> Self {
        let v = ring.one();
        Self::constant(ring, nvars, cap, v)
    }

    /// The `i`-th variable as a series.
    pub fn variable(ring: R, nvars: usize, cap: u32, i: usize) -> Self {
        assert!(i < nvars);
        let mut s = Self::zero(ring.clone(), nvars, cap);
        if 1 < cap {
            let mut mono = vec![0; nvars];
            mono[i] = 1;
            s.add_term(mono, ring.one());
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total degree of a nonzero term, if any.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| total_degree(m)).min()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R::Element)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u32]) -> R::Element {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Coefficient of `z^k` in a univariate series.
    pub fn coeff1(&self, k: u32) -> R::Element {
        assert_eq!(self.nvars, 1);
        self.coeff(&[k])
    }

    /// Insert `value` at `mono`, adding to anything already there and
    /// dropping the entry if the sum vanishes.
    pub fn add_term(&mut self, mono: Vec<u32>, value: R::Element) {
        assert_eq!(mono.len(), self.nvars, "monomial arity mismatch");
        if total_degree(&mono) >= self.cap || self.ring.is_zero(&value) {
            return;
        }
        let updated = match self.terms.get(&mono) {
            Some(old) => self.ring.add(old, &value),
            None => value,
        };
        if self.ring.is_zero(&updated) {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, updated);
        }
    }

    fn check_context(&self, other: &Self, op: &str) -> Result<()> {
        if self.ring != other.ring || self.nvars != other.nvars || self.cap != other.cap {
            return Err(Error::MismatchedPrecision(format!(
                "{op}: ({} vars, cap {}) vs ({} vars, cap {})",
                self.nvars, self.cap, other.nvars, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "add")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn scale(&self, k: &R::Element) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, k));
        }
        out
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&self.ring.from_i64(k))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other, "mul")?;
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap);
        for (m1, c1) in &self.terms {
            let d1 = total_degree(m1);
            for (m2, c2) in &other.terms {
                if d1 + total_degree(m2) >= self.cap {
                    continue;
                }
                let mono: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(mono, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.ring.clone(), self.nvars, self.cap);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute `inners[i]` for variable `i`.  Every inner must have zero
    /// constant term and all inners must share one context.
    pub fn compose(&self, inners: &[Self]) -> Result<Self> {
        if inners.len() != self.nvars {
            return Err(Error::MismatchedPrecision(format!(
                "compose: outer has {} vars but {} inner series given",
                self.nvars,
                inners.len()
            )));
        }
        let first = &inners[0];
        for inner in inners {
            first.check_context(inner, "compose inners")?;
            if inner.ring != self.ring {
                return Err(Error::MismatchedPrecision(
                    "compose: coefficient rings differ".into(),
                ));
            }
            if !self.ring.is_zero(&inner.coeff(&vec![0; inner.nvars])) {
                return Err(Error::NonzeroConstantTerm("compose inner series".into()));
            }
        }
        let (nv, cap) = (first.nvars, first.cap);
        // Cache powers of each inner up to the largest exponent that occurs.
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, e) in m.iter().enumerate() {
                max_exp[i] = max_exp[i].max(*e);
            }
        }
        let mut pows: Vec<Vec<Self>> = Vec::with_capacity(self.nvars);
        for (i, inner) in inners.iter().enumerate() {
            let mut v = vec![Self::one(self.ring.clone(), nv, cap)];
            for e in 1..=max_exp[i] {
                let next = v[e as usize - 1].mul(inner)?;
                v.push(next);
            }
            pows.push(v);
        }
        let mut out = Self::zero(self.ring.clone(), nv, cap);
        for (m, c) in &self.terms {
            if total_degree(m) >= cap {
                continue;
            }
            let mut prod = Self::one(self.ring.clone(), nv, cap);
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    prod = prod.mul(&pows[i][*e as usize])?;
                }
            }
            out = out.add(&prod.scale(c))?;
        }
        Ok(out)
    }

    /// Compositional inverse of a univariate series `a1 z + a2 z^2 + ...`
    /// with `a1` a unit: returns `g` with `self(g(z)) = z`.
    pub fn reverse(&self) -> Result<Self> {
        assert_eq!(self.nvars, 1, "reverse is univariate");
        if !self.ring.is_zero(&self.coeff(&[0])) {
            return Err(Error::NotReversible("constant term is nonzero".into()));
        }
        let a1 = self.coeff(&[1]);
        let a1_inv = self
            .ring
            .try_invert(&a1)
            .map_err(|_| Error::NotReversible("linear coefficient is not a unit".into()))?;
        let mut g = Self::zero(self.ring.clone(), 1, self.cap);
        g.add_term(vec![1], a1_inv.clone());
        for d in 2..self.cap {
            let err = self.compose(std::slice::from_ref(&g))?.coeff(&[d]);
            if !self.ring.is_zero(&err) {
                g.add_term(vec![d], self.ring.neg(&self.ring.mul(&err, &a1_inv)));
            }
        }
        Ok(g)
    }

    /// Inverse of a series whose constant term is a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let a0 = self.coeff(&vec![0; self.nvars]);
        let a0_inv = self.ring.try_invert(&a0).map_err(|e| match e {
            Error::NotAUnit(s) => Error::NotAUnit(format!("series constant term: {s}")),
            other => other,
        })?;
        // 1/a = a0^-1 (1 + r + r^2 + ...) with r = 1 - a/a0.
        let one = Self::one(self.ring.clone(), self.nvars, self.cap);
        let r = one.sub(&self.scale(&a0_inv))?;
        let mut acc = one.clone();
        let mut p = one;
        for _ in 1..self.cap {
            p = p.mul(&r)?;
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
        }
        Ok(acc.scale(&a0_inv))
    }

    /// Square root of a series with constant term 1, by Newton iteration
    /// `y <- (y + a/y)/2`.  Needs 2 invertible in the coefficient ring.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let a0 = self.coeff(&vec![0; self.nvars]);
        if a0 != self.ring.one() {
            return Err(Error::BadLeadingTerm(format!(
                "sqrt needs constant term 1, found {}",
                self.ring.display(&a0)
            )));
        }
        let half = self
            .ring
            .try_invert(&self.ring.from_i64(2))
            .map_err(|_| Error::TwoNotInvertible)?;
        let mut y = Self::one(self.ring.clone(), self.nvars, self.cap);
        let steps = 32 - self.cap.leading_zeros() + 1;
        for _ in 0..steps {
            let y_inv = y.invert_unit()?;
            y = y.add(&self.mul(&y_inv)?)?.scale(&half);
        }
        Ok(y)
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap);
        for (m, c) in &self.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[var] = e - 1;
            out.add_term(mono, self.ring.mul_i64(c, i64::from(e)));
        }
        out
    }

    /// Formal integral in variable `var` (constant of integration 0).
    /// Divides by `e + 1`, so the ring must invert the integers up to the
    /// cap.  The top slice of degrees is lost to truncation, as usual.
    pub fn integrate(&self, var: usize) -> Result<Self> {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap);
        for (m, c) in &self.terms {
            let e = m[var];
            let inv = self
                .ring
                .try_invert(&self.ring.from_i64(i64::from(e) + 1))?;
            let mut mono = m.clone();
            mono[var] = e + 1;
            out.add_term(mono, self.ring.mul(c, &inv));
        }
        Ok(out)
    }

    /// Divide by variable `var`.  Every monomial must contain it; the cap
    /// drops by one because nothing is known about the old top degree.
    pub fn div_var(&self, var: usize) -> Result<Self> {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.ring.clone(), self.nvars, self.cap - 1);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                return Err(Error::BadLeadingTerm(format!(
                    "div_var: monomial {m:?} has no factor of variable {var}"
                )));
            }
            let mut mono = m.clone();
            mono[var] -= 1;
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }

    /// Lower the cap, discarding any terms at or above it.
    pub fn truncate(&self, new_cap: u32) -> Self {
        assert!(new_cap <= self.cap, "cannot extend a truncated series");
        let mut out = Self::zero(self.ring.clone(), self.nvars, new_cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Re-home a univariate series as `var` inside a wider variable set.
    pub fn embed(&self, nvars: usize, var: usize) -> Self {
        assert_eq!(self.nvars, 1);
        assert!(var < nvars);
        let mut out = Self::zero(self.ring.clone(), nvars, self.cap);
        for (m, c) in &self.terms {
            let mut mono = vec![0; nvars];
            mono[var] = m[0];
            out.terms.insert(mono, c.clone());
        }
        out
    }

    /// Apply a coefficient map into another ring (a ring homomorphism for
    /// the result to mean anything).
    pub fn map_coeffs<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Element) -> S::Element,
    ) -> TruncatedSeries<S> {
        let mut out = TruncatedSeries::zero(target, self.nvars, self.cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// First monomial (in lexicographic order) where the two series differ,
    /// with both coefficients rendered.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<u32>, String, String)> {
        let monos: std::collections::BTreeSet<&Vec<u32>> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for m in monos {
            let a = self.coeff(m);
            let b = other.coeff(m);
            if a != b {
                return Some((m.clone(), self.ring.display(&a), self.ring.display(&b)));
            }
        }
        None
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| (total_degree(m), (*m).clone()));
        for (m, c) in items {
            let mut factors = Vec::new();
            for (i, e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{e}", names[i])),
                }
            }
            let cs = self.ring.display(c);
            if factors.is_empty() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(factors.join("*"));
            } else {
                let cs = if cs.contains('+') || (cs.contains('-') && !cs.starts_with('-')) {
                    format!("({cs})")
                } else {
                    cs
                };
                parts.push(format!("{cs}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }

    pub fn display(&self) -> String {
        const NAMES: [&str; 6] = ["x", "y", "z", "s", "t", "v"];
        self.display_with(&NAMES[..self.nvars.min(6)])
    }
}

/// Solve `w = z^3 - a1 z w - a3 w^2` for the unique power series solution
/// `w(z) = z^3 + ...` by fixed-point iteration; each pass extends the
/// correct prefix by at least one degree.
pub fn solve_implicit_w<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    cap: u32,
) -> Result<TruncatedSeries<R>> {
    let z3 = {
        let mut s = TruncatedSeries::zero(ring.clone(), 1, cap);
        s.add_term(vec![3], ring.one());
        s
    };
    let mut w = z3.clone();
    let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
    for _ in 0..cap {
        let t1 = z.mul(&w)?.scale(a1);
        let t2 = w.mul(&w)?.scale(a3);
        let next = z3.sub(&t1)?.sub(&t2)?;
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

/// Residual `w + a1 z w + a3 w^2 - z^3` of a claimed chart solution.
pub fn implicit_w_residual<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    w: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>> {
    let cap = w.cap();
    let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
    let z3 = z.pow(3)?;
    w.add(&z.mul(w)?.scale(a1))?
        .add(&w.mul(w)?.scale(a3))?
        .sub(&z3)
}
