//! Formal group laws, with the chord construction on a Weierstrass cubic.
//!
//! The cubic `y^2 + a1 xy + a3 y = x^3` is rewritten in the chart
//! `z = x/y, w = 1/y` as `w + a1 z w + a3 w^2 = z^3`, where the identity
//! sits at the origin and the curve is the graph of `w(z) = z^3 + ...`.
//! A line through `(z1, w(z1))` and `(z2, w(z2))` meets the cubic in a
//! third point whose coordinate is
//!
//! `z3 = a1*lam + a3*lam^2 - z1 - z2`,  `lam = (w(z1)-w(z2))/(z1-z2)`,
//!
//! the divided difference being computed without division via complete
//! homogeneous symmetric polynomials.  Negation is
//! `i(z) = -z/(1 + a1 z + a3 w(z))`, and the group law is `F = i(z3)`.
//!
//! Everything here is polynomial in `a1, a3` with integer coefficients,
//! so the construction commutes with arbitrary coefficient ring maps:
//! pushing a curve law forward along a homomorphism is done exactly by
//! rebuilding from the mapped curve parameters.
//!
//! An independent logarithm is provided for coefficient rings containing
//! the rationals: the invariant differential `dx/(2y + a1 x + a3)`,
//! expanded at the origin and normalized to leading coefficient 1, is
//! integrated and reversed.  Agreement of the two routes is a test.

use crate::error::{Error, Result};
use crate::rings::Ring;
use crate::series::{solve_implicit_w, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct FormalGroupLaw<R: Ring> {
    f: TruncatedSeries<R>,
}

impl<R: Ring> FormalGroupLaw<R> {
    /// Wrap a two-variable series, insisting on `F(z,0) = F(0,z) = z`.
    pub fn new(f: TruncatedSeries<R>) -> Self {
        assert_eq!(f.nvars(), 2, "a formal group law has two variables");
        let ring = f.ring().clone();
        for (m, c) in f.terms() {
            let ok = match (m[0], m[1]) {
                (1, 0) | (0, 1) => *c == ring.one(),
                (_, 0) | (0, _) => false,
                _ => true,
            };
            assert!(ok, "not unital: coefficient {} at {m:?}", ring.display(c));
        }
        assert_eq!(
            f.coeff(&[1, 0]),
            ring.one(),
            "not unital: missing linear term in the first variable"
        );
        assert_eq!(
            f.coeff(&[0, 1]),
            ring.one(),
            "not unital: missing linear term in the second variable"
        );
        FormalGroupLaw { f }
    }

    pub fn series(&self) -> &TruncatedSeries<R> {
        &self.f
    }

    pub fn ring(&self) -> &R {
        self.f.ring()
    }

    pub fn cap(&self) -> u32 {
        self.f.cap()
    }

    /// `F(p, q)` for two series in a common context.
    pub fn apply(
        &self,
        p: &TruncatedSeries<R>,
        q: &TruncatedSeries<R>,
    ) -> Result<TruncatedSeries<R>> {
        self.f.compose(&[p.clone(), q.clone()])
    }

    /// The inverse series `[-1](z)`, the unique root of `F(z, i(z)) = 0`,
    /// found by fixed-point refinement from `-z`.
    pub fn inverse_series(&self) -> Result<TruncatedSeries<R>> {
        let ring = self.ring().clone();
        let cap = self.cap();
        let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
        let mut g = z.neg();
        for _ in 0..cap {
            let err = self.apply(&z, &g)?;
            if err.is_zero() {
                return Ok(g);
            }
            g = g.sub(&err)?;
        }
        let err = self.apply(&z, &g)?;
        assert!(err.is_zero(), "inverse series iteration failed to converge");
        Ok(g)
    }

    /// The multiplication series `[n](z)` for any integer `n`.
    pub fn n_series(&self, n: i64) -> Result<TruncatedSeries<R>> {
        let ring = self.ring().clone();
        let cap = self.cap();
        let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
        if n < 0 {
            let pos = self.n_series(-n)?;
            return self.inverse_series()?.compose(&[pos]);
        }
        let mut acc = TruncatedSeries::zero(ring, 1, cap);
        for _ in 0..n {
            acc = self.apply(&z, &acc)?;
        }
        Ok(acc)
    }

    /// Push the law along a coefficient map.  Use only for maps that
    /// respect the truncations on both sides (reductions, conjugation);
    /// for a curve law composed with a general base change, rebuild from
    /// the mapped curve parameters instead.
    pub fn map_coeffs<S: Ring>(
        &self,
        target: S,
        map: impl Fn(&R::Element) -> S::Element,
    ) -> FormalGroupLaw<S> {
        FormalGroupLaw::new(self.f.map_coeffs(target, map))
    }

    /// First monomial where `phi(F(x,y))` and `G(phi(x), phi(y))` differ,
    /// or `None` when `phi` is a homomorphism `F -> G` to the cap.
    pub fn homomorphism_defect(
        &self,
        phi: &TruncatedSeries<R>,
        target: &FormalGroupLaw<R>,
    ) -> Result<Option<(Vec<u32>, String, String)>> {
        assert_eq!(phi.nvars(), 1, "a homomorphism is a one-variable series");
        let lhs = phi.compose(std::slice::from_ref(&self.f))?;
        let rhs = target.f.compose(&[phi.embed(2, 0), phi.embed(2, 1)])?;
        Ok(lhs.first_difference(&rhs))
    }

    /// The unique strict isomorphism `phi(z) = z + ...` with
    /// `phi(F(x,y)) = G(phi(x), phi(y))`, solved degree by degree.  Each
    /// degree needs a unit binomial coefficient to pin the new term down;
    /// if none exists the degree is reported as ambiguous (when the
    /// constraint is vacuous there) or as an obstruction.
    pub fn solve_strict_iso(&self, target: &FormalGroupLaw<R>) -> Result<TruncatedSeries<R>> {
        let ring = self.ring().clone();
        let cap = self.cap();
        let mut phi = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
        for d in 2..cap {
            let lhs = phi.compose(std::slice::from_ref(&self.f))?;
            let rhs = target.f.compose(&[phi.embed(2, 0), phi.embed(2, 1)])?;
            let defect = rhs.sub(&lhs)?;
            // Degree-d slice of the defect; adding c z^d to phi changes it
            // by c x^d + c y^d - c (x+y)^d.
            let mut rows: Vec<(u32, R::Element)> = Vec::new();
            for (m, c) in defect.terms() {
                if m[0] + m[1] != d {
                    continue;
                }
                if m[1] == 0 || m[0] == 0 {
                    return Err(Error::NotIsomorphic {
                        degree: d,
                        detail: format!(
                            "pure power defect {} at {m:?} cannot be matched",
                            ring.display(c)
                        ),
                    });
                }
                rows.push((m[0], c.clone()));
            }
            let mut pivot = None;
            for j in 1..d {
                if let Ok(inv) = ring.try_invert(&binomial_in(&ring, d, j)) {
                    pivot = Some((j, inv));
                    break;
                }
            }
            let c = match pivot {
                Some((j, inv)) => {
                    let r_j = rows
                        .iter()
                        .find(|(k, _)| *k == j)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(|| ring.zero());
                    ring.mul(&r_j, &inv)
                }
                None => {
                    if rows.is_empty() {
                        return Err(Error::AmbiguousSolution { degree: d });
                    }
                    return Err(Error::NotIsomorphic {
                        degree: d,
                        detail: "nonzero defect but no unit binomial coefficient to solve with"
                            .into(),
                    });
                }
            };
            // Verify c clears the whole degree-d slice.
            for j in 1..d {
                let want = ring.mul(&c, &binomial_in(&ring, d, j));
                let got = rows
                    .iter()
                    .find(|(k, _)| *k == j)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| ring.zero());
                if want != got {
                    return Err(Error::NotIsomorphic {
                        degree: d,
                        detail: format!(
                            "defect at x^{j} y^{} is {}, expected {}",
                            d - j,
                            ring.display(&got),
                            ring.display(&want)
                        ),
                    });
                }
            }
            phi.add_term(vec![d], c);
        }
        Ok(phi)
    }

    /// Logarithm `log(z) = z + ...` with `log(F(x,y)) = log(x) + log(y)`,
    /// from `log' = 1/(d2 F)(z, 0)`.  Needs the positive integers below
    /// the cap invertible.
    pub fn log(&self) -> Result<TruncatedSeries<R>> {
        let d2 = self.f.derivative(1);
        let mut at_y0 = TruncatedSeries::zero(self.ring().clone(), 1, self.cap());
        for (m, c) in d2.terms() {
            if m[1] == 0 {
                at_y0.add_term(vec![m[0]], c.clone());
            }
        }
        at_y0.invert_unit()?.integrate(0)
    }

    /// Exponential, the reverse of the logarithm.
    pub fn exp(&self) -> Result<TruncatedSeries<R>> {
        self.log()?.reverse()
    }
}

fn binomial_in<R: Ring>(ring: &R, n: u32, k: u32) -> R::Element {
    let mut num: i128 = 1;
    for i in 0..k {
        num = num * i128::from(n - i) / i128::from(i + 1);
    }
    ring.from_i64(i64::try_from(num).expect("binomial overflows i64"))
}

/// The group law of `y^2 + a1 xy + a3 y = x^3` by the chord construction.
/// Exact to the cap; coefficients are integer polynomials in `a1, a3`.
pub fn from_curve<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    cap: u32,
) -> Result<FormalGroupLaw<R>> {
    let w_big = solve_implicit_w(ring, a1, a3, cap + 1)?;
    // lam(z1,z2) = sum_k w_k h_{k-1}(z1,z2), the divided difference of w.
    let mut lam = TruncatedSeries::zero(ring.clone(), 2, cap);
    for (m, c) in w_big.terms() {
        let k = m[0];
        for i in 0..k {
            lam.add_term(vec![i, k - 1 - i], c.clone());
        }
    }
    let x = TruncatedSeries::variable(ring.clone(), 2, cap, 0);
    let y = TruncatedSeries::variable(ring.clone(), 2, cap, 1);
    let z3 = lam
        .scale(a1)
        .add(&lam.mul(&lam)?.scale(a3))?
        .sub(&x)?
        .sub(&y)?;
    let inv = negation_series(ring, a1, a3, cap)?;
    Ok(FormalGroupLaw::new(inv.compose(&[z3])?))
}

/// The negation series `i(z) = -z/(1 + a1 z + a3 w(z))` of the curve law.
pub fn negation_series<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    cap: u32,
) -> Result<TruncatedSeries<R>> {
    let w = solve_implicit_w(ring, a1, a3, cap)?;
    let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
    let den = TruncatedSeries::one(ring.clone(), 1, cap)
        .add(&z.scale(a1))?
        .add(&w.scale(a3))?;
    z.neg().mul(&den.invert_unit()?)
}

/// Logarithm of the curve law straight from the invariant differential
/// `dx/(2y + a1 x + a3)`, expanded in `z = x/y` and normalized to leading
/// coefficient 1.  Independent of the chord construction.
pub fn curve_log<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    cap: u32,
) -> Result<TruncatedSeries<R>> {
    let w = solve_implicit_w(ring, a1, a3, cap + 3)?;
    // b = w / z^3, a unit; y = z^-3 / b, x = z^-2 / b.
    let mut b = TruncatedSeries::zero(ring.clone(), 1, cap);
    for (m, c) in w.terms() {
        b.add_term(vec![m[0] - 3], c.clone());
    }
    let b_y = b.invert_unit()?;
    let z = TruncatedSeries::variable(ring.clone(), 1, cap, 0);
    // dx/dz = z^-3 (-2 b_y + z b_y'); 2y + a1 x + a3 = z^-3 (2 b_y + a1 z b_y + a3 z^3).
    let num = b_y.scale_i64(-2).add(&z.mul(&b_y.derivative(0))?)?;
    let mut den = b_y.scale_i64(2).add(&z.mul(&b_y)?.scale(a1))?;
    den.add_term(vec![3], a3.clone());
    let s = num.mul(&den.invert_unit()?)?;
    let lead = ring.try_invert(&s.coeff1(0))?;
    s.scale(&lead).integrate(0)
}

/// Curve law by the analytic route: `exp(log x + log y)`.  Needs the
/// integers below the cap invertible; used as an oracle against the
/// chord construction.
pub fn from_curve_via_log<R: Ring>(
    ring: &R,
    a1: &R::Element,
    a3: &R::Element,
    cap: u32,
) -> Result<FormalGroupLaw<R>> {
    let log = curve_log(ring, a1, a3, cap)?;
    let exp = log.reverse()?;
    let sum = log.embed(2, 0).add(&log.embed(2, 1))?;
    Ok(FormalGroupLaw::new(exp.compose(&[sum])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{F4Field, RationalField, Z2Ring};
    use quickcheck::TestResult;
    use quickcheck_macros::quickcheck;

    fn additive<R: Ring>(ring: R, cap: u32) -> FormalGroupLaw<R> {
        let x = TruncatedSeries::variable(ring.clone(), 2, cap, 0);
        let y = TruncatedSeries::variable(ring, 2, cap, 1);
        FormalGroupLaw::new(x.add(&y).unwrap())
    }

    fn multiplicative<R: Ring>(ring: R, cap: u32) -> FormalGroupLaw<R> {
        let x = TruncatedSeries::variable(ring.clone(), 2, cap, 0);
        let y = TruncatedSeries::variable(ring, 2, cap, 1);
        let f = x.add(&y).unwrap().add(&x.mul(&y).unwrap()).unwrap();
        FormalGroupLaw::new(f)
    }

    fn assoc_defect<R: Ring>(g: &FormalGroupLaw<R>) -> Option<(Vec<u32>, String, String)> {
        let ring = g.ring().clone();
        let cap = g.cap();
        let vars: Vec<_> = (0..3)
            .map(|i| TruncatedSeries::variable(ring.clone(), 3, cap, i))
            .collect();
        let f3 = |p: &TruncatedSeries<R>, q: &TruncatedSeries<R>| {
            g.series().compose(&[p.clone(), q.clone()]).unwrap()
        };
        let lhs = f3(&f3(&vars[0], &vars[1]), &vars[2]);
        let rhs = f3(&vars[0], &f3(&vars[1], &vars[2]));
        lhs.first_difference(&rhs)
    }

    #[test]
    fn multiplicative_n_series() {
        let r = RationalField;
        let g = multiplicative(r, 6);
        // [3](z) = (1+z)^3 - 1; [-1](z) = (1+z)^{-1} - 1.
        let three = g.n_series(3).unwrap();
        assert_eq!(three.coeff1(1), r.from_i64(3));
        assert_eq!(three.coeff1(2), r.from_i64(3));
        assert_eq!(three.coeff1(3), r.from_i64(1));
        assert_eq!(three.coeff1(4), r.zero());
        let inv = g.n_series(-1).unwrap();
        for k in 1..6 {
            assert_eq!(inv.coeff1(k), r.from_i64(if k % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn chord_law_is_associative_and_matches_log_route() {
        let r = RationalField;
        let g = from_curve(&r, &r.zero(), &r.one(), 8).unwrap();
        assert!(assoc_defect(&g).is_none());
        let h = from_curve_via_log(&r, &r.zero(), &r.one(), 8).unwrap();
        assert_eq!(g.series(), h.series(), "chord and log/exp routes disagree");
        // log' * d2F(z,0) = 1 round trip
        let log = g.log().unwrap();
        let exp = g.exp().unwrap();
        let z = TruncatedSeries::variable(r, 1, 8, 0);
        assert_eq!(log.compose(&[exp]).unwrap(), z);
    }

    #[test]
    fn chord_law_commutes_with_mod2_reduction() {
        let q = RationalField;
        let f4 = F4Field;
        let over_q = from_curve(&q, &q.zero(), &q.one(), 10).unwrap();
        let reduced = over_q.map_coeffs(f4, |c| {
            let bit = q.reduce_mod_2pow(c, 1).expect("integral coefficient");
            if bit == 1 {
                crate::rings::F4Element::ONE
            } else {
                crate::rings::F4Element::ZERO
            }
        });
        let direct = from_curve(&f4, &f4.zero(), &f4.one(), 10).unwrap();
        assert_eq!(reduced.series(), direct.series());
    }

    #[test]
    fn supersingular_two_series_has_height_two() {
        let f4 = F4Field;
        let g = from_curve(&f4, &f4.zero(), &f4.one(), 10).unwrap();
        let two = g.n_series(2).unwrap();
        assert_eq!(two.valuation(), Some(4), "[2] must start in degree 4");
        assert!(f4.try_invert(&two.coeff1(4)).is_ok());
    }

    #[test]
    fn strict_iso_additive_to_multiplicative_is_exp_minus_one() {
        let r = RationalField;
        let a = additive(r, 6);
        let m = multiplicative(r, 6);
        let phi = a.solve_strict_iso(&m).unwrap();
        assert_eq!(phi.coeff1(1), r.one());
        assert_eq!(phi.coeff1(2), r.from_ratio(1, 2));
        assert_eq!(phi.coeff1(3), r.from_ratio(1, 6));
        assert_eq!(phi.coeff1(4), r.from_ratio(1, 24));
        assert!(a.homomorphism_defect(&phi, &m).unwrap().is_none());
    }

    #[test]
    fn strict_iso_obstructions_are_reported() {
        let f4 = F4Field;
        let curve = from_curve(&f4, &f4.zero(), &f4.one(), 8).unwrap();
        match multiplicative(f4, 8).solve_strict_iso(&curve) {
            Err(Error::NotIsomorphic { degree: 2, .. }) => {}
            other => panic!("expected an obstruction in degree 2, got {other:?}"),
        }
        match additive(f4, 8).solve_strict_iso(&curve) {
            Err(Error::AmbiguousSolution { degree: 2 }) => {}
            other => panic!("expected ambiguity in degree 2, got {other:?}"),
        }
        let z2 = Z2Ring::new(8);
        match additive(z2, 6).solve_strict_iso(&additive(z2, 6)) {
            Err(Error::AmbiguousSolution { degree: 2 }) => {}
            other => panic!("expected ambiguity in degree 2, got {other:?}"),
        }
    }

    #[quickcheck]
    fn chord_law_group_axioms(a1: i8, a3: i8) -> TestResult {
        let r = RationalField;
        let (a1, a3) = (r.from_i64(i64::from(a1)), r.from_i64(i64::from(a3)));
        let g = match from_curve(&r, &a1, &a3, 5) {
            Ok(g) => g,
            Err(_) => return TestResult::discard(),
        };
        if assoc_defect(&g).is_some() {
            return TestResult::failed();
        }
        let z = TruncatedSeries::variable(r, 1, 5, 0);
        let i = g.inverse_series().unwrap();
        TestResult::from_bool(g.apply(&z, &i).unwrap().is_zero())
    }
}
