//! 2-adic binomial calculus and cannibalistic classes.
//!
//! The binomial series `B_a(t) = sum C(a,n) t^n` with a 2-adic exponent
//! `a` satisfies the multiplicative functional equation
//!
//! `B(t1) B(t2) = B(t1 + t2 + t1 t2)`
//!
//! and is the unique series with constant term 1 and linear coefficient
//! `a` that does: comparing `t1^(n-1) t2` coefficients forces the
//! recurrence `n c_n = c_(n-1) (c_1 - n + 1)`.  Computing
//! `C(a,n) = a(a-1)...(a-n+1)/n!` costs `v2(n!)` bits of 2-adic
//! precision, so a series of length `d` built at precision `N` is exact
//! mod `2^(N - v2((d-1)!))`; every constructor here tracks that loss
//! and returns the series over the effective-precision ring.
//!
//! Distinct exponents stay distinct even mod 2: if `a = b + 2^s c` with
//! `c` odd, the quotient `B_a/B_b = (1 + t^(2^s))^c mod 2` first
//! deviates from 1 in degree exactly `2^s`.
//!
//! The K-theory class of a line bundle `L` with Euler class `x` is
//! `theta^q(L) = [q](x)/(qx) = (1 - (1-y)^q)/(qy)` in `y = vx`, the
//! multiplicative formal group's `q`-series divided by `qy`.  For the
//! spin bundle `L^2` the complexification of `theta^q(L^2)` has a
//! closed form in `w = 1 - y`,
//!
//! `(w^-q - w^q) / (q (w^-1 - w))`,
//!
//! and an independent route through the special-unitary reduction
//! `L^2 - 1 + (L-bar - L) = (1-L)^2 - (1-L)(1-L-bar)`, which turns the
//! class into `theta^q(L^2) theta^q(L-bar) / theta^q(L)`; both are
//! computed here over the rationals and compared.
//!
//! Over the deformation ring the complex class of the canonical line
//! bundle is the coordinate action divided by the coordinate,
//! `theta_C^g = (g.x)/x = sum t_i t0^-1 u^i x^i`.
//!
//! String-level identities are bookkeeping in a free abelian group on
//! opaque symbols: with `psi^g(r_U) = q0[g] r_U^det(g)` and
//! `psi^g(x) = thetaC[g] x`, the string Thom class `r_U x` gives
//!
//! `theta^g(re) = q0[g] r_U^(det(g)-1) thetaC[g]`,
//!
//! its complexified square `(theta^g)^2 = c(q0[g]) c(thetaC[g])
//! r^(det(g)-1)`, the torus restriction `r_K^(det(g)-1)`, and the
//! composition law `theta^(g nu) = psi^nu(theta^g) theta^nu` once the
//! difference classes compose by `q0[g nu] = psi[nu](q0[g])
//! q0[nu]^det(g)` and `thetaC[g nu] = psi[nu](thetaC[g]) thetaC[nu]`.
//!
//! Finally, the coefficients of `r^(d-1) (r^(2d) - 1)` in `r = 1 + t`
//! telescope to `C(3d-1, k) - C(d-1, k)`, the binomial difference that
//! pairs against the dual basis downstream; `d` ranges over odd
//! (determinant) values.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rings::{GradedRing, RationalField, Ring, Z2Ring};
use crate::series::TruncatedSeries;
use crate::stabilizer::StabilizerAction;

/// `v2(n!) = n - (number of binary ones of n)`, by Legendre's formula.
pub fn v2_factorial(n: u32) -> u32 {
    n - n.count_ones()
}

/// A series over `Z/2^N` whose coefficients are only trusted at a
/// reduced precision; `series` lives over the effective ring.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialSeries {
    pub ring: Z2Ring,
    pub series: TruncatedSeries<Z2Ring>,
}

impl BinomialSeries {
    pub fn effective_precision(&self) -> u32 {
        self.ring.precision()
    }
}

/// Effective-precision ring for a length-`cap` binomial expansion
/// starting from `z2`, or `PrecisionExhausted` if the factorial
/// valuation eats everything.
fn effective_ring(z2: &Z2Ring, cap: u32) -> Result<Z2Ring> {
    let loss = v2_factorial(cap.saturating_sub(1));
    if loss >= z2.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "cap {cap} loses v2(({})!) = {loss} of {} bits",
            cap - 1,
            z2.precision()
        )));
    }
    Ok(Z2Ring::new(z2.precision() - loss))
}

/// `B_alpha(t) = sum C(alpha,n) t^n` with `C(alpha,n)` formed as the
/// falling factorial over `n!`; exact over the returned effective ring.
pub fn binomial_series(z2: &Z2Ring, alpha: u128, cap: u32) -> Result<BinomialSeries> {
    let eff = effective_ring(z2, cap)?;
    let mut series = TruncatedSeries::zero(eff, 1, cap);
    series.add_term(vec![0], eff.one());
    // Falling factorial and n!, the latter split as 2^shift * odd.
    let mut falling = z2.one();
    let mut odd_factorial = z2.one();
    let mut shift = 0u32;
    for n in 1..cap {
        falling = z2.mul(&falling, &z2.sub(&alpha, &z2.from_i64(i64::from(n) - 1)));
        let v = crate::rings::v2(u128::from(n));
        shift += v;
        odd_factorial = z2.mul(&odd_factorial, &z2.from_i64(i64::from(n >> v)));
        let c = z2.mul(
            &z2.shr_exact(falling, shift)?,
            &z2.try_invert(&odd_factorial)?,
        );
        series.add_term(vec![n], z2.reinterpret(c, &eff));
    }
    Ok(BinomialSeries { ring: eff, series })
}

/// The unique functional-equation solution with linear coefficient
/// `alpha`, built degree by degree from the forced recurrence
/// `n c_n = c_(n-1) (alpha - n + 1)`; an oracle for [`binomial_series`].
pub fn solve_functional_equation(z2: &Z2Ring, alpha: u128, cap: u32) -> Result<BinomialSeries> {
    let eff = effective_ring(z2, cap)?;
    let mut series = TruncatedSeries::zero(eff, 1, cap);
    series.add_term(vec![0], eff.one());
    let mut c = z2.one();
    for n in 1..cap {
        let v = crate::rings::v2(u128::from(n));
        let step = z2.mul(&c, &z2.sub(&alpha, &z2.from_i64(i64::from(n) - 1)));
        c = z2.mul(
            &z2.shr_exact(step, v)?,
            &z2.try_invert(&z2.from_i64(i64::from(n >> v)))?,
        );
        series.add_term(vec![n], z2.reinterpret(c, &eff));
    }
    Ok(BinomialSeries { ring: eff, series })
}

/// First difference between `B(t1)B(t2)` and `B(t1+t2+t1t2)` at the
/// tracked precision, or `None` when the functional equation holds.
pub fn functional_equation_defect(
    b: &BinomialSeries,
) -> Result<Option<(Vec<u32>, String, String)>> {
    let ring = b.ring;
    let cap = b.series.cap();
    let t1 = TruncatedSeries::variable(ring, 2, cap, 0);
    let t2 = TruncatedSeries::variable(ring, 2, cap, 1);
    let lhs = b.series.embed(2, 0).mul(&b.series.embed(2, 1))?;
    let inner = t1.add(&t2)?.add(&t1.mul(&t2)?)?;
    let rhs = b.series.compose(std::slice::from_ref(&inner))?;
    Ok(lhs.first_difference(&rhs))
}

/// First degree below `cap` where `B_alpha` and `B_beta` differ mod 2,
/// at an internally chosen working precision that keeps every
/// coefficient's parity exact.
pub fn mod2_separation(alpha: u128, beta: u128, cap: u32) -> Result<Option<u32>> {
    let z2 = Z2Ring::new(v2_factorial(cap.saturating_sub(1)) + 1);
    let a = binomial_series(&z2, alpha, cap)?;
    let b = binomial_series(&z2, beta, cap)?;
    for n in 0..cap {
        if (a.series.coeff1(n) ^ b.series.coeff1(n)) & 1 != 0 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `theta^q(L) = (1 - (1-y)^q)/(qy)`, a series in `y = vx` with
/// constant term 1; `q` must be a 2-adic unit.
pub fn theta_k(z2: &Z2Ring, q: u128, cap: u32) -> Result<BinomialSeries> {
    if q & 1 == 0 {
        return Err(Error::NotAUnit(format!("theta exponent {q} is even")));
    }
    let b = binomial_series(z2, q, cap + 1)?;
    let eff = b.ring;
    // (1-y)^q = B_q(-y); 1 minus it is divisible by y.
    let mut one_minus = TruncatedSeries::zero(eff, 1, cap + 1);
    for n in 1..=cap {
        let sign = if n % 2 == 0 {
            eff.neg(&b.series.coeff1(n))
        } else {
            b.series.coeff1(n)
        };
        one_minus.add_term(vec![n], sign);
    }
    let q_inv = eff.try_invert(&eff.reinterpret(q, &eff))?;
    let series = one_minus.div_var(0)?.scale(&q_inv);
    Ok(BinomialSeries { ring: eff, series })
}

/// `(1 - w^q)/(q (1 - w))` for a unit series `w` with constant term 1:
/// the theta class of the line bundle with K-theory class `w`.
fn theta_of_class(
    w: &TruncatedSeries<RationalField>,
    q: i64,
) -> Result<TruncatedSeries<RationalField>> {
    let ring = RationalField;
    let one = TruncatedSeries::one(ring, 1, w.cap());
    let wq = theta_power(w, q)?;
    let num = one.sub(&wq)?.div_var(0)?;
    let den = one.sub(w)?.div_var(0)?.scale(&ring.from_ratio(q, 1));
    num.mul(&den.invert_unit()?)
}

/// Compares the closed form `(w^-q - w^q)/(q(w^-1 - w))` for the
/// complexified class of the spin bundle `L^2` with the route through
/// its special-unitary reduction,
/// `theta^q(L^2) theta^q(L-bar) / theta^q(L)`, over the rationals in
/// `w = 1 - y`.  `None` means they agree through degree `cap - 1`.
pub fn spin_theta_closed_form_defect(
    q: i64,
    cap: u32,
) -> Result<Option<(Vec<u32>, String, String)>> {
    assert!(q % 2 != 0, "Adams operations need an odd exponent, got {q}");
    let ring = RationalField;
    let work = cap + 1;
    let y = TruncatedSeries::variable(ring, 1, work, 0);
    let w = TruncatedSeries::one(ring, 1, work).sub(&y)?;
    let w_inv = w.invert_unit()?;
    let wq = theta_power(&w, q)?;
    let wq_inv = theta_power(&w, -q)?;
    let num = wq_inv.sub(&wq)?.div_var(0)?;
    let den = w_inv.sub(&w)?.div_var(0)?.scale(&ring.from_ratio(q, 1));
    let closed = num.mul(&den.invert_unit()?)?;

    let su = theta_of_class(&w.mul(&w)?, q)?
        .mul(&theta_of_class(&w_inv, q)?)?
        .mul(&theta_of_class(&w, q)?.invert_unit()?)?;
    Ok(closed.first_difference(&su))
}

/// `w^k` for a signed exponent.
fn theta_power(
    w: &TruncatedSeries<RationalField>,
    k: i64,
) -> Result<TruncatedSeries<RationalField>> {
    if k >= 0 {
        w.pow(u32::try_from(k).unwrap())
    } else {
        w.invert_unit()?.pow(u32::try_from(-k).unwrap())
    }
}

/// `theta_C^g = (g.x)/x = 1 + t1 t0^-1 u x + ...` over the graded ring.
pub fn theta_complex(act: &StabilizerAction) -> Result<TruncatedSeries<GradedRing>> {
    act.act_on_euler_class()?.div_var(0)
}

/// Coefficients of `(1+t)^(d-1) ((1+t)^(2d) - 1)` for an odd exponent
/// `d`; coefficient `k` is `C(3d-1,k) - C(d-1,k)`.
pub fn binomial_difference_coefficients(z2: &Z2Ring, d: i64, cap: u32) -> Result<BinomialSeries> {
    if d % 2 == 0 {
        return Err(Error::NotOdd(format!("determinant exponent {d} is even")));
    }
    let base = binomial_series(z2, z2.from_i64(d - 1), cap)?;
    let square = binomial_series(z2, z2.from_i64(2 * d), cap)?;
    let eff = base.ring;
    let one = TruncatedSeries::one(eff, 1, cap);
    let series = base.series.mul(&square.series.sub(&one)?)?;
    Ok(BinomialSeries { ring: eff, series })
}

/// Multiplicative word in opaque symbols with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(BTreeMap<String, i64>);

impl Word {
    pub fn one() -> Self {
        Word::default()
    }

    pub fn sym(name: &str) -> Self {
        Word(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for (k, e) in &other.0 {
            let v = out.entry(k.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                out.remove(k);
            }
        }
        Word(out)
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 {
            return Word::one();
        }
        Word(self.0.iter().map(|(s, e)| (s.clone(), e * k)).collect())
    }

    pub fn inv(&self) -> Word {
        self.pow(-1)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.clone()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The difference-class symbol `q0[g]`.
pub fn q0_symbol(g: &str) -> Word {
    Word::sym(&format!("q0[{g}]"))
}

/// The complex cannibalistic-class symbol `thetaC[g]`.
pub fn theta_c_symbol(g: &str) -> Word {
    Word::sym(&format!("thetaC[{g}]"))
}

/// The operation `psi^nu` on words: `r_U -> q0[nu] r_U^det`,
/// `r_K -> r_K^det`, `x -> thetaC[nu] x`, opaque symbols get a
/// `psi[nu].` prefix.
pub fn apply_psi(word: &Word, nu: &str, det_nu: i64) -> Word {
    let mut out = Word::one();
    for (s, e) in &word.0 {
        let image = match s.as_str() {
            "r_U" => q0_symbol(nu).mul(&Word::sym("r_U").pow(det_nu)),
            "r_K" => Word::sym("r_K").pow(det_nu),
            "x" => theta_c_symbol(nu).mul(&Word::sym("x")),
            _ => Word::sym(&format!("psi[{nu}].{s}")),
        };
        out = out.mul(&image.pow(*e));
    }
    out
}

/// Complexification pullback: `r_U -> r`, opaque symbols get a `c.`
/// prefix, `r_K` and `r` pass through.
pub fn apply_complexification(word: &Word) -> Word {
    let mut out = Word::one();
    for (s, e) in &word.0 {
        let image = match s.as_str() {
            "r_U" => Word::sym("r"),
            "r_K" | "r" => Word::sym(s),
            _ => Word::sym(&format!("c.{s}")),
        };
        out = out.mul(&image.pow(*e));
    }
    out
}

/// `theta^g(re) = psi^g(r_U x) / (r_U x)`, which collapses to
/// `q0[g] r_U^(det-1) thetaC[g]`.
pub fn theta_string_word(g: &str, det_g: i64) -> Word {
    let thom = Word::sym("r_U").mul(&Word::sym("x"));
    apply_psi(&thom, g, det_g).mul(&thom.inv())
}

/// `(theta^g)^2` as the complexification of `theta^g(re)`:
/// `c.q0[g] c.thetaC[g] r^(det-1)`.
pub fn theta_squared_word(g: &str, det_g: i64) -> Word {
    apply_complexification(&theta_string_word(g, det_g))
}

/// Restriction along the torus: `psi^g(r_K)/r_K = r_K^(det-1)`.
pub fn theta_torus_restriction_word(g: &str, det_g: i64) -> Word {
    let rk = Word::sym("r_K");
    apply_psi(&rk, g, det_g).mul(&rk.inv())
}

/// Both sides of the composition law `theta^(g nu)(re) =
/// psi^nu(theta^g(re)) theta^nu(re)`, with the composite's difference
/// classes expanded through their cocycle rules.
pub fn composition_law_words(det_g: i64, det_nu: i64) -> (Word, Word) {
    let q0_comp = Word::sym("psi[nu].q0[g]").mul(&q0_symbol("nu").pow(det_g));
    let theta_c_comp = Word::sym("psi[nu].thetaC[g]").mul(&theta_c_symbol("nu"));
    let lhs = q0_comp
        .mul(&Word::sym("r_U").pow(det_g * det_nu - 1))
        .mul(&theta_c_comp);
    let rhs = apply_psi(&theta_string_word("g", det_g), "nu", det_nu)
        .mul(&theta_string_word("nu", det_nu));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::E0Ring;
    use crate::stabilizer::{omega_action, order_four_action};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    /// Exact `C(a,k)` for a signed integer upper index.
    fn big_binomial(a: i64, k: u32) -> BigInt {
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for j in 0..i64::from(k) {
            num *= BigInt::from(a - j);
            den *= BigInt::from(j + 1);
        }
        &num / &den
    }

    fn coeff_matches(b: &BinomialSeries, k: u32, expect: &BigInt) -> bool {
        let modulus = BigInt::from(1u8) << b.effective_precision();
        let got = BigInt::from(b.series.coeff1(k));
        let want = ((expect % &modulus) + &modulus) % &modulus;
        got == want
    }

    #[test]
    fn geometric_and_cubic_series() {
        let z2 = Z2Ring::new(20);
        let minus_one = binomial_series(&z2, z2.from_i64(-1), 8).unwrap();
        for n in 0..8 {
            let expect = if n % 2 == 0 { 1i64 } else { -1 };
            assert_eq!(minus_one.series.coeff1(n), minus_one.ring.from_i64(expect));
        }
        let cubic = binomial_series(&z2, 3, 8).unwrap();
        for (n, expect) in [1, 3, 3, 1, 0, 0, 0, 0].into_iter().enumerate() {
            assert_eq!(cubic.series.coeff1(n as u32), cubic.ring.from_i64(expect));
        }
    }

    #[test]
    fn functional_equation_and_forced_recurrence() {
        let z2 = Z2Ring::new(18);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let alpha = u128::from(rng.gen::<u16>()) & 0x3ff;
            let b = binomial_series(&z2, alpha, 12).unwrap();
            assert_eq!(b.effective_precision(), 10);
            assert_eq!(functional_equation_defect(&b).unwrap(), None);
            let solved = solve_functional_equation(&z2, alpha, 12).unwrap();
            assert_eq!(b, solved);
        }
        // alpha = 5 at cap 12, the displayed instance.
        let b5 = binomial_series(&z2, 5, 12).unwrap();
        assert_eq!(functional_equation_defect(&b5).unwrap(), None);
        // Linear coefficient 0 forces the constant series.
        let flat = solve_functional_equation(&z2, 0, 12).unwrap();
        assert_eq!(
            flat.series
                .first_difference(&TruncatedSeries::one(flat.ring, 1, 12)),
            None
        );
    }

    #[test]
    fn precision_exhaustion_is_loud() {
        let z2 = Z2Ring::new(4);
        assert!(matches!(
            binomial_series(&z2, 7, 12),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn mod2_separation_detects_the_top_bit() {
        // alpha = beta + 2^s (odd multiplier): first parity difference
        // in degree exactly 2^s.
        assert_eq!(mod2_separation(1, 3, 5).unwrap(), Some(2));
        assert_eq!(mod2_separation(1, 5, 9).unwrap(), Some(4));
        assert_eq!(mod2_separation(9, 1, 17).unwrap(), Some(8));
        assert_eq!(mod2_separation(21, 5, 33).unwrap(), Some(16));
        assert_eq!(mod2_separation(13, 13, 33).unwrap(), None);
        // Lucas' theorem as an oracle: the parity of C(alpha, 2^s) is
        // bit s of alpha.
        let z2 = Z2Ring::new(16);
        for alpha in [3u128, 5, 10, 21, 30] {
            let b = binomial_series(&z2, alpha, 17).unwrap();
            for s in 0..5u32 {
                assert_eq!(
                    b.series.coeff1(1 << s) & 1,
                    (alpha >> s) & 1,
                    "alpha {alpha}, s {s}"
                );
            }
        }
    }

    #[test]
    fn theta_k_matches_the_q_series() {
        let z2 = Z2Ring::new(16);
        // q = 1 gives 1.
        let unit = theta_k(&z2, 1, 6).unwrap();
        assert_eq!(
            unit.series
                .first_difference(&TruncatedSeries::one(unit.ring, 1, 6)),
            None
        );
        // q = 3: 1 - y + y^2/3.
        let three = theta_k(&z2, 3, 6).unwrap();
        let r = three.ring;
        assert_eq!(three.series.coeff1(0), r.one());
        assert_eq!(three.series.coeff1(1), r.from_i64(-1));
        assert_eq!(r.mul(&three.series.coeff1(2), &r.from_i64(3)), r.one());
        assert_eq!(three.series.coeff1(3), r.zero());
        // q = -1: the geometric series.
        let inverse = theta_k(&z2, z2.from_i64(-1), 6).unwrap();
        for n in 0..6 {
            assert_eq!(inverse.series.coeff1(n), 1);
        }
        assert!(matches!(theta_k(&z2, 6, 6), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn spin_class_closed_form_equals_su_route() {
        assert_eq!(spin_theta_closed_form_defect(1, 8).unwrap(), None);
        assert_eq!(spin_theta_closed_form_defect(3, 8).unwrap(), None);
        assert_eq!(spin_theta_closed_form_defect(-1, 8).unwrap(), None);
        assert_eq!(spin_theta_closed_form_defect(5, 8).unwrap(), None);
    }

    #[test]
    fn complex_theta_over_the_deformation_ring() {
        let e0 = E0Ring::with_precision(10, 6);
        let omega = omega_action(&e0, 8);
        let theta = theta_complex(&omega).unwrap();
        let graded = GradedRing::new(e0);
        assert_eq!(
            theta.first_difference(&TruncatedSeries::one(graded, 1, 7)),
            None
        );

        let act = order_four_action(&e0, 8).unwrap();
        let theta = theta_complex(&act).unwrap();
        let t0_inv = e0.try_invert(&act.t_coeff(0)).unwrap();
        assert_eq!(theta.coeff1(0), graded.one());
        let expect = crate::rings::GradedElement {
            body: e0.mul(&act.t_coeff(1), &t0_inv),
            u_power: 1,
        };
        assert_eq!(theta.coeff1(1), expect);
        // Sums of line bundles take theta to products: tautological in
        // two variables.
        let two_var = theta.embed(2, 0).mul(&theta.embed(2, 1)).unwrap();
        assert_eq!(
            two_var.coeff(&[1, 1]),
            graded.mul(&theta.coeff1(1), &theta.coeff1(1))
        );
    }

    #[test]
    fn final_coefficients_are_binomial_differences() {
        let z2 = Z2Ring::new(16);
        // d = 1: (1+t)^2 - 1 = 2t + t^2.
        let d1 = binomial_difference_coefficients(&z2, 1, 8).unwrap();
        for (k, expect) in [0i64, 2, 1, 0, 0, 0, 0, 0].into_iter().enumerate() {
            assert_eq!(d1.series.coeff1(k as u32), d1.ring.from_i64(expect));
        }
        for d in [-5i64, -3, -1, 1, 3, 5] {
            let got = binomial_difference_coefficients(&z2, d, 11).unwrap();
            assert!(got.effective_precision() >= 8);
            for k in 0..=10u32 {
                let expect = big_binomial(3 * d - 1, k) - big_binomial(d - 1, k);
                assert!(coeff_matches(&got, k, &expect), "d {d}, k {k}");
            }
            // Difference of binomial series as a second route.
            let top = binomial_series(&z2, z2.from_i64(3 * d - 1), 11).unwrap();
            let bottom = binomial_series(&z2, z2.from_i64(d - 1), 11).unwrap();
            let diff = top.series.sub(&bottom.series).unwrap();
            assert_eq!(got.series.first_difference(&diff), None);
        }
        assert!(matches!(
            binomial_difference_coefficients(&z2, 2, 8),
            Err(Error::NotOdd(_))
        ));
    }

    #[test]
    fn string_class_words_collapse() {
        // det 1: the class is an SU-characteristic class (no r_U).
        let det_one = theta_string_word("g", 1);
        assert_eq!(det_one, q0_symbol("g").mul(&theta_c_symbol("g")));
        assert_eq!(det_one.exponent("r_U"), 0);
        // det -1: exponent of r_U is -2.
        assert_eq!(theta_string_word("g", -1).exponent("r_U"), -2);
        // Generic det.
        for det in [-3i64, 3, 5] {
            let w = theta_string_word("g", det);
            assert_eq!(
                w,
                q0_symbol("g")
                    .mul(&Word::sym("r_U").pow(det - 1))
                    .mul(&theta_c_symbol("g"))
            );
        }
        // Identity element: substituting trivial difference classes
        // leaves the empty word.
        let identity = theta_string_word("e", 1)
            .mul(&q0_symbol("e").inv())
            .mul(&theta_c_symbol("e").inv());
        assert!(identity.is_one());
        // Complexified square and torus restriction.
        let sq = theta_squared_word("g", -1);
        assert_eq!(sq.exponent("r"), -2);
        assert_eq!(sq.exponent("c.q0[g]"), 1);
        assert_eq!(sq.exponent("c.thetaC[g]"), 1);
        assert_eq!(
            theta_torus_restriction_word("g", 3),
            Word::sym("r_K").pow(2)
        );
    }

    #[test]
    fn composition_law_holds_as_exponent_bookkeeping() {
        for det_g in [-1i64, 1, 3] {
            for det_nu in [-1i64, 1, 5] {
                let (lhs, rhs) = composition_law_words(det_g, det_nu);
                assert_eq!(lhs, rhs, "det_g {det_g}, det_nu {det_nu}");
            }
        }
    }
}
