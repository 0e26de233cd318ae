//! The automorphism action on the universal deformation.
//!
//! The deformation of the supersingular curve is the Weierstrass cubic
//! `y^2 + 3u1 xy + (u1^3 - 1) y = x^3` over `E0 = W[[u1]]`.  Its formal
//! group law `F` is taken in the coordinate `z = -x/y`, which is the
//! chord construction applied to the negated parameters
//! `(-3u1, 1 - u1^3)` and gives the classical normal form
//! `F = x + y - 3u1 xy - ...`.  A group element `g` acts by a ring
//! automorphism `h^g` of `E0` together with an isomorphism of formal
//! group laws
//!
//! `g_U(z) = t0(g) z + t1(g) z^2 + ... : (h^g)_* F -> F`,
//!
//! meaning `g_U(((h^g)_* F)(x, y)) = F(g_U(x), g_U(y))`.  (Only this
//! direction exists: the leading coefficient of any map out of `F` is
//! a 2-adic unit times `1/t0`, never `t0`.)  The substitution action
//! on the coordinate ring is by the compositional inverse of `g_U`, so
//! stored series compose contravariantly; see `compose`.
//!
//! An action is stored exactly:
//!
//! * `h^g` on `u1` is a fractional linear map `(a u1 + b)/(c u1 + d)`
//!   with Witt coefficients, optionally composed with the Galois
//!   conjugation of `W` (the Frobenius flag);
//! * `t0(g)` is kept as a genuine rational function in `u1`, so it can
//!   be transported through `h^g` without any truncation loss;
//! * `g_U` is a series over `E0`.
//!
//! Three generators are built in.  The twist by `w` (a sixth root of
//! unity) has `h(u1) = w u1`, `g_U(z) = w z`.  The order-four unit has
//! `h(u1) = (u1+2)/(u1-1)` and
//!
//! `g_U(z) = (l z - r l w'(z)) / (1 + s z + (t - s r) w'(z))`
//!
//! with the four constants `l, r, s, t` below and `w'(z)` the chart
//! series of the *source* curve (parameters `h(u1)`): the isomorphism
//! of pointed cubics is an `(x, y) -> (x/l^2 + ..., y/l^3 + ...)`
//! change of Weierstrass coordinates, and any such map is fractional
//! linear in the chart pair `(z, w(z))` of the curve it is defined on.
//! The denominator constant `t - s r` equals `-l^3 t~` for the `t~` of
//! that coordinate change, as the transformation rule for `a3` shows.
//! The Frobenius fixes `u1` and conjugates `W`.
//!
//! Exactness.  The fractional linear substitution does not descend to
//! the truncation `W[[u1]]/(u1^M)` when its constant term is nonzero:
//! the unknown tail `u1^M (...)` smears 2-adically across low degrees,
//! costing a factor `2^(M-j)` at `u1^j`.  Every verification below
//! therefore pushes group laws forward by rebuilding them from the
//! transported curve parameters (exact, because group-law coefficients
//! are integer polynomials in those parameters) and transports `t0`
//! rationally (exact by construction).  Composing two stored actions
//! does move series coefficients through `h`, so `compose` is exact for
//! twist/Frobenius words but carries the graded loss otherwise; to get a
//! composite exactly mod `(2^N, u1^M)`, build the factors with the u1
//! order inflated to `M + N` and truncate the result, which pushes the
//! smear below `2^N`.

use crate::error::Result;
use crate::fgl::{self, FormalGroupLaw};
use crate::rings::{E0Element, E0Ring, GradedElement, GradedRing, Ring, WittElement, WittRing};
use crate::series::{solve_implicit_w, TruncatedSeries};

/// Polynomial in `u1` with Witt coefficients, not truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct U1Poly {
    pub c: Vec<WittElement>,
}

impl U1Poly {
    pub fn new(c: Vec<WittElement>) -> Self {
        U1Poly { c }
    }

    pub fn constant(x: WittElement) -> Self {
        U1Poly { c: vec![x] }
    }

    pub fn zero(w: &WittRing) -> Self {
        U1Poly { c: vec![w.zero()] }
    }

    fn normalized(&self, w: &WittRing) -> U1Poly {
        let mut c = self.c.clone();
        while c.len() > 1 && w.is_zero(c.last().unwrap()) {
            c.pop();
        }
        U1Poly { c }
    }

    pub fn is_zero(&self, w: &WittRing) -> bool {
        self.c.iter().all(|x| w.is_zero(x))
    }

    pub fn add(&self, w: &WittRing, other: &U1Poly) -> U1Poly {
        let n = self.c.len().max(other.c.len());
        let pick = |v: &Vec<WittElement>, i: usize| v.get(i).copied().unwrap_or_else(|| w.zero());
        U1Poly {
            c: (0..n)
                .map(|i| w.add(&pick(&self.c, i), &pick(&other.c, i)))
                .collect(),
        }
    }

    pub fn neg(&self, w: &WittRing) -> U1Poly {
        U1Poly {
            c: self.c.iter().map(|x| w.neg(x)).collect(),
        }
    }

    pub fn mul(&self, w: &WittRing, other: &U1Poly) -> U1Poly {
        let mut c = vec![w.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = w.add(&c[i + j], &w.mul(a, b));
            }
        }
        U1Poly { c }
    }

    pub fn scale(&self, w: &WittRing, k: &WittElement) -> U1Poly {
        U1Poly {
            c: self.c.iter().map(|x| w.mul(x, k)).collect(),
        }
    }

    pub fn pow(&self, w: &WittRing, k: u32) -> U1Poly {
        let mut acc = U1Poly::constant(w.one());
        for _ in 0..k {
            acc = acc.mul(w, self);
        }
        acc
    }

    pub fn conj(&self, w: &WittRing) -> U1Poly {
        U1Poly {
            c: self.c.iter().map(|x| w.conj(x)).collect(),
        }
    }

    pub fn equals(&self, w: &WittRing, other: &U1Poly) -> bool {
        self.normalized(w) == other.normalized(w)
    }

    /// Image in the truncated ring `W[[u1]]/(u1^M)`.
    pub fn to_e0(&self, e0: &E0Ring) -> E0Element {
        e0.from_coeffs(&self.c)
    }

    pub fn display(&self, w: &WittRing) -> String {
        let e0 = E0Ring::new(*w, u32::try_from(self.c.len()).unwrap().max(1));
        e0.display(&self.to_e0(&e0))
    }
}

/// Rational function `num/den` in `u1`; the denominator keeps a unit
/// constant term, making it a nonzerodivisor, so equality is safe by
/// cross multiplication.
#[derive(Debug, Clone)]
pub struct RationalU1 {
    pub num: U1Poly,
    pub den: U1Poly,
}

impl RationalU1 {
    pub fn new(w: &WittRing, num: U1Poly, den: U1Poly) -> Self {
        assert!(
            w.is_unit(den.c.first().expect("denominator must be nonempty")),
            "denominator needs a unit constant term"
        );
        RationalU1 { num, den }
    }

    pub fn from_poly(w: &WittRing, num: U1Poly) -> Self {
        RationalU1::new(w, num, U1Poly::constant(w.one()))
    }

    pub fn constant(w: &WittRing, x: WittElement) -> Self {
        RationalU1::from_poly(w, U1Poly::constant(x))
    }

    pub fn mul(&self, w: &WittRing, other: &RationalU1) -> RationalU1 {
        RationalU1::new(w, self.num.mul(w, &other.num), self.den.mul(w, &other.den))
    }

    pub fn add(&self, w: &WittRing, other: &RationalU1) -> RationalU1 {
        let num = self
            .num
            .mul(w, &other.den)
            .add(w, &other.num.mul(w, &self.den));
        RationalU1::new(w, num, self.den.mul(w, &other.den))
    }

    pub fn neg(&self, w: &WittRing) -> RationalU1 {
        RationalU1 {
            num: self.num.neg(w),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, w: &WittRing, other: &RationalU1) -> RationalU1 {
        self.add(w, &other.neg(w))
    }

    pub fn scale(&self, w: &WittRing, k: &WittElement) -> RationalU1 {
        RationalU1 {
            num: self.num.scale(w, k),
            den: self.den.clone(),
        }
    }

    pub fn conj(&self, w: &WittRing) -> RationalU1 {
        RationalU1 {
            num: self.num.conj(w),
            den: self.den.conj(w),
        }
    }

    /// Exact equality of fractions, by cross multiplication.
    pub fn equals(&self, w: &WittRing, other: &RationalU1) -> bool {
        self.num
            .mul(w, &other.den)
            .equals(w, &other.num.mul(w, &self.den))
    }

    /// Image in the truncated ring, inverting the unit denominator there.
    pub fn to_e0(&self, e0: &E0Ring) -> Result<E0Element> {
        let den = e0.try_invert(&self.den.to_e0(e0))?;
        Ok(e0.mul(&self.num.to_e0(e0), &den))
    }
}

/// Fractional linear map `u1 -> (a u1 + b)/(c u1 + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mobius {
    pub a: WittElement,
    pub b: WittElement,
    pub c: WittElement,
    pub d: WittElement,
}

impl Mobius {
    pub fn identity(w: &WittRing) -> Self {
        Mobius {
            a: w.one(),
            b: w.zero(),
            c: w.zero(),
            d: w.one(),
        }
    }

    /// Acts as the identity on `u1`: a scalar multiple of the identity
    /// matrix by a unit.
    pub fn acts_as_identity(&self, w: &WittRing) -> bool {
        w.is_zero(&self.b) && w.is_zero(&self.c) && self.a == self.d && w.is_unit(&self.a)
    }

    pub fn conj(&self, w: &WittRing) -> Mobius {
        Mobius {
            a: w.conj(&self.a),
            b: w.conj(&self.b),
            c: w.conj(&self.c),
            d: w.conj(&self.d),
        }
    }

    /// Matrix product; as maps, `self` is applied to the variable first
    /// and `other` to the result of that.
    pub fn then(&self, w: &WittRing, other: &Mobius) -> Mobius {
        // (self compose-after other) as matrices is self * other; the
        // composite map u1 -> self(other(u1)) -- callers order arguments.
        Mobius {
            a: w.add(&w.mul(&self.a, &other.a), &w.mul(&self.b, &other.c)),
            b: w.add(&w.mul(&self.a, &other.b), &w.mul(&self.b, &other.d)),
            c: w.add(&w.mul(&self.c, &other.a), &w.mul(&self.d, &other.c)),
            d: w.add(&w.mul(&self.c, &other.b), &w.mul(&self.d, &other.d)),
        }
    }

    /// The image of `u1` in the truncated ring (the denominator constant
    /// term must be a unit).
    pub fn apply_to_u1(&self, e0: &E0Ring) -> Result<E0Element> {
        let u1 = e0.u1();
        let num = e0.add(&e0.mul(&e0.from_witt(self.a), &u1), &e0.from_witt(self.b));
        let den = e0.add(&e0.mul(&e0.from_witt(self.c), &u1), &e0.from_witt(self.d));
        Ok(e0.mul(&num, &e0.try_invert(&den)?))
    }

    /// `u1` image as an exact rational function.
    pub fn as_rational(&self, w: &WittRing) -> RationalU1 {
        RationalU1::new(
            w,
            U1Poly::new(vec![self.b, self.a]),
            U1Poly::new(vec![self.d, self.c]),
        )
    }
}

/// One group element acting on the deformation: the ring automorphism
/// (fractional linear map plus Frobenius flag), the exact leading unit
/// `t0`, and the isomorphism series `g_U`.
#[derive(Debug, Clone)]
pub struct StabilizerAction {
    pub name: String,
    pub e0: E0Ring,
    pub cap: u32,
    pub mobius: Mobius,
    pub conj: bool,
    pub t0: RationalU1,
    pub g_u: TruncatedSeries<E0Ring>,
}

impl StabilizerAction {
    pub fn witt(&self) -> WittRing {
        self.e0.witt
    }

    /// `h^g(u1)` in the truncated ring.
    pub fn h_u1(&self) -> Result<E0Element> {
        self.mobius.apply_to_u1(&self.e0)
    }

    /// Apply `h^g` to a truncated element: Galois conjugation followed by
    /// substitution of the fractional linear image.  Exact when the map
    /// fixes `u1` or sends it to a multiple of itself; otherwise the
    /// result of degree `j` is only trusted mod `2^(M-j)` (see module
    /// notes) -- prefer the rational or curve-parameter routes.
    pub fn h_apply(&self, e: &E0Element) -> Result<E0Element> {
        let e = if self.conj {
            self.e0.frobenius(e)
        } else {
            e.clone()
        };
        Ok(self.e0.substitute(&e, &self.h_u1()?))
    }

    /// Apply `h^g` to a rational function in `u1`: exact.
    pub fn h_apply_rational(&self, r: &RationalU1) -> RationalU1 {
        let w = self.witt();
        let r = if self.conj { r.conj(&w) } else { r.clone() };
        let lin = |p: &U1Poly| -> U1Poly {
            // p((a u1 + b)/(c u1 + d)) * (c u1 + d)^(deg p)
            let top = U1Poly::new(vec![self.mobius.b, self.mobius.a]);
            let bot = U1Poly::new(vec![self.mobius.d, self.mobius.c]);
            let deg = u32::try_from(p.c.len() - 1).unwrap();
            let mut acc = U1Poly::zero(&w);
            for (i, coeff) in p.c.iter().enumerate() {
                let i = u32::try_from(i).unwrap();
                let term = top
                    .pow(&w, i)
                    .mul(&w, &bot.pow(&w, deg - i))
                    .scale(&w, coeff);
                acc = acc.add(&w, &term);
            }
            acc
        };
        // Clear to a common power of the denominator.
        let dn = u32::try_from(r.num.c.len() - 1).unwrap();
        let dd = u32::try_from(r.den.c.len() - 1).unwrap();
        let bot = U1Poly::new(vec![self.mobius.d, self.mobius.c]);
        let (mut num, mut den) = (lin(&r.num), lin(&r.den));
        if dn < dd {
            num = num.mul(&w, &bot.pow(&w, dd - dn));
        } else {
            den = den.mul(&w, &bot.pow(&w, dn - dd));
        }
        RationalU1::new(&w, num, den)
    }

    /// Curve parameters of the pushed-forward deformation law,
    /// `(3 h(u1), h(u1)^3 - 1)`: exact, since `h` is a ring map.
    pub fn pushed_curve_params(&self) -> Result<(E0Element, E0Element)> {
        let h = self.h_u1()?;
        Ok(law_params(&self.e0, &h))
    }

    /// `(h^g)_* F`, built exactly from the transported curve parameters.
    pub fn pushforward_fgl(&self) -> Result<FormalGroupLaw<E0Ring>> {
        let (a1, a3) = self.pushed_curve_params()?;
        fgl::from_curve(&self.e0, &a1, &a3, self.cap)
    }

    /// Series coefficient `t_i(g)`, the coefficient of `z^(i+1)` in `g_U`.
    pub fn t_coeff(&self, i: u32) -> E0Element {
        self.g_u.coeff1(i + 1)
    }

    /// The action on the degree-2 Euler class: a series over the graded
    /// ring with `x^(i+1)`-coefficient `t_i t0^{-1} u^i`.
    pub fn act_on_euler_class(&self) -> Result<TruncatedSeries<GradedRing>> {
        let graded = GradedRing::new(self.e0);
        let t0_inv = self.e0.try_invert(&self.t_coeff(0))?;
        let mut out = TruncatedSeries::zero(graded, 1, self.cap);
        for i in 0..self.cap.saturating_sub(1) {
            let body = self.e0.mul(&self.t_coeff(i), &t0_inv);
            if self.e0.is_zero(&body) {
                continue;
            }
            out.add_term(
                vec![i + 1],
                GradedElement {
                    body,
                    u_power: i64::from(i),
                },
            );
        }
        Ok(out)
    }
}

/// Chord-construction parameters `(-3p, 1 - p^3)` describing the curve
/// `y^2 + 3p xy + (p^3 - 1) y = x^3` in the coordinate `z = -x/y`.
pub fn law_params(e0: &E0Ring, p: &E0Element) -> (E0Element, E0Element) {
    (e0.mul_i64(p, -3), e0.sub(&e0.one(), &e0.pow(p, 3)))
}

/// Parameters of the universal deformation law (`p = u1`).
pub fn deformation_params(e0: &E0Ring) -> (E0Element, E0Element) {
    law_params(e0, &e0.u1())
}

/// The deformation group law itself.
pub fn deformation_fgl(e0: &E0Ring, cap: u32) -> Result<FormalGroupLaw<E0Ring>> {
    let (a1, a3) = deformation_params(e0);
    fgl::from_curve(e0, &a1, &a3, cap)
}

/// The sixth-root-of-unity twist: `h(u1) = w u1`, `g_U(z) = w z`.
pub fn omega_action(e0: &E0Ring, cap: u32) -> StabilizerAction {
    let w = e0.witt;
    let om = w.omega();
    let mut g_u = TruncatedSeries::zero(*e0, 1, cap);
    g_u.add_term(vec![1], e0.omega());
    StabilizerAction {
        name: "omega".into(),
        e0: *e0,
        cap,
        mobius: Mobius {
            a: om,
            b: w.zero(),
            c: w.zero(),
            d: w.one(),
        },
        conj: false,
        t0: RationalU1::constant(&w, om),
        g_u,
    }
}

/// The scalar `-1`: trivial on `u1`, formal inverse on the coordinate.
///
/// The coordinate series is the inverse series `[-1](z) = -z - 3 u1
/// z^2 - ...` of the deformation law, not the bare negation `-z`,
/// which fails to commute with a chord law whose `xy` term is nonzero.
pub fn minus_one_action(e0: &E0Ring, cap: u32) -> Result<StabilizerAction> {
    let w = e0.witt;
    let g_u = deformation_fgl(e0, cap)?.inverse_series()?;
    Ok(StabilizerAction {
        name: "minus-one".into(),
        e0: *e0,
        cap,
        mobius: Mobius::identity(&w),
        conj: false,
        t0: RationalU1::constant(&w, w.neg(&w.one())),
        g_u,
    })
}

/// The identity element.
pub fn identity_action(e0: &E0Ring, cap: u32) -> StabilizerAction {
    let w = e0.witt;
    StabilizerAction {
        name: "identity".into(),
        e0: *e0,
        cap,
        mobius: Mobius::identity(&w),
        conj: false,
        t0: RationalU1::constant(&w, w.one()),
        g_u: TruncatedSeries::variable(*e0, 1, cap, 0),
    }
}

/// The Frobenius: fixes `u1`, conjugates the Witt vectors.
pub fn frobenius_action(e0: &E0Ring, cap: u32) -> StabilizerAction {
    let w = e0.witt;
    StabilizerAction {
        name: "frobenius".into(),
        e0: *e0,
        cap,
        mobius: Mobius::identity(&w),
        conj: true,
        t0: RationalU1::constant(&w, w.one()),
        g_u: TruncatedSeries::variable(*e0, 1, cap, 0),
    }
}

/// The four classical constants of the order-four action, as exact
/// rational functions in `u1`.
pub struct OrderFourConstants {
    pub l: RationalU1,
    pub r: RationalU1,
    pub s: RationalU1,
    pub t: RationalU1,
}

pub fn order_four_constants(w: &WittRing) -> OrderFourConstants {
    let e = |a0: i64, a1: i64| w.element(a0, a1);
    let u1_minus_1 = U1Poly::new(vec![e(-1, 0), e(1, 0)]);
    // l = (-1-2w)/(u1-1)
    let l = RationalU1::new(w, U1Poly::constant(e(-1, -2)), u1_minus_1.clone());
    // r = 3(1-u1^3)/(u1-1)^3
    let r = RationalU1::new(
        w,
        U1Poly::new(vec![e(3, 0), e(0, 0), e(0, 0), e(-3, 0)]),
        u1_minus_1.pow(w, 3),
    );
    // s = 3(w^2 u1 - 1)/(u1-1); w^2 = -1-w
    let s = RationalU1::new(
        w,
        U1Poly::new(vec![e(-3, 0), e(-3, -3)]),
        u1_minus_1.clone(),
    );
    // t = 3(u1^3-1)(1-w + (1-w^2)u1)/(u1-1)^4
    let cubic = U1Poly::new(vec![e(-3, 0), e(0, 0), e(0, 0), e(3, 0)]);
    let linear = U1Poly::new(vec![e(1, -1), e(2, 1)]);
    let t = RationalU1::new(w, cubic.mul(w, &linear), u1_minus_1.pow(w, 4));
    OrderFourConstants { l, r, s, t }
}

/// The order-four element: `h(u1) = (u1+2)/(u1-1)` with
/// `g_U(z) = (l z - r l w'(z)) / (1 + s z + (t - s r) w'(z))`,
/// where `w'` is the chart series of the source curve (parameter
/// `h(u1)`): the coordinate change behind `g_U` is fractional linear
/// in the pair `(z, w'(z))`.
pub fn order_four_action(e0: &E0Ring, cap: u32) -> Result<StabilizerAction> {
    let w = e0.witt;
    let k = order_four_constants(&w);
    let l = k.l.to_e0(e0)?;
    let r = k.r.to_e0(e0)?;
    let s = k.s.to_e0(e0)?;
    let t = k.t.to_e0(e0)?;
    let mobius = Mobius {
        a: w.one(),
        b: w.element(2, 0),
        c: w.one(),
        d: w.element(-1, 0),
    };
    let h = mobius.apply_to_u1(e0)?;
    let (pa1, pa3) = law_params(e0, &h);
    let wser = solve_implicit_w(e0, &pa1, &pa3, cap)?;
    let z = TruncatedSeries::variable(*e0, 1, cap, 0);
    let num = z.scale(&l).sub(&wser.scale(&e0.mul(&r, &l)))?;
    let t_sr = e0.sub(&t, &e0.mul(&s, &r));
    let den = TruncatedSeries::one(*e0, 1, cap)
        .add(&z.scale(&s))?
        .add(&wser.scale(&t_sr))?;
    let g_u = num.mul(&den.invert_unit()?)?;
    Ok(StabilizerAction {
        name: "order-four".into(),
        e0: *e0,
        cap,
        mobius,
        conj: false,
        t0: k.l,
        g_u,
    })
}

/// The product `first * second`, acting on the base through
/// `h^second` after `h^first`.  The coordinate series composes as
/// `g_u'' = second.g_u(h^second(first.g_u)(z))`: the stored series is
/// the isomorphism from the pushed-forward law back to the deformation
/// law, so it composes contravariantly to the substitution action (its
/// compositional inverse), keeping `i * i` equal to the formal
/// inverse.  Exact for twist/Frobenius words; see the module notes for
/// the precision recipe otherwise.
pub fn compose(first: &StabilizerAction, second: &StabilizerAction) -> Result<StabilizerAction> {
    assert_eq!(first.e0, second.e0, "actions live over different rings");
    assert_eq!(first.cap, second.cap, "actions have different caps");
    let w = first.witt();
    let m_first = if second.conj {
        first.mobius.conj(&w)
    } else {
        first.mobius
    };
    let mobius = m_first.then(&w, &second.mobius);
    let t0 = second.h_apply_rational(&first.t0).mul(&w, &second.t0);
    let transported = first.g_u.map_coeffs(first.e0, |c| {
        second
            .h_apply(c)
            .expect("fractional linear map has unit denominator")
    });
    let g_u = second.g_u.compose(std::slice::from_ref(&transported))?;
    Ok(StabilizerAction {
        name: format!("{}*{}", first.name, second.name),
        e0: first.e0,
        cap: first.cap,
        mobius,
        conj: first.conj ^ second.conj,
        t0,
        g_u,
    })
}

/// First coefficient difference between `(h^g)_* F` and the conjugated
/// law `g_U^{-1}(F(g_U x, g_U y))` -- for the twist, where both sides
/// are known to agree on the nose, `None` certifies the equality.
pub fn pushforward_twist_defect(
    act: &StabilizerAction,
) -> Result<Option<(Vec<u32>, String, String)>> {
    let pushed = act.pushforward_fgl()?;
    let f = deformation_fgl(&act.e0, act.cap)?;
    // twist = g^{-1} F(g x, g y)
    let gx = act.g_u.embed(2, 0);
    let gy = act.g_u.embed(2, 1);
    let inner = f.series().compose(&[gx, gy])?;
    let g_inv = act.g_u.reverse()?;
    let twist = g_inv.compose(std::slice::from_ref(&inner))?;
    Ok(pushed.series().first_difference(&twist))
}

/// First defect of `g_U` as a homomorphism `(h^g)_* F -> F`, or `None`.
pub fn action_homomorphism_defect(
    act: &StabilizerAction,
) -> Result<Option<(Vec<u32>, String, String)>> {
    let pushed = act.pushforward_fgl()?;
    let f = deformation_fgl(&act.e0, act.cap)?;
    pushed.homomorphism_defect(&act.g_u, &f)
}

/// The transport identity for `u1`: `h^g(u1) = t0 u1 + (2/3) t1/t0`,
/// checked exactly in the truncated ring with `t0, t1` read off the
/// stored series.
pub fn u1_transport_holds(act: &StabilizerAction) -> Result<bool> {
    let e0 = &act.e0;
    let lhs = act.h_u1()?;
    let t0 = act.t_coeff(0);
    let t1 = act.t_coeff(1);
    let two_thirds = e0.mul(&e0.from_i64(2), &e0.try_invert(&e0.from_i64(3))?);
    let rhs = e0.add(
        &e0.mul(&t0, &e0.u1()),
        &e0.mul(&two_thirds, &e0.mul(&t1, &e0.try_invert(&t0)?)),
    );
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> E0Ring {
        E0Ring::with_precision(12, 8)
    }

    #[test]
    fn deformation_law_reduces_to_the_curve_law() {
        let e0 = E0Ring::with_precision(6, 4);
        let f = deformation_fgl(&e0, 8).unwrap();
        let f4 = crate::rings::F4Field;
        let reduced = f.map_coeffs(f4, |c| e0.reduce_residue(c));
        let curve = fgl::from_curve(&f4, &f4.zero(), &f4.one(), 8).unwrap();
        assert_eq!(reduced.series(), curve.series());
    }

    #[test]
    fn twist_pushforward_equals_conjugated_law() {
        let e0 = ring();
        let act = omega_action(&e0, 10);
        assert_eq!(pushforward_twist_defect(&act).unwrap(), None);
        assert_eq!(action_homomorphism_defect(&act).unwrap(), None);
    }

    #[test]
    fn order_four_series_is_a_homomorphism() {
        let e0 = ring();
        let act = order_four_action(&e0, 10).unwrap();
        assert_eq!(action_homomorphism_defect(&act).unwrap(), None);
    }

    #[test]
    fn order_four_leading_coefficients() {
        let e0 = ring();
        let act = order_four_action(&e0, 6).unwrap();
        let k = order_four_constants(&e0.witt);
        assert_eq!(act.t_coeff(0), k.l.to_e0(&e0).unwrap());
        let minus_ls = k.l.mul(&e0.witt, &k.s).neg(&e0.witt);
        assert_eq!(act.t_coeff(1), minus_ls.to_e0(&e0).unwrap());
    }

    #[test]
    fn u1_transport_for_both_generators() {
        let e0 = ring();
        assert!(u1_transport_holds(&omega_action(&e0, 6)).unwrap());
        assert!(u1_transport_holds(&order_four_action(&e0, 6).unwrap()).unwrap());
    }

    #[test]
    fn u1_transport_as_exact_rational_identity() {
        // l*u1 - (2/3)s = (u1+2)/(u1-1), as untruncated rational functions
        let w = WittRing::new(12);
        let k = order_four_constants(&w);
        let u1 = RationalU1::from_poly(&w, U1Poly::new(vec![w.zero(), w.one()]));
        let two_thirds = w.mul(&w.element(2, 0), &w.try_invert(&w.element(3, 0)).unwrap());
        let lhs = k.l.mul(&w, &u1).sub(&w, &k.s.scale(&w, &two_thirds));
        let h_u1 = Mobius {
            a: w.one(),
            b: w.element(2, 0),
            c: w.one(),
            d: w.element(-1, 0),
        }
        .as_rational(&w);
        assert!(lhs.equals(&w, &h_u1));
    }

    #[test]
    fn order_four_squares_to_minus_one() {
        // Inflate the u1 order to M + N so the composite is exact mod
        // (2^N, u1^M), then truncate and compare.
        let (n, m, cap) = (8, 5, 6);
        let big = E0Ring::with_precision(n, m + n);
        let act = order_four_action(&big, cap).unwrap();
        let sq = compose(&act, &act).unwrap();
        assert!(sq.mobius.acts_as_identity(&big.witt));
        assert!(!sq.conj);
        let minus_one = RationalU1::constant(&big.witt, big.witt.element(-1, 0));
        assert!(sq.t0.equals(&big.witt, &minus_one));
        let small = E0Ring::with_precision(n, m);
        let g = sq.g_u.map_coeffs(small, |c| big.reinterpret(c, &small));
        let expect = minus_one_action(&small, cap).unwrap().g_u;
        assert_eq!(g.first_difference(&expect), None);
    }

    #[test]
    fn twist_has_order_three_and_frobenius_order_two() {
        let e0 = ring();
        let om = omega_action(&e0, 8);
        let om3 = compose(&compose(&om, &om).unwrap(), &om).unwrap();
        let id = identity_action(&e0, 8);
        assert_eq!(om3.g_u.first_difference(&id.g_u), None);
        assert!(om3.mobius.acts_as_identity(&e0.witt));
        assert!(om3.t0.equals(&e0.witt, &id.t0));
        let fr = frobenius_action(&e0, 8);
        let fr2 = compose(&fr, &fr).unwrap();
        assert!(!fr2.conj);
        assert_eq!(fr2.g_u.first_difference(&id.g_u), None);
    }

    #[test]
    fn euler_class_action_is_consistent_with_the_coordinate_action() {
        // t0 u * (g.x) = g_U(u x) over the graded ring
        let e0 = E0Ring::with_precision(10, 6);
        for act in [omega_action(&e0, 8), order_four_action(&e0, 8).unwrap()] {
            let graded = GradedRing::new(e0);
            let gx = act.act_on_euler_class().unwrap();
            let t0u = GradedElement {
                body: act.t_coeff(0),
                u_power: 1,
            };
            let lhs = gx.scale(&t0u);
            let g_graded = act.g_u.map_coeffs(graded, |c| GradedElement {
                body: c.clone(),
                u_power: 0,
            });
            let ux = TruncatedSeries::variable(graded, 1, 8, 0).scale(&graded.u());
            let rhs = g_graded.compose(std::slice::from_ref(&ux)).unwrap();
            assert_eq!(lhs.first_difference(&rhs), None, "failed for {}", act.name);
        }
    }
}
