//! Named verification checks and the reporting plumbing behind the
//! command-line runner.
//!
//! Every check is a pure function of a [`CheckConfig`]: same knobs in,
//! byte-identical report out.  A check returns `Ok(None)` when the
//! property holds, `Ok(Some(details))` locating the first failure
//! otherwise; internal errors also surface as failures.  Reports are
//! assembled in check-id order whether the checks run serially or on a
//! thread pool.

use crate::cannibal::{
    binomial_difference_coefficients, binomial_series, functional_equation_defect, mod2_separation,
    spin_theta_closed_form_defect, theta_k,
};
use crate::curve::{
    all_points, frobenius_map, generate, matrix_of, negation, omega_twist, on_curve, order_four,
    smul, Mat3, Point,
};
use crate::error::{Error, Result};
use crate::fgl::from_curve;
use crate::pairing::{det_lemma_defect, twist_rows, Exponents, RelationLattice, ZQuat};
use crate::qexp::{phi_agreement_defect, q0_leading_defect, QRing};
use crate::rings::{E0Ring, F4Field, Ring, WittRing, Z2Ring};
use crate::series::{implicit_w_residual, solve_implicit_w};
use crate::stabilizer::{
    action_homomorphism_defect, compose, omega_action, order_four_action, order_four_constants,
    pushforward_twist_defect, u1_transport_holds, Mobius, RationalU1, U1Poly,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Numeric knobs shared by the checks: 2-adic precision `n`, the
/// `u1`-adic order `m`, the z-series cap, the q-expansion order `q`,
/// and the x-degree bound `dx`; `seed` feeds the property samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub n: u32,
    pub m: u32,
    pub cap: u32,
    pub q: u32,
    pub dx: u32,
    #[serde(skip)]
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            n: 12,
            m: 8,
            cap: 10,
            q: 6,
            dx: 9,
            seed: 0,
        }
    }
}

impl CheckConfig {
    /// Rejects knob values the rings cannot represent.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.n < 1 {
            return bad("precision-2adic must be at least 1");
        }
        if self.m < 1 {
            return bad("u1-order must be at least 1");
        }
        if self.cap < 3 {
            return bad("series-cap must be at least 3 to expose t1");
        }
        if self.q < 1 {
            return bad("q-order must be at least 1");
        }
        if self.dx < 1 {
            return bad("x-degree must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// One record of the verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub description: String,
    pub params: CheckConfig,
    pub status: CheckStatus,
    pub details: String,
}

type CheckFn = fn(&CheckConfig) -> Result<Option<String>>;

/// A named check: stable id, one-line description, and the runner.
pub struct CheckDef {
    pub id: &'static str,
    pub description: &'static str,
    run: CheckFn,
}

/// All known checks, sorted by id.
pub fn registry() -> Vec<CheckDef> {
    let mut defs = vec![
        CheckDef {
            id: "curve.points",
            description: "the curve y^2+y=x^3 over F4 has 9 points forming (Z/3)^2",
            run: check_curve_points,
        },
        CheckDef {
            id: "curve.gl2",
            description: "automorphism matrices, their determinants, and the order-48 image",
            run: check_curve_gl2,
        },
        CheckDef {
            id: "curve.order48",
            description: "the four automorphisms generate a group of order 48",
            run: check_curve_order48,
        },
        CheckDef {
            id: "fgl.height",
            description: "the curve law's 2-series starts with a unit z^4 term (height 2)",
            run: check_fgl_height,
        },
        CheckDef {
            id: "stab.omega",
            description: "pushforward along the sixth-root twist equals the conjugated law",
            run: check_stab_omega,
        },
        CheckDef {
            id: "stab.i-homomorphism",
            description: "the order-four series is a homomorphism with vanishing w-residual",
            run: check_stab_i_homomorphism,
        },
        CheckDef {
            id: "stab.beaudry",
            description: "t0 u1 + (2/3) t1/t0 = (u1+2)/(u1-1) and the square acts as -1",
            run: check_stab_beaudry,
        },
        CheckDef {
            id: "binom.functional",
            description: "binomial series satisfy B(t1)B(t2) = B(t1+t2+t1t2); mod-2 separation",
            run: check_binom_functional,
        },
        CheckDef {
            id: "cannibal.prop41",
            description: "the closed form of theta^q equals the SU-quotient route",
            run: check_cannibal_prop41,
        },
        CheckDef {
            id: "pairing.det",
            description: "f(x(a+bS), x(aS+2b)-bar) = det f(x,xS) and lattice consequences",
            run: check_pairing_det,
        },
        CheckDef {
            id: "qexp.phi",
            description: "product and exponential shapes of Phi agree coefficientwise",
            run: check_qexp_phi,
        },
        CheckDef {
            id: "final.binomial",
            description: "(1+r)^(d-1)((1+r)^(2d)-1) has coefficients C(3d-1,k)-C(d-1,k)",
            run: check_final_binomial,
        },
        CheckDef {
            id: "q0.leading",
            description: "the leading-term simplification of f*q0^g holds in E0",
            run: check_q0_leading,
        },
    ];
    defs.sort_by_key(|d| d.id);
    defs
}

/// Runs the selected checks (all when the selection is empty), up to
/// `jobs` in parallel, and returns reports sorted by check id.
pub fn run_checks(
    selection: &[String],
    cfg: &CheckConfig,
    jobs: usize,
) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let defs = registry();
    let chosen: Vec<&CheckDef> = if selection.is_empty() {
        defs.iter().collect()
    } else {
        let mut ids: Vec<&str> = selection.iter().map(String::as_str).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.iter()
            .map(|id| {
                defs.iter()
                    .find(|d| d.id == *id)
                    .ok_or_else(|| Error::UnknownCheckId((*id).into()))
            })
            .collect::<Result<_>>()?
    };
    if jobs == 0 {
        return Err(Error::InvalidConfig("jobs must be at least 1".into()));
    }
    let run_one = |d: &&CheckDef| -> CheckReport {
        let (status, details) = match (d.run)(cfg) {
            Ok(None) => (CheckStatus::Pass, String::new()),
            Ok(Some(details)) => (CheckStatus::Fail, details),
            Err(e) => (CheckStatus::Fail, format!("error: {e}")),
        };
        CheckReport {
            check_id: d.id.into(),
            description: d.description.into(),
            params: *cfg,
            status,
            details,
        }
    };
    let mut reports: Vec<CheckReport> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| chosen.par_iter().map(run_one).collect())
    } else {
        chosen.iter().map(run_one).collect()
    };
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

/// Fixed-width text table, one row per report.
pub fn render_text(reports: &[CheckReport]) -> String {
    let id_w = reports
        .iter()
        .map(|r| r.check_id.len())
        .chain(["check".len()])
        .max()
        .unwrap_or(5);
    let mut out = format!(
        "{:id_w$}  {:6}  {:28}  details\n",
        "check", "status", "params"
    );
    for r in reports {
        let params = format!(
            "N={} M={} cap={} Q={} Dx={}",
            r.params.n, r.params.m, r.params.cap, r.params.q, r.params.dx
        );
        let status = match r.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        };
        out.push_str(&format!(
            "{:id_w$}  {:6}  {:28}  {}\n",
            r.check_id, status, params, r.details
        ));
    }
    out
}

fn fail(msg: String) -> Result<Option<String>> {
    Ok(Some(msg))
}

fn check_curve_points(_cfg: &CheckConfig) -> Result<Option<String>> {
    let pts = all_points();
    if pts.len() != 9 {
        return fail(format!("expected 9 points, found {}", pts.len()));
    }
    for p in &pts {
        if !on_curve(p) {
            return fail(format!("{p:?} is not on the curve"));
        }
        if smul(3, p) != Point::Infinity {
            return fail(format!("{p:?} is not killed by 3"));
        }
        if *p != Point::Infinity && smul(1, p) == Point::Infinity {
            return fail(format!("{p:?} collapses to the identity"));
        }
        for q in &pts {
            let s = crate::curve::add(p, q);
            if !pts.contains(&s) {
                return fail(format!("{p:?} + {q:?} = {s:?} escapes the point set"));
            }
        }
    }
    // Nine points all killed by 3 and closed under addition: (Z/3)^2.
    Ok(None)
}

fn check_curve_gl2(_cfg: &CheckConfig) -> Result<Option<String>> {
    let gens = [
        (negation(), Mat3::new([[-1, 0], [0, -1]]), 1),
        (omega_twist(), Mat3::new([[1, 1], [0, 1]]), 1),
        (order_four(), Mat3::new([[0, -1], [1, 0]]), 1),
        (frobenius_map(), Mat3::new([[1, 0], [0, -1]]), -1),
    ];
    let mut mats = Vec::new();
    for (map, expect, det) in &gens {
        let m = matrix_of(map)?;
        if m != *expect {
            return fail(format!("{}: matrix {m:?}, expected {expect:?}", map.name));
        }
        if m.det_signed() != *det {
            return fail(format!(
                "{}: det {}, expected {det}",
                map.name,
                m.det_signed()
            ));
        }
        mats.push(m);
    }
    let group = generate(&mats);
    if group.len() != 48 {
        return fail(format!(
            "generated group has order {}, expected 48",
            group.len()
        ));
    }
    Ok(None)
}

fn check_curve_order48(_cfg: &CheckConfig) -> Result<Option<String>> {
    let mats = [
        matrix_of(&negation())?,
        matrix_of(&omega_twist())?,
        matrix_of(&order_four())?,
        matrix_of(&frobenius_map())?,
    ];
    let group = generate(&mats);
    if group.len() != 48 {
        return fail(format!(
            "generated group has order {}, expected 48",
            group.len()
        ));
    }
    Ok(None)
}

fn check_fgl_height(cfg: &CheckConfig) -> Result<Option<String>> {
    let f4 = F4Field;
    let law = from_curve(&f4, &f4.zero(), &f4.one(), cfg.cap.max(6))?;
    let two = law.n_series(2)?;
    if two.valuation() != Some(4) {
        return fail(format!(
            "2-series valuation {:?}, expected Some(4); series {}",
            two.valuation(),
            two.display()
        ));
    }
    if f4.try_invert(&two.coeff1(4)).is_err() {
        return fail("z^4 coefficient of the 2-series is not a unit".into());
    }
    Ok(None)
}

fn check_stab_omega(cfg: &CheckConfig) -> Result<Option<String>> {
    let e0 = E0Ring::with_precision(cfg.n, cfg.m);
    let act = omega_action(&e0, cfg.cap);
    if let Some((mono, left, right)) = pushforward_twist_defect(&act)? {
        return fail(format!(
            "pushforward vs twist at {mono:?}: {left} vs {right}"
        ));
    }
    if let Some((mono, left, right)) = action_homomorphism_defect(&act)? {
        return fail(format!(
            "homomorphism defect at {mono:?}: {left} vs {right}"
        ));
    }
    Ok(None)
}

fn check_stab_i_homomorphism(cfg: &CheckConfig) -> Result<Option<String>> {
    let e0 = E0Ring::with_precision(cfg.n, cfg.m);
    let act = order_four_action(&e0, cfg.cap)?;
    if let Some((mono, left, right)) = action_homomorphism_defect(&act)? {
        return fail(format!(
            "homomorphism defect at {mono:?}: {left} vs {right}"
        ));
    }
    let (a1, a3) = act.pushed_curve_params()?;
    let w = solve_implicit_w(&e0, &a1, &a3, cfg.cap)?;
    let residual = implicit_w_residual(&e0, &a1, &a3, &w)?;
    if !residual.is_zero() {
        return fail(format!("w(z) residual is {}", residual.display()));
    }
    Ok(None)
}

fn check_stab_beaudry(cfg: &CheckConfig) -> Result<Option<String>> {
    let e0 = E0Ring::with_precision(cfg.n, cfg.m);
    let act = order_four_action(&e0, cfg.cap)?;
    if !u1_transport_holds(&act)? {
        return fail("t0 u1 + (2/3) t1/t0 differs from h(u1) in E0".into());
    }
    // The same identity as untruncated rational functions of u1.
    let w = WittRing::new(cfg.n);
    let k = order_four_constants(&w);
    let u1 = RationalU1::from_poly(&w, U1Poly::new(vec![w.zero(), w.one()]));
    let two_thirds = w.mul(&w.element(2, 0), &w.try_invert(&w.element(3, 0))?);
    let lhs = k.l.mul(&w, &u1).sub(&w, &k.s.scale(&w, &two_thirds));
    let h = Mobius {
        a: w.one(),
        b: w.element(2, 0),
        c: w.one(),
        d: w.element(-1, 0),
    }
    .as_rational(&w);
    if !lhs.equals(&w, &h) {
        return fail("l u1 - (2/3) s differs from (u1+2)/(u1-1) as rational functions".into());
    }
    // The square fixes u1 and scales u by -1: inflate the u1-order so
    // the composite is exact, then inspect its Mobius part and t0.
    let big = E0Ring::with_precision(cfg.n, cfg.m + cfg.n);
    let act_big = order_four_action(&big, cfg.cap)?;
    let sq = compose(&act_big, &act_big)?;
    if !sq.mobius.acts_as_identity(&big.witt) {
        return fail("the square of the order-four action moves u1".into());
    }
    let minus_one = RationalU1::constant(&big.witt, big.witt.element(-1, 0));
    if !sq.t0.equals(&big.witt, &minus_one) {
        return fail("the square of the order-four action does not scale u by -1".into());
    }
    Ok(None)
}

fn check_binom_functional(cfg: &CheckConfig) -> Result<Option<String>> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let z2 = Z2Ring::new(16);
    let cap = 12;
    for _ in 0..50 {
        let alpha = u128::from(rng.gen::<u16>() & 0x3ff);
        let b = binomial_series(&z2, alpha, cap)?;
        if let Some((mono, left, right)) = functional_equation_defect(&b)? {
            return fail(format!(
                "alpha {alpha}: functional equation fails at {mono:?}: {left} vs {right}"
            ));
        }
    }
    // Separation: alpha = beta + odd * 2^s first differs mod 2 in
    // degree exactly 2^s.
    for s in 0..=4u32 {
        let beta = u128::from(rng.gen::<u16>());
        let alpha = beta + (u128::from(rng.gen_range(0u8..8) * 2 + 1) << s);
        let expected = 1u32 << s;
        match mod2_separation(alpha, beta, expected + 1)? {
            Some(d) if d == expected => {}
            got => {
                return fail(format!(
                    "separation of {alpha} and {beta}: got {got:?}, expected Some({expected})"
                ))
            }
        }
    }
    Ok(None)
}

fn check_cannibal_prop41(_cfg: &CheckConfig) -> Result<Option<String>> {
    for q in [-1i64, 3, 5] {
        if let Some((mono, left, right)) = spin_theta_closed_form_defect(q, 8)? {
            return fail(format!(
                "q = {q}: routes differ at {mono:?}: {left} vs {right}"
            ));
        }
    }
    let z2 = Z2Ring::new(12);
    let one = theta_k(&z2, 1, 8)?;
    if one
        .series
        .first_difference(&crate::series::TruncatedSeries::one(z2, 1, 8))
        .is_some()
    {
        return fail("theta^1 is not the constant 1".into());
    }
    Ok(None)
}

fn check_pairing_det(_cfg: &CheckConfig) -> Result<Option<String>> {
    let lat = RelationLattice::build();
    for a1 in -2..=2i64 {
        for a2 in -2..=2i64 {
            for b1 in -2..=2i64 {
                for b2 in -2..=2i64 {
                    if let Some((lhs, rhs)) = det_lemma_defect(&lat, (a1, a2), (b1, b2)) {
                        return fail(format!(
                            "det lemma fails for a=({a1},{a2}), b=({b1},{b2}): {lhs} vs {rhs}"
                        ));
                    }
                }
            }
        }
    }
    // f(xw,x)^2 = f(xS,xwS) in the quotient.
    let derived = Exponents::unit(1, 0).scale(2).sub(&Exponents::unit(2, 3));
    if !lat.reduce(&derived).is_zero() {
        return fail("f(xw,x)^2 = f(xS,xwS) fails in the lattice quotient".into());
    }
    // Twisting both slots by 1+S inverts every pairing value.
    let one_plus_s = ZQuat::one().add(&ZQuat::s());
    for row in twist_rows(&one_plus_s, -1) {
        let exps = Exponents(row);
        if !lat.reduce(&exps).is_zero() {
            return fail(format!("(1+S)-twist relation fails for {exps}"));
        }
    }
    if !lat.infinite_order(&Exponents::unit(0, 2)) {
        return fail("f(x,xS) has finite order in the quotient".into());
    }
    Ok(None)
}

fn check_qexp_phi(cfg: &CheckConfig) -> Result<Option<String>> {
    let qr = QRing::new(cfg.q);
    phi_agreement_defect(&qr, cfg.dx + 1)
}

fn check_final_binomial(_cfg: &CheckConfig) -> Result<Option<String>> {
    let z2 = Z2Ring::new(16);
    for d in [-5i64, -3, -1, 1, 3, 5] {
        let got = binomial_difference_coefficients(&z2, d, 11)?;
        let eff = got.effective_precision();
        if eff < 8 {
            return fail(format!("d = {d}: effective precision {eff} < 8"));
        }
        let modulus = BigInt::from(1u8) << eff;
        for k in 0..=10u32 {
            let expect = big_binomial(3 * d - 1, k) - big_binomial(d - 1, k);
            let want = ((expect % &modulus) + &modulus) % &modulus;
            let coeff = BigInt::from(got.series.coeff1(k));
            if coeff != want {
                return fail(format!(
                    "d = {d}, k = {k}: coefficient {coeff}, expected {want} mod 2^{eff}"
                ));
            }
        }
    }
    Ok(None)
}

fn big_binomial(a: i64, k: u32) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..i64::from(k) {
        num *= BigInt::from(a - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

fn check_q0_leading(cfg: &CheckConfig) -> Result<Option<String>> {
    let e0 = E0Ring::with_precision(cfg.n, cfg.m);
    let acts = [omega_action(&e0, cfg.cap), order_four_action(&e0, cfg.cap)?];
    for act in &acts {
        if let Some(msg) = q0_leading_defect(act)? {
            return fail(format!("{}: {msg}", act.name));
        }
    }
    Ok(None)
}
