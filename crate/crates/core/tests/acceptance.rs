//! Acceptance battery: one test per headline property, each delegating
//! to the named check at its pinned configuration so the test list
//! reads as a pass/fail line per criterion.
//!
//! The default configuration is (N=12, M=8, cap=10, Q=6, Dx=9, seed=0);
//! checks with tighter internal requirements (binomial caps, sample
//! counts, the 625-case determinant sweep) pin those themselves.

use morava2::checks::{run_checks, CheckConfig, CheckStatus};

fn passes(id: &str) {
    let reports = run_checks(&[id.into()], &CheckConfig::default(), 1).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert!(
        matches!(r.status, CheckStatus::Pass),
        "{} failed: {}",
        r.check_id,
        r.details
    );
}

#[test]
fn criterion_01_curve_points_form_z3_squared() {
    passes("curve.points");
}

#[test]
fn criterion_02_curve_automorphisms_give_gl2_of_order_48() {
    passes("curve.gl2");
    passes("curve.order48");
}

#[test]
fn criterion_03_fgl_two_series_has_height_two() {
    passes("fgl.height");
}

#[test]
fn criterion_04_stab_omega_pushforward_equals_twist() {
    passes("stab.omega");
}

#[test]
fn criterion_05_stab_order_four_series_is_a_homomorphism() {
    passes("stab.i-homomorphism");
}

#[test]
fn criterion_06_stab_base_map_transport_identity() {
    passes("stab.beaudry");
}

#[test]
fn criterion_07_binomial_functional_equation_and_separation() {
    passes("binom.functional");
}

#[test]
fn criterion_08_spin_class_closed_form() {
    passes("cannibal.prop41");
}

#[test]
fn criterion_09_pairing_determinant_lemma() {
    passes("pairing.det");
}

#[test]
fn criterion_10_phi_product_equals_phi_exponential() {
    passes("qexp.phi");
}

#[test]
fn criterion_11_final_coefficients_are_binomial_differences() {
    passes("final.binomial");
}

#[test]
fn criterion_12_q0_leading_term_simplification() {
    passes("q0.leading");
}
