//! Checks that tie several modules together.

use shtuka::carlitz::{omega_carlitz, pi_tilde_product, theta_context};
use shtuka::genus0::GenusZeroContext;
use shtuka::series::TateSeries;

#[test]
fn degree_one_place_reproduces_carlitz_period() {
    for q in [2u32, 3] {
        let c = GenusZeroContext::new(q, &[q - 1, 1]).unwrap();
        let img = c.series_image(40).unwrap();
        let (period, _) = img.pi_tilde(30).unwrap();
        let direct = pi_tilde_product(&theta_context(q, &[]).unwrap(), 30).unwrap();
        let diff = period.pi_tilde.with_ctx(direct.ctx()).sub(&direct).unwrap();
        assert!(diff.valuation_bound() >= 30 - q as i64, "q = {q}");
    }
}

#[test]
fn series_json_round_trip() {
    let ctx = theta_context(3, &["t"]).unwrap();
    let w = omega_carlitz(&ctx, 25).unwrap();
    let back = TateSeries::from_json(&w.to_json()).unwrap();
    assert_eq!(back, w);
    assert_eq!(back.prec(), 25);
}

#[test]
fn all_small_places_build_sign_normalized_modules() {
    for (q, pinf) in [(2u32, vec![1u32, 1, 1]), (3, vec![1, 0, 1]), (2, vec![1, 1, 0, 1])] {
        let c = GenusZeroContext::new(q, &pinf).unwrap();
        let phi = c.drinfeld_coeffs(&c.theta()).unwrap();
        assert!(c.verify_phi(&phi).unwrap(), "q = {q}, pinf = {pinf:?}");
        assert_eq!(phi.op.degree(), Some(c.d() as usize));
        assert!(c.exp_coeffs_phi(3).unwrap().agree());
    }
}
