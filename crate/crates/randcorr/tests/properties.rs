//! Soundness sweeps and structural invariants beyond the acceptance gate.

use randcorr::criteria::{
    criterion_f, wclass_line_criterion, wclass_r2_criterion, Verdict, WClassCriterionParams,
};
use randcorr::designs::icosahedron_design;
use randcorr::moments::{moment_design, moments_mc};
use randcorr::qcore::random::{random_mixed_wclass, random_separable_mixture, seeded_rng};
use randcorr::qcore::states::{ghz, noisy_ghz, psi_theta, standard_form_state, StandardFormParams};
use randcorr::qcore::tensor::CorrelationTensor;
use randcorr::witness::{amplitude_threshold, CriterionKind};
use rand::Rng;

/// (r2, r4) of a state from its tensor, exactly.
fn r2_r4(tensor: &CorrelationTensor) -> (f64, f64) {
    let r2 = tensor.norm_sqr() / 3.0_f64.powi(tensor.nqubits() as i32);
    let r4 = moment_design(tensor, 4, &icosahedron_design()).unwrap();
    (r2, r4)
}

#[test]
fn criterion_f_sound_on_separable_two_qubit_states() {
    let mut rng = seeded_rng(41);
    for i in 0..100_000u64 {
        let nterms = 1 + (i % 6) as usize;
        let rho = random_separable_mixture(2, nterms, &mut rng).unwrap();
        let tensor = CorrelationTensor::from_state(&rho);
        let (r2, r4) = r2_r4(&tensor);
        let v = criterion_f(r2, r4).unwrap();
        assert_ne!(
            v.verdict,
            Verdict::Entangled,
            "separable sample {i} flagged (r2={r2}, r4={r4})"
        );
    }
}

#[test]
fn wclass_criteria_sound_on_pure_wclass_states() {
    // 10^4 random W-class pure states never violate either bound
    let mut rng = seeded_rng(42);
    let p = WClassCriterionParams::shipped(3).unwrap();
    for i in 0..10_000u64 {
        let raw: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..1.0)).collect();
        let params = match StandardFormParams::normalized(&raw, 0.0) {
            Ok(p) => p,
            Err(_) => continue, // degenerate all-zero draw
        };
        let rho = standard_form_state(3, &params, true).unwrap();
        let (r2, r4) = r2_r4(&CorrelationTensor::from_state(&rho));
        assert!(r2 <= p.chi + 1e-9, "sample {i}: r2 = {r2} > chi");
        assert!(
            r4 <= p.slope_m * r2 + p.intercept_btilde + 1e-9,
            "sample {i}: line bound violated (r2={r2}, r4={r4})"
        );
    }
}

#[test]
fn wclass_criteria_sound_on_wclass_mixtures() {
    // random mixtures of W-class pure states, N = 3 and 4: never flagged
    let mut rng = seeded_rng(43);
    for n in [3usize, 4] {
        let p = WClassCriterionParams::shipped(n as u32).unwrap();
        for i in 0..10_000u64 {
            let nterms = 1 + (i % 5) as usize;
            let rho = random_mixed_wclass(n, nterms, &mut rng).unwrap();
            let (r2, r4) = r2_r4(&CorrelationTensor::from_state(&rho));
            assert_ne!(
                wclass_r2_criterion(&p, r2).verdict,
                Verdict::OutsideWClass,
                "N={n} mixture {i} flagged by the r2 criterion (r2={r2})"
            );
            assert_ne!(
                wclass_line_criterion(&p, r2, r4).unwrap().verdict,
                Verdict::OutsideWClass,
                "N={n} mixture {i} flagged by the line criterion (r2={r2}, r4={r4})"
            );
        }
    }
}

#[test]
fn noisy_ghz_moments_scale_as_one_minus_p_to_the_t() {
    let mut rng = seeded_rng(44);
    for n in [3usize, 4] {
        let clean = CorrelationTensor::from_state(&ghz(n).unwrap());
        let (r2c, r4c) = r2_r4(&clean);
        for _ in 0..20 {
            let p: f64 = rng.gen_range(0.0..1.0);
            let noisy = CorrelationTensor::from_state(&noisy_ghz(n, p).unwrap());
            let (r2n, r4n) = r2_r4(&noisy);
            let s = 1.0 - p;
            assert!((r2n - s.powi(2) * r2c).abs() < 1e-10);
            assert!((r4n - s.powi(4) * r4c).abs() < 1e-10);
        }
    }
}

#[test]
fn amplitude_detection_is_monotone_above_threshold() {
    let p = WClassCriterionParams::shipped(3).unwrap();
    let th = amplitude_threshold(&p, CriterionKind::R2Only).unwrap();
    let quarter = std::f64::consts::FRAC_PI_4;
    for i in 1..=1000 {
        let theta = th.threshold + (quarter - th.threshold - 1e-8) * i as f64 / 1000.0;
        let tensor = CorrelationTensor::from_state(&psi_theta(3, theta).unwrap());
        let r2 = tensor.norm_sqr() / 27.0;
        assert_eq!(
            wclass_r2_criterion(&p, r2).verdict,
            Verdict::OutsideWClass,
            "not detected at theta = {theta}"
        );
    }
}

#[test]
fn monte_carlo_is_deterministic_for_a_fixed_seed() {
    let rho = randcorr::qcore::random::random_density_matrix(3, &mut seeded_rng(45)).unwrap();
    let tensor = CorrelationTensor::from_state(&rho);
    let a = moments_mc(&tensor, 50_000, 7).unwrap();
    let b = moments_mc(&tensor, 50_000, 7).unwrap();
    assert_eq!(a, b);
}
