//! Randomized structural invariants via proptest.

use proptest::prelude::*;

use randcorr::integrals::sphere_monomial_average;
use randcorr::moments::{bd_moments, moment_monomial};
use randcorr::qcore::states::{BellDiagonalParams, BlochDirection};
use randcorr::qcore::tensor::CorrelationTensor;

/// Physical Bell-diagonal parameters from four non-negative weights.
fn bd_params() -> impl Strategy<Value = BellDiagonalParams> {
    proptest::array::uniform4(0.0f64..1.0)
        .prop_filter("nonzero", |w| w.iter().sum::<f64>() > 1e-6)
        .prop_map(|w| {
            let s: f64 = w.iter().sum();
            let lam: Vec<f64> = w.iter().map(|x| x / s).collect();
            BellDiagonalParams::new(
                lam[1] + lam[2] - lam[0] - lam[3],
                lam[1] + lam[3] - lam[0] - lam[2],
                lam[2] + lam[3] - lam[0] - lam[1],
            )
        })
}

proptest! {
    #[test]
    fn bd_r2_equals_tensor_norm_over_nine(c in bd_params()) {
        let m = bd_moments(&c);
        let [c1, c2, c3] = c.as_array();
        let direct = (c1 * c1 + c2 * c2 + c3 * c3) / 9.0;
        prop_assert!((m.r2 - direct).abs() < 1e-12);
    }

    #[test]
    fn bd_closed_form_matches_monomial_oracle(c in bd_params()) {
        let m = bd_moments(&c);
        let tensor = CorrelationTensor::diagonal2(c.as_array());
        prop_assert!((m.r2 - moment_monomial(&tensor, 2).unwrap()).abs() < 1e-12);
        prop_assert!((m.r4 - moment_monomial(&tensor, 4).unwrap()).abs() < 1e-12);
        prop_assert!((m.r6.unwrap() - moment_monomial(&tensor, 6).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn moments_scale_with_the_tensor(c in bd_params(), s in -1.5f64..1.5) {
        let tensor = CorrelationTensor::diagonal2(c.as_array());
        let scaled = tensor.scaled(s);
        for t in [2u32, 4, 6] {
            let base = moment_monomial(&tensor, t).unwrap();
            let got = moment_monomial(&scaled, t).unwrap();
            prop_assert!((got - s.powi(t as i32) * base).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_direction_is_unit(x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0) {
        prop_assume!(x * x + y * y + z * z > 1e-12);
        let d = BlochDirection::normalized(x, y, z);
        let n = d.x * d.x + d.y * d.y + d.z * d.z;
        prop_assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn odd_sphere_monomials_average_to_zero(a in 0u32..4, b in 0u32..4, c in 0u32..4) {
        let avg = sphere_monomial_average(a, b, c);
        if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
            prop_assert_eq!(avg, 0.0);
        } else {
            prop_assert!(avg > 0.0);
        }
    }
}
