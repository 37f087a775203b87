//! Moment-space boundary curves and the entanglement / W-class criteria
//! built on them.
//!
//! All decision rules are one-sided witnesses: a violated inequality proves
//! the property (entanglement, or being outside the W class); satisfaction
//! proves nothing. Points within [`DECISION_TOL`] of a boundary come back
//! inconclusive.

use serde::{Deserialize, Serialize};

use crate::designs::spherical::icosahedron_design;
use crate::error::{Error, Result};
use crate::moments::moment_design;
use crate::qcore::states::dicke_marginal_tensor;

/// Tolerance on every inequality decision.
pub const DECISION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "separable")]
    Separable,
    #[serde(rename = "entangled")]
    Entangled,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    #[serde(rename = "outside-wclass")]
    OutsideWClass,
    #[serde(rename = "nonphysical-point")]
    NonphysicalPoint,
}

/// A verdict together with the signed margin of the tested inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub verdict: Verdict,
    pub margin: f64,
}

fn check_r2_domain(r2: f64, hi: f64) -> Result<()> {
    if !(0.0..=hi + DECISION_TOL).contains(&r2) {
        return Err(Error::Domain(format!("r2 = {r2} outside [0, {hi}]")));
    }
    Ok(())
}

/// Lower boundary of all Bell-diagonal states: (9/5) r2^2 on [0, 1/3].
pub fn f_lb(r2: f64) -> Result<f64> {
    check_r2_domain(r2, 1.0 / 3.0)?;
    Ok(9.0 / 5.0 * r2 * r2)
}

/// Upper boundary of all Bell-diagonal states on [0, 1/3].
pub fn f_ub(r2: f64) -> Result<f64> {
    check_r2_domain(r2, 1.0 / 3.0)?;
    if r2 <= 1.0 / 9.0 {
        Ok(81.0 / 25.0 * r2 * r2)
    } else {
        Ok((1.0 - 6.0 * r2 + 54.0 * r2 * r2) / 25.0)
    }
}

/// Lower boundary of the separable Bell-diagonal states on [0, 1/3]; the
/// criterion function F compares r4 against this curve.
pub fn f_lb_sep(r2: f64) -> Result<f64> {
    check_r2_domain(r2, 1.0 / 3.0)?;
    if r2 <= 1.0 / 27.0 {
        Ok(9.0 / 5.0 * r2 * r2)
    } else if r2 <= 1.0 / 18.0 {
        let root = (27.0 * r2 - 1.0).max(0.0).sqrt().powi(3);
        Ok((2.0 * r2 + 54.0 * r2 * r2 - 4.0 * 2.0_f64.sqrt() / 81.0 * root - 7.0 / 81.0) / 25.0)
    } else {
        Ok((54.0 * r2 * r2 + 6.0 * r2 - 1.0 / 3.0) / 25.0)
    }
}

/// Upper boundary of the entangled Bell-diagonal states on [0, 1/3]. Note
/// the second piece is a valid but non-tight bound: above r2 = 1/9 the
/// attained maximum over entangled states coincides with [`f_ub`].
pub fn f_ub_ent(r2: f64) -> Result<f64> {
    check_r2_domain(r2, 1.0 / 3.0)?;
    if r2 <= 1.0 / 9.0 {
        Ok(81.0 / 25.0 * r2 * r2)
    } else {
        let root = (27.0 * r2 - 1.0).max(0.0).sqrt().powi(3);
        Ok((2.0 * r2 + 54.0 * r2 * r2 + 4.0 * 2.0_f64.sqrt() / 81.0 * root - 7.0 / 81.0) / 25.0)
    }
}

/// Upper boundary of the separable Bell-diagonal states, which equals
/// [`f_ub`] on its domain [0, 1/9] (no separable state exists beyond).
pub fn f_ub_sep(r2: f64) -> Result<f64> {
    check_r2_domain(r2, 1.0 / 9.0)?;
    f_ub(r2)
}

/// Two-qubit criterion F(r2, r4) = r4 − f_lb_sep(r2): entangled when F < 0,
/// or trivially when r2 exceeds the separable range r2 ≤ 1/9. Sufficient for
/// arbitrary two-qubit states, not only Bell-diagonal ones.
pub fn criterion_f(r2: f64, r4: f64) -> Result<RegionVerdict> {
    check_r2_domain(r2, 1.0 / 3.0)?;
    let margin = r4 - f_lb_sep(r2)?;
    let verdict = if margin < -DECISION_TOL || r2 > 1.0 / 9.0 + DECISION_TOL {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(RegionVerdict { verdict, margin })
}

/// Separating surface in (r2, r4, r6) space for Bell-diagonal states.
pub fn g_surface(r2: f64, r4: f64) -> f64 {
    (26244.0 * r2.powi(4) - 17496.0 * r2.powi(3) - 24300.0 * r2 * r2 * r4
        + 13500.0 * r2 * r4
        - 36.0 * r2
        + 5625.0 * r4 * r4
        + 150.0 * r4
        + 1.0)
        / 1960.0
}

/// Sixth-moment criterion, valid for Bell-diagonal states only: the surface
/// g separates separable from entangled exactly, so the verdict is two-sided.
pub fn criterion_r6(r2: f64, r4: f64, r6: f64) -> RegionVerdict {
    let margin = r6 - g_surface(r2, r4);
    let verdict = if margin > DECISION_TOL {
        Verdict::Entangled
    } else {
        Verdict::Separable
    };
    RegionVerdict { verdict, margin }
}

/// Single-moment criteria r2 ≤ 1/3^N and r4 ≤ 1/5^N for N-qubit states.
pub fn simple_bounds(n: u32, r2: f64, r4: f64) -> RegionVerdict {
    let m2 = r2 - 3.0_f64.powi(-(n as i32));
    let m4 = r4 - 5.0_f64.powi(-(n as i32));
    let margin = m2.max(m4);
    let verdict = if margin > DECISION_TOL {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    RegionVerdict { verdict, margin }
}

/// Pairwise-entanglement test for Dicke states of any size: the closed-form
/// two-body marginal tensor feeds the exact two-qubit design engine and the
/// criterion F. No dense N-qubit object is built, so N can reach 10^6.
pub fn dicke_detect(n: u64, k: u64) -> Result<RegionVerdict> {
    let tensor = dicke_marginal_tensor(n, k)?;
    let ico = icosahedron_design();
    let r2 = moment_design(&tensor, 2, &ico)?;
    let r4 = moment_design(&tensor, 4, &ico)?;
    criterion_f(r2, r4)
}

/// Constants of the W-class criteria for a fixed qubit number: the R^(2)
/// bound chi and the line r4 ≤ m r2 + b~.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WClassCriterionParams {
    pub nqubits: u32,
    pub chi: f64,
    pub slope_m: f64,
    pub intercept_btilde: f64,
}

impl WClassCriterionParams {
    /// Frozen constants for N = 3, 4, 5. chi values are exact rationals;
    /// m and b~ were computed once by the witness optimizer (64 restarts,
    /// spread < 1e-9) and are pinned by tests against a fresh optimization.
    pub fn shipped(nqubits: u32) -> Option<Self> {
        match nqubits {
            3 => Some(Self {
                nqubits: 3,
                chi: 11.0 / 81.0,
                slope_m: -14.0 / 375.0,
                intercept_btilde: 149.0 / 3375.0,
            }),
            4 => Some(Self {
                nqubits: 4,
                chi: 4.0 / 81.0,
                slope_m: -0.0504,
                intercept_btilde: 0.010097119342,
            }),
            5 => Some(Self {
                nqubits: 5,
                chi: 7.0 / 405.0,
                slope_m: -0.0398592,
                intercept_btilde: 0.002164569547,
            }),
            _ => None,
        }
    }
}

/// R^(2)-only W-class criterion: r2 > chi proves the state is outside the
/// convex hull of the W class.
pub fn wclass_r2_criterion(params: &WClassCriterionParams, r2: f64) -> RegionVerdict {
    let margin = r2 - params.chi;
    let verdict = if margin > DECISION_TOL {
        Verdict::OutsideWClass
    } else {
        Verdict::Inconclusive
    };
    RegionVerdict { verdict, margin }
}

/// Line criterion: r4 > m r2 + b~ proves the state is outside the convex
/// hull of the W class (valid only for negative slope).
pub fn wclass_line_criterion(
    params: &WClassCriterionParams,
    r2: f64,
    r4: f64,
) -> Result<RegionVerdict> {
    if params.slope_m >= 0.0 {
        return Err(Error::SlopeSignViolation(params.slope_m));
    }
    let margin = r4 - (params.slope_m * r2 + params.intercept_btilde);
    let verdict = if margin > DECISION_TOL {
        Verdict::OutsideWClass
    } else {
        Verdict::Inconclusive
    };
    Ok(RegionVerdict { verdict, margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn boundary_reference_points() {
        assert_relative_eq!(f_lb(1.0 / 3.0).unwrap(), 1.0 / 5.0, epsilon = 1e-14);
        assert_relative_eq!(f_ub(1.0 / 9.0).unwrap(), 1.0 / 25.0, epsilon = 1e-14);
        assert_relative_eq!(f_ub_sep(1.0 / 9.0).unwrap(), 1.0 / 25.0, epsilon = 1e-14);
        assert!(f_lb(0.5).is_err());
        assert!(f_ub_sep(0.2).is_err());
    }

    #[test]
    fn piecewise_continuity_at_breakpoints() {
        let eps = 1e-9;
        for (f, bp) in [
            (f_lb_sep as fn(f64) -> Result<f64>, 1.0 / 27.0),
            (f_lb_sep, 1.0 / 18.0),
            (f_ub, 1.0 / 9.0),
            (f_ub_ent, 1.0 / 9.0),
        ] {
            let lo = f(bp - eps).unwrap();
            let hi = f(bp + eps).unwrap();
            assert!((lo - hi).abs() < 1e-7, "jump at {bp}: {lo} vs {hi}");
        }
        assert_relative_eq!(f_lb_sep(1.0 / 27.0).unwrap(), 1.0 / 405.0, epsilon = 1e-12);
        assert_relative_eq!(f_lb_sep(1.0 / 18.0).unwrap(), 1.0 / 150.0, epsilon = 1e-12);
    }

    #[test]
    fn boundary_sandwich() {
        for i in 0..=100 {
            let r2 = i as f64 / 100.0 * (1.0 / 3.0);
            assert!(f_lb(r2).unwrap() <= f_ub(r2).unwrap() + 1e-12);
            if r2 <= 1.0 / 9.0 {
                assert!(f_lb(r2).unwrap() <= f_lb_sep(r2).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn criterion_f_reference_points() {
        // Bell state: far past the separable range
        let bell = criterion_f(1.0 / 3.0, 1.0 / 5.0).unwrap();
        assert_eq!(bell.verdict, Verdict::Entangled);
        // pure product state sits on the separable upper boundary
        let product = criterion_f(1.0 / 9.0, 1.0 / 25.0).unwrap();
        assert_eq!(product.verdict, Verdict::Inconclusive);
        // maximally mixed
        let mixed = criterion_f(0.0, 0.0).unwrap();
        assert_eq!(mixed.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn criterion_r6_reference_points() {
        // the Bell state sits exactly on the separating surface
        let bell = criterion_r6(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0);
        assert!(bell.margin.abs() < 1e-12);
        // an interior entangled state is strictly above it
        use crate::moments::bd_moments;
        use crate::qcore::states::BellDiagonalParams;
        let m = bd_moments(&BellDiagonalParams::new(0.95, 0.95, -0.95));
        let v = criterion_r6(m.r2, m.r4, m.r6.unwrap());
        assert_eq!(v.verdict, Verdict::Entangled);
        // c = (1,0,0): a boundary separable state
        let m = bd_moments(&BellDiagonalParams::new(1.0, 0.0, 0.0));
        let b = criterion_r6(m.r2, m.r4, m.r6.unwrap());
        assert_eq!(b.verdict, Verdict::Separable);
        assert!(b.margin.abs() < 1e-10, "boundary margin {}", b.margin);
    }

    #[test]
    fn simple_bounds_reference_points() {
        // GHZ3 has r2 = 4/27 > 1/27
        assert_eq!(
            simple_bounds(3, 4.0 / 27.0, 0.0).verdict,
            Verdict::Entangled
        );
        assert_eq!(simple_bounds(3, 0.0, 0.0).verdict, Verdict::Inconclusive);
        // W3 full-body moments: r2 = 11/81 > 1/27
        assert_eq!(
            simple_bounds(3, 11.0 / 81.0, 0.0).verdict,
            Verdict::Entangled
        );
    }

    #[test]
    fn dicke_detection_small_cases() {
        assert_eq!(dicke_detect(2, 1).unwrap().verdict, Verdict::Entangled);
        assert_eq!(dicke_detect(3, 1).unwrap().verdict, Verdict::Entangled);
        assert_eq!(dicke_detect(3, 2).unwrap().verdict, Verdict::Entangled);
        // k = 0: product state, nothing to detect
        assert_eq!(dicke_detect(5, 0).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn wclass_criteria_reference_points() {
        let p = WClassCriterionParams::shipped(3).unwrap();
        // GHZ3: r2 = 4/27 = 12/81 > 11/81
        let v = wclass_r2_criterion(&p, 4.0 / 27.0);
        assert_eq!(v.verdict, Verdict::OutsideWClass);
        // W3 sits exactly on the bound
        let w = wclass_r2_criterion(&p, 11.0 / 81.0);
        assert_eq!(w.verdict, Verdict::Inconclusive);
        // maximally mixed passes the line trivially
        let line = wclass_line_criterion(&p, 0.0, 0.0).unwrap();
        assert_eq!(line.verdict, Verdict::Inconclusive);
        // invalid slope is rejected
        let bad = WClassCriterionParams {
            slope_m: 0.1,
            ..p
        };
        assert!(wclass_line_criterion(&bad, 0.0, 0.0).is_err());
    }

    #[test]
    fn bd_verdicts_match_exact_rule() {
        use crate::moments::bd_moments;
        use crate::qcore::random::seeded_rng;
        use crate::qcore::states::BellDiagonalParams;
        use rand::Rng;
        let mut rng = seeded_rng(2024);
        let mut checked = 0;
        while checked < 2000 {
            let c = BellDiagonalParams::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if !c.is_physical(0.0) {
                continue;
            }
            checked += 1;
            let m = bd_moments(&c);
            let sep = c.l1_norm() <= 1.0;
            // criterion F never flags a separable state
            let f = criterion_f(m.r2, m.r4).unwrap();
            if sep {
                assert_ne!(f.verdict, Verdict::Entangled, "c = {c:?}");
            }
            // r6 criterion agrees with the exact rule outside a 1e-8 band
            if (c.l1_norm() - 1.0).abs() > 1e-8 {
                let v = criterion_r6(m.r2, m.r4, m.r6.unwrap());
                let expect = if sep { Verdict::Separable } else { Verdict::Entangled };
                assert_eq!(v.verdict, expect, "c = {c:?} margin {}", v.margin);
            }
        }
    }
}
