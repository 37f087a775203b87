//! Closed-form integrals of monomials over the unit sphere.
//!
//! Every exponent that occurs in a moment computation is an integer, so the
//! Euler gamma function is only ever needed at integer and half-integer
//! arguments. Those values are computed exactly from factorials instead of a
//! general-purpose gamma routine, which keeps the sphere averages accurate to
//! the last ulp.

use std::f64::consts::PI;

/// Gamma(half / 2) for `half >= 1`.
///
/// Gamma(k) = (k-1)! and Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!).
pub fn gamma_half(half: u32) -> f64 {
    assert!(half >= 1, "gamma argument must be positive");
    if half % 2 == 0 {
        let k = half / 2; // Gamma(k)
        (1..k).fold(1.0, |acc, i| acc * i as f64)
    } else {
        let k = (half - 1) / 2; // Gamma(k + 1/2)
        let mut v = PI.sqrt();
        for i in 0..k {
            v *= i as f64 + 0.5;
        }
        v
    }
}

/// Integral over theta in [0, pi] of sin^a(theta) cos^b(theta) d(theta).
pub fn theta_integral(a: u32, b: u32) -> f64 {
    if b % 2 == 1 {
        return 0.0;
    }
    gamma_half(a + 1) * gamma_half(b + 1) / gamma_half(a + b + 2)
}

/// Integral over phi in [0, 2 pi) of cos^a(phi) sin^b(phi) d(phi).
pub fn phi_integral(a: u32, b: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 {
        return 0.0;
    }
    2.0 * gamma_half(a + 1) * gamma_half(b + 1) / gamma_half(a + b + 2)
}

/// Normalized sphere average of the monomial x^a y^b z^c:
/// (1 / 4 pi) * Int_{S^2} u_x^a u_y^b u_z^c dOmega.
///
/// In spherical coordinates x = sin(theta) cos(phi), y = sin(theta) sin(phi),
/// z = cos(theta), so the average factorizes into a theta and a phi integral.
pub fn sphere_monomial_average(a: u32, b: u32, c: u32) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    theta_integral(a + b + 1, c) * phi_integral(a, b) / (4.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_at_small_arguments() {
        assert_relative_eq!(gamma_half(2), 1.0); // Gamma(1)
        assert_relative_eq!(gamma_half(8), 6.0); // Gamma(4) = 3!
        assert_relative_eq!(gamma_half(1), PI.sqrt()); // Gamma(1/2)
        assert_relative_eq!(gamma_half(3), PI.sqrt() / 2.0); // Gamma(3/2)
        assert_relative_eq!(gamma_half(5), 0.75 * PI.sqrt()); // Gamma(5/2)
    }

    #[test]
    fn low_order_sphere_averages() {
        assert_relative_eq!(sphere_monomial_average(0, 0, 0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_average(2, 0, 0), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_average(0, 0, 4), 1.0 / 5.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_average(2, 2, 0), 1.0 / 15.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_average(2, 2, 2), 1.0 / 105.0, max_relative = 1e-14);
        assert_relative_eq!(sphere_monomial_average(0, 0, 6), 1.0 / 7.0, max_relative = 1e-15);
        assert_eq!(sphere_monomial_average(1, 0, 0), 0.0);
        assert_eq!(sphere_monomial_average(1, 2, 1), 0.0);
    }

    #[test]
    fn averages_match_numerical_quadrature() {
        // midpoint rule in (z, phi), fine enough for a 1e-6 cross-check
        for &(a, b, c) in &[(2u32, 0u32, 2u32), (4, 2, 0), (2, 2, 2), (0, 4, 2)] {
            let nz = 2000;
            let np = 2000;
            let mut sum = 0.0;
            for i in 0..nz {
                let z: f64 = -1.0 + (i as f64 + 0.5) * 2.0 / nz as f64;
                let s = (1.0 - z * z).sqrt();
                for j in 0..np {
                    let p = (j as f64 + 0.5) * 2.0 * PI / np as f64;
                    sum += (s * p.cos()).powi(a as i32)
                        * (s * p.sin()).powi(b as i32)
                        * z.powi(c as i32);
                }
            }
            let avg = sum / (nz * np) as f64;
            assert_relative_eq!(
                sphere_monomial_average(a, b, c),
                avg,
                epsilon = 1e-6
            );
        }
    }
}
