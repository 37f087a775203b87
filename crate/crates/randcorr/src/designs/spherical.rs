//! Spherical t-designs on the Bloch sphere.

use serde::{Deserialize, Serialize};

use crate::integrals::sphere_monomial_average;
use crate::qcore::states::BlochDirection;

/// Finite point set on S^2 that reproduces sphere averages of all
/// polynomials up to the declared degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalDesign {
    pub name: String,
    pub strength: u32,
    pub points: Vec<BlochDirection>,
}

/// Outcome of [`verify_spherical_design`]: worst monomial deviation and the
/// verdict at the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignCheck {
    pub pass: bool,
    pub max_deviation: f64,
}

impl SphericalDesign {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn verify(&self, tol: f64) -> DesignCheck {
        verify_spherical_design(&self.points, self.strength, tol)
    }

    /// One representative per antipodal pair, or `None` if the point set is
    /// not antipodally symmetric (at 1e-10). For even-degree polynomials the
    /// average over the halved set equals the full design average.
    pub fn antipodal_half(&self) -> Option<Vec<BlochDirection>> {
        let mut taken = vec![false; self.points.len()];
        let mut half = Vec::with_capacity(self.points.len() / 2);
        for i in 0..self.points.len() {
            if taken[i] {
                continue;
            }
            let neg = self.points[i].negated();
            let partner = (i + 1..self.points.len()).find(|&j| {
                !taken[j]
                    && (self.points[j].x - neg.x).abs() < 1e-10
                    && (self.points[j].y - neg.y).abs() < 1e-10
                    && (self.points[j].z - neg.z).abs() < 1e-10
            })?;
            taken[i] = true;
            taken[partner] = true;
            half.push(self.points[i]);
        }
        Some(half)
    }
}

/// The six directions {+-e_x, +-e_y, +-e_z}: a 3-design.
pub fn octahedron_design() -> SphericalDesign {
    let mut points = Vec::with_capacity(6);
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 3];
            v[i] = s;
            points.push(BlochDirection::new(v[0], v[1], v[2]).unwrap());
        }
    }
    SphericalDesign {
        name: "octahedron".into(),
        strength: 3,
        points,
    }
}

/// The twelve icosahedron vertices (0, +-1, +-phi) cycled and normalized:
/// a 5-design.
pub fn icosahedron_design() -> SphericalDesign {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut points = Vec::with_capacity(12);
    for sa in [1.0, -1.0] {
        for sb in [1.0, -1.0] {
            points.push(BlochDirection::normalized(0.0, sa, sb * phi));
            points.push(BlochDirection::normalized(sa, sb * phi, 0.0));
            points.push(BlochDirection::normalized(sb * phi, 0.0, sa));
        }
    }
    SphericalDesign {
        name: "icosahedron".into(),
        strength: 5,
        points,
    }
}

/// Checks the defining property on the monomial basis of all polynomials of
/// degree at most `t`: for every x^a y^b z^c with a + b + c <= t, the point
/// average must match the exact sphere integral.
pub fn verify_spherical_design(points: &[BlochDirection], t: u32, tol: f64) -> DesignCheck {
    assert!(!points.is_empty(), "empty point set");
    let mut max_deviation: f64 = 0.0;
    for a in 0..=t {
        for b in 0..=(t - a) {
            for c in 0..=(t - a - b) {
                let exact = sphere_monomial_average(a, b, c);
                let avg: f64 = points
                    .iter()
                    .map(|p| {
                        p.x.powi(a as i32) * p.y.powi(b as i32) * p.z.powi(c as i32)
                    })
                    .sum::<f64>()
                    / points.len() as f64;
                max_deviation = max_deviation.max((avg - exact).abs());
            }
        }
    }
    DesignCheck {
        pass: max_deviation < tol,
        max_deviation,
    }
}
