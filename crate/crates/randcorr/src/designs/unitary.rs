//! Single-qubit unitary t-designs: the Clifford group (3-design) and the
//! SL(2,F5) representation (5-design).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::operators::{pauli, Axis, CMatrix};
use crate::qcore::states::BlochDirection;

use super::spherical::SphericalDesign;

/// Finite set of 2x2 unitaries with declared design strength; no two
/// elements agree up to a global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryDesign {
    pub name: String,
    pub strength: u32,
    pub unitaries: Vec<CMatrix>,
}

impl UnitaryDesign {
    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }
}

fn unitarity_deviation(u: &CMatrix) -> f64 {
    (u.adjoint() * u - CMatrix::identity(2, 2)).norm()
}

/// Divides out the phase of the first entry with appreciable magnitude, so
/// matrices equal up to a global phase become elementwise equal.
fn phase_canonical(m: &CMatrix) -> CMatrix {
    for idx in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let e = m[idx];
        if e.norm() > 1e-6 {
            return m / (e / Complex64::new(e.norm(), 0.0));
        }
    }
    m.clone()
}

fn matrices_close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    (a - b).iter().all(|d| d.norm() < tol)
}

fn contains(set: &[CMatrix], m: &CMatrix, tol: f64) -> bool {
    set.iter().any(|s| matrices_close(s, m, tol))
}

/// Breadth-first closure of `generators` under multiplication. Equality is
/// elementwise at `tol`; with `mod_phase` each product is phase-canonicalized
/// first, so the result is the group modulo global phases.
fn close_group(
    generators: &[CMatrix],
    mod_phase: bool,
    tol: f64,
    limit: usize,
) -> Result<Vec<CMatrix>> {
    let canon = |m: &CMatrix| if mod_phase { phase_canonical(m) } else { m.clone() };
    let mut elements: Vec<CMatrix> = vec![canon(&CMatrix::identity(2, 2))];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in generators {
                let p = canon(&(f * g));
                if !contains(&elements, &p, tol) && !contains(&next, &p, tol) {
                    next.push(p);
                }
            }
        }
        elements.extend(next.iter().cloned());
        if elements.len() > limit {
            return Err(Error::ClosureSizeMismatch {
                got: elements.len(),
                expected: limit,
            });
        }
        frontier = next;
    }
    Ok(elements)
}

/// The 24-element single-qubit Clifford group, generated by the Hadamard
/// gate and the phase gate S = e^{i pi/4 sigma_z}, deduplicated up to global
/// phase. A unitary 3-design.
pub fn clifford_group_1q() -> Result<UnitaryDesign> {
    let s2 = 1.0 / 2.0_f64.sqrt();
    let h = CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(s2, 0.0),
            Complex64::new(s2, 0.0),
            Complex64::new(s2, 0.0),
            Complex64::new(-s2, 0.0),
        ],
    );
    let q = std::f64::consts::FRAC_PI_4;
    let s = CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::from_polar(1.0, q),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, -q),
        ],
    );
    let elements = close_group(&[h, s], true, 1e-8, 24)?;
    if elements.len() != 24 {
        return Err(Error::ClosureSizeMismatch {
            got: elements.len(),
            expected: 24,
        });
    }
    Ok(UnitaryDesign {
        name: "clifford-1q".into(),
        strength: 3,
        unitaries: elements,
    })
}

/// Sum of omega^k over the listed exponents, omega = e^{i 2 pi / 15}.
fn omega_sum(exponents: &[i32]) -> Complex64 {
    let base = 2.0 * std::f64::consts::PI / 15.0;
    exponents
        .iter()
        .map(|&k| Complex64::from_polar(1.0, base * k as f64))
        .sum()
}

fn sl2f5_generators() -> [CMatrix; 4] {
    let m = |a: Complex64, b: Complex64, c: Complex64, d: Complex64| {
        CMatrix::from_row_slice(2, 2, &[a, b, c, d])
    };
    [
        m(
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ),
        m(
            omega_sum(&[10]),
            omega_sum(&[11, 14]),
            -omega_sum(&[2, 8]),
            -omega_sum(&[10]),
        ),
        m(
            -omega_sum(&[11, 14]),
            omega_sum(&[6, 9]),
            -omega_sum(&[1, 2, 4, 7, 8, 13]),
            omega_sum(&[11, 14]),
        ),
        // The last entry is often quoted as -(omega^3 + omega^17), but that
        // matrix has a non-real trace with unit determinant, hence infinite
        // order, and the group never closes. With omega^12 the entry is an
        // order-10 element and closure yields exactly 120 matrices.
        m(
            Complex64::new(0.0, 0.0),
            omega_sum(&[5]),
            -omega_sum(&[10]),
            -omega_sum(&[3, 12]),
        ),
    ]
}

/// 2x2 Hermitian positive-definite square root and inverse square root via
/// eigendecomposition.
fn sqrt_and_inv_sqrt(p: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let eig = p.clone().symmetric_eigen();
    let mut sq = CMatrix::zeros(2, 2);
    let mut inv = CMatrix::zeros(2, 2);
    for k in 0..2 {
        let lam = eig.eigenvalues[k];
        if lam <= 0.0 {
            return Err(Error::Domain(format!(
                "matrix P is not positive-definite (eigenvalue {lam:.3e})"
            )));
        }
        let v = eig.eigenvectors.column(k);
        let proj = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj());
        sq += &proj * Complex64::new(lam.sqrt(), 0.0);
        inv += &proj * Complex64::new(1.0 / lam.sqrt(), 0.0);
    }
    Ok((sq, inv))
}

/// The 60-element unitary 5-design obtained from SL(2,F5): the four
/// generators are closed to the 120-element group, conjugated into a unitary
/// representation by sqrt(P) with P = sum S^dagger S, and deduplicated up to
/// global phase.
pub fn sl2f5_design() -> Result<UnitaryDesign> {
    let generators = sl2f5_generators();
    let group = close_group(&generators, false, 1e-8, 120)?;
    if group.len() != 120 {
        return Err(Error::ClosureSizeMismatch {
            got: group.len(),
            expected: 120,
        });
    }
    let mut p = CMatrix::zeros(2, 2);
    for s in &group {
        p += s.adjoint() * s;
    }
    let (sq, inv) = sqrt_and_inv_sqrt(&p)?;
    let mut unitaries: Vec<CMatrix> = Vec::with_capacity(60);
    for s in &group {
        let u = &sq * s * &inv;
        let dev = unitarity_deviation(&u);
        if dev > 1e-8 {
            return Err(Error::NonUnitaryResult(dev));
        }
        let c = phase_canonical(&u);
        if !contains(&unitaries, &c, 1e-8) {
            unitaries.push(c);
        }
    }
    if unitaries.len() != 60 {
        return Err(Error::DedupSizeMismatch {
            got: unitaries.len(),
            expected: 60,
        });
    }
    Ok(UnitaryDesign {
        name: "sl2f5".into(),
        strength: 5,
        unitaries,
    })
}

/// Bloch directions of U sigma_z U^dagger for each design element,
/// deduplicated at 1e-8. The spherical design inherits the unitary design's
/// strength.
pub fn project_to_sphere(design: &UnitaryDesign) -> SphericalDesign {
    let sz = pauli(Axis::Z);
    let mut points: Vec<BlochDirection> = Vec::new();
    for u in &design.unitaries {
        let m = u * &sz * u.adjoint();
        let dir = BlochDirection::normalized(
            (&m * pauli(Axis::X)).trace().re / 2.0,
            (&m * pauli(Axis::Y)).trace().re / 2.0,
            (&m * pauli(Axis::Z)).trace().re / 2.0,
        );
        let dup = points.iter().any(|p| {
            (p.x - dir.x).abs() < 1e-8 && (p.y - dir.y).abs() < 1e-8 && (p.z - dir.z).abs() < 1e-8
        });
        if !dup {
            points.push(dir);
        }
    }
    SphericalDesign {
        name: format!("{}-projected", design.name),
        strength: design.strength,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::spherical::verify_spherical_design;

    #[test]
    fn clifford_has_24_elements_and_is_closed() {
        let d = clifford_group_1q().unwrap();
        assert_eq!(d.len(), 24);
        for u in &d.unitaries {
            assert!(unitarity_deviation(u) < 1e-10);
        }
        // group property: products stay in the set up to phase
        for a in d.unitaries.iter().take(6) {
            for b in d.unitaries.iter().take(6) {
                let p = phase_canonical(&(a * b));
                assert!(contains(&d.unitaries, &p, 1e-8));
            }
        }
    }

    #[test]
    fn clifford_projects_to_octahedron() {
        let d = clifford_group_1q().unwrap();
        let s = project_to_sphere(&d);
        assert_eq!(s.len(), 6);
        for p in &s.points {
            let a = p.as_array();
            let biggest = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!((biggest - 1.0).abs() < 1e-10, "not a cardinal axis: {a:?}");
        }
        assert!(verify_spherical_design(&s.points, 3, 1e-10).pass);
    }

    #[test]
    fn sl2f5_pipeline_counts() {
        let d = sl2f5_design().unwrap();
        assert_eq!(d.len(), 60);
        for u in &d.unitaries {
            assert!(unitarity_deviation(u) < 1e-8);
        }
    }

    #[test]
    fn sl2f5_projects_to_icosidodecahedron() {
        let d = sl2f5_design().unwrap();
        let s = project_to_sphere(&d);
        assert_eq!(s.len(), 30);
        assert!(verify_spherical_design(&s.points, 5, 1e-8).pass);
        assert!(!verify_spherical_design(&s.points, 6, 1e-8).pass);
    }
}
