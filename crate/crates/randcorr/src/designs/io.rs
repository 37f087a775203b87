//! JSON serialization of designs.
//!
//! File format: `{ "name": string, "strength": int, "kind":
//! "spherical" | "unitary", "points": [[x, y, z], ..] }` for spherical
//! designs, or `"unitaries": [[[re, im] x 4], ..]` (row-major 2x2) for
//! unitary designs.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::operators::CMatrix;
use crate::qcore::states::BlochDirection;

use super::spherical::SphericalDesign;
use super::unitary::{project_to_sphere, UnitaryDesign};

/// Either kind of design, as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum Design {
    Spherical(SphericalDesign),
    Unitary(UnitaryDesign),
}

#[derive(Serialize, Deserialize)]
struct DesignFile {
    name: String,
    strength: u32,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[f64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unitaries: Option<Vec<Vec<[f64; 2]>>>,
}

/// The JSON document for a design, as written by [`save_design`].
pub fn design_json(design: &Design) -> String {
    serde_json::to_string_pretty(&to_file(design)).unwrap()
}

pub fn save_design(design: &Design, path: &Path) -> Result<()> {
    std::fs::write(path, design_json(design))?;
    Ok(())
}

fn to_file(design: &Design) -> DesignFile {
    match design {
        Design::Spherical(s) => DesignFile {
            name: s.name.clone(),
            strength: s.strength,
            kind: "spherical".into(),
            points: Some(s.points.iter().map(|p| [p.x, p.y, p.z]).collect()),
            unitaries: None,
        },
        Design::Unitary(u) => DesignFile {
            name: u.name.clone(),
            strength: u.strength,
            kind: "unitary".into(),
            points: None,
            unitaries: Some(
                u.unitaries
                    .iter()
                    .map(|m| {
                        [(0, 0), (0, 1), (1, 0), (1, 1)]
                            .into_iter()
                            .map(|idx| [m[idx].re, m[idx].im])
                            .collect()
                    })
                    .collect(),
            ),
        },
    }
}

/// Loads a design file and re-verifies it at its declared strength
/// (tolerance 1e-10 on the sphere; unitary designs are checked for
/// elementwise unitarity and via their projected point set).
pub fn load_design(path: &Path) -> Result<Design> {
    let text = std::fs::read_to_string(path)?;
    let file: DesignFile = serde_json::from_str(&text)?;
    match file.kind.as_str() {
        "spherical" => {
            let points = file
                .points
                .ok_or_else(|| Error::OutOfRange("spherical design without points".into()))?;
            let points = points
                .into_iter()
                .map(|[x, y, z]| BlochDirection::new(x, y, z))
                .collect::<Result<Vec<_>>>()?;
            let design = SphericalDesign {
                name: file.name,
                strength: file.strength,
                points,
            };
            let check = design.verify(1e-10);
            if !check.pass {
                return Err(Error::VerificationFailure {
                    name: design.name,
                    strength: design.strength,
                    deviation: check.max_deviation,
                });
            }
            Ok(Design::Spherical(design))
        }
        "unitary" => {
            let raw = file
                .unitaries
                .ok_or_else(|| Error::OutOfRange("unitary design without unitaries".into()))?;
            let mut unitaries = Vec::with_capacity(raw.len());
            for entries in raw {
                if entries.len() != 4 {
                    return Err(Error::OutOfRange(
                        "each unitary must have 4 complex entries".into(),
                    ));
                }
                let c: Vec<Complex64> =
                    entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                let m = CMatrix::from_row_slice(2, 2, &c);
                let dev = (m.adjoint() * &m - CMatrix::identity(2, 2)).norm();
                if dev > 1e-10 {
                    return Err(Error::NonUnitaryResult(dev));
                }
                unitaries.push(m);
            }
            let design = UnitaryDesign {
                name: file.name,
                strength: file.strength,
                unitaries,
            };
            let projected = project_to_sphere(&design);
            let check = projected.verify(1e-8);
            if !check.pass {
                return Err(Error::VerificationFailure {
                    name: design.name,
                    strength: design.strength,
                    deviation: check.max_deviation,
                });
            }
            Ok(Design::Unitary(design))
        }
        other => Err(Error::OutOfRange(format!("unknown design kind '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::spherical::{icosahedron_design, octahedron_design};

    #[test]
    fn spherical_round_trip_is_lossless() {
        let dir = std::env::temp_dir().join("randcorr-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ico.json");
        let original = icosahedron_design();
        save_design(&Design::Spherical(original.clone()), &path).unwrap();
        match load_design(&path).unwrap() {
            Design::Spherical(loaded) => assert_eq!(loaded, original),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn overdeclared_strength_fails_verification() {
        let dir = std::env::temp_dir().join("randcorr-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fake7.json");
        let mut d = octahedron_design();
        d.strength = 7;
        save_design(&Design::Spherical(d), &path).unwrap();
        match load_design(&path) {
            Err(Error::VerificationFailure { strength: 7, .. }) => {}
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn unitary_round_trip() {
        use crate::designs::unitary::clifford_group_1q;
        let dir = std::env::temp_dir().join("randcorr-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("clifford.json");
        let original = clifford_group_1q().unwrap();
        save_design(&Design::Unitary(original.clone()), &path).unwrap();
        match load_design(&path).unwrap() {
            Design::Unitary(loaded) => {
                assert_eq!(loaded.unitaries.len(), 24);
                for (a, b) in loaded.unitaries.iter().zip(&original.unitaries) {
                    assert!((a - b).norm() < 1e-15);
                }
            }
            _ => panic!("wrong kind"),
        }
    }
}
