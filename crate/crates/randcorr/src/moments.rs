//! Engines for the moments R^(t) of the randomized correlation function:
//! exact design sums, Monte Carlo estimation, exact monomial integration,
//! and Bell-diagonal closed forms.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::designs::spherical::{icosahedron_design, octahedron_design, SphericalDesign};
use crate::error::{Error, Result};
use crate::integrals::sphere_monomial_average;
use crate::qcore::density::DensityMatrix;
use crate::qcore::states::BellDiagonalParams;
use crate::qcore::tensor::{contract_first_axis, CorrelationTensor};

/// Which engine produced a [`MomentSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Engine {
    #[serde(rename = "design")]
    Design,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
    #[serde(rename = "monomial")]
    Monomial,
    #[serde(rename = "bd-closed-form")]
    BdClosedForm,
}

/// Standard errors of a Monte Carlo moment estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McStderr {
    pub r2: f64,
    pub r4: f64,
    pub r6: Option<f64>,
}

/// Bundle of the low even moments of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub r2: f64,
    pub r4: f64,
    pub r6: Option<f64>,
    pub engine: Engine,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nsamples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<McStderr>,
}

/// Exact design-based moment: the average of E^t over all combinations of
/// design vertices, one per qubit. Each per-qubit sum is halved via the
/// antipodal symmetry (E^t is even in every argument for even t).
pub fn moment_design(tensor: &CorrelationTensor, t: u32, design: &SphericalDesign) -> Result<f64> {
    if t == 0 || t % 2 != 0 {
        return Err(Error::OutOfRange(format!(
            "design engine needs a positive even moment order, got {t}"
        )));
    }
    if design.strength < t {
        return Err(Error::InsufficientStrength {
            have: design.strength,
            need: t,
        });
    }
    let points: Vec<[f64; 3]> = match design.antipodal_half() {
        Some(half) => half.iter().map(|p| p.as_array()).collect(),
        None => design.points.iter().map(|p| p.as_array()).collect(),
    };
    let n = tensor.nqubits();
    let cost = (points.len() as f64).powi(n as i32);
    if cost > 1e9 {
        return Err(Error::SumTooLarge(cost));
    }

    fn recurse(tensor: &[f64], points: &[[f64; 3]], t: i32) -> f64 {
        if tensor.len() == 3 {
            points
                .iter()
                .map(|u| {
                    (u[0] * tensor[0] + u[1] * tensor[1] + u[2] * tensor[2]).powi(t)
                })
                .sum()
        } else {
            points
                .iter()
                .map(|u| recurse(&contract_first_axis(tensor, u), points, t))
                .sum()
        }
    }

    let entries = tensor.entries();
    let total: f64 = if n == 1 {
        recurse(entries, &points, t as i32)
    } else {
        // parallel over the first qubit's settings; summed in listed order so
        // the result is independent of the thread partitioning
        let parts: Vec<f64> = points
            .par_iter()
            .map(|u| recurse(&contract_first_axis(entries, u), &points, t as i32))
            .collect();
        parts.iter().sum()
    };
    Ok(total / cost)
}

const MC_CHUNK: u64 = 4096;

/// Monte Carlo estimate of R^(t) from uniform direction tuples, with its
/// standard error. Deterministic for a fixed seed and independent of thread
/// count (each 4096-sample chunk runs its own counter-indexed stream and
/// chunks are reduced in order).
pub fn moment_mc(
    tensor: &CorrelationTensor,
    t: u32,
    nsamples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if nsamples < 100 {
        return Err(Error::OutOfRange(format!(
            "Monte Carlo needs at least 100 samples, got {nsamples}"
        )));
    }
    let n = tensor.nqubits();
    let nchunks = nsamples.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64)> = (0..nchunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let lo = chunk * MC_CHUNK;
            let hi = nsamples.min(lo + MC_CHUNK);
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            let mut dirs = vec![[0.0f64; 3]; n];
            for _ in lo..hi {
                for d in dirs.iter_mut() {
                    let z: f64 = rng.gen_range(-1.0..1.0);
                    let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
                    let s = (1.0 - z * z).sqrt();
                    *d = [s * phi.cos(), s * phi.sin(), z];
                }
                let e = tensor.correlation(&dirs).powi(t as i32);
                sum += e;
                sumsq += e * e;
            }
            (sum, sumsq)
        })
        .collect();
    let (sum, sumsq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), (s, q)| (a + s, b + q));
    let nf = nsamples as f64;
    let mean = sum / nf;
    let var = ((sumsq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    Ok((mean, (var / nf).sqrt()))
}

/// Exact moment by analytic integration of the monomial expansion of E^t.
///
/// Rather than enumerating index multisets, a dynamic program folds in the t
/// copies of the tensor one at a time, tracking for each qubit how many of
/// the processed copies picked x, y or z. The final weight of each count
/// pattern multiplies the product of closed-form sphere integrals.
pub fn moment_monomial(tensor: &CorrelationTensor, t: u32) -> Result<f64> {
    if !matches!(t, 2 | 4 | 6) {
        return Err(Error::Unsupported(format!(
            "monomial engine supports t in {{2, 4, 6}}, got {t}"
        )));
    }
    let n = tensor.nqubits();
    if n > 10 {
        return Err(Error::ExpansionTooLarge((n * 6) as f64));
    }
    // states per qubit after all t copies: C(t+2, 2) exponent patterns
    let per_qubit = ((t + 1) * (t + 2) / 2) as f64;
    let bound = per_qubit.powi(n as i32);
    if bound > 1e8 {
        return Err(Error::ExpansionTooLarge(bound));
    }

    // nonzero tensor entries with their per-qubit axis digits
    let nonzero: Vec<(Vec<u8>, f64)> = tensor
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(flat, v)| {
            let mut digits = vec![0u8; n];
            let mut rem = flat;
            for q in (0..n).rev() {
                digits[q] = (rem % 3) as u8;
                rem /= 3;
            }
            (digits, *v)
        })
        .collect();
    if nonzero.is_empty() {
        return Ok(0.0);
    }

    // key: 6 bits per qubit, cx in the low 3 and cy in the high 3;
    // cz is implied by the number of processed copies
    let mut states: HashMap<u64, f64> = HashMap::new();
    states.insert(0, 1.0);
    for _ in 0..t {
        let mut next: HashMap<u64, f64> = HashMap::with_capacity(states.len() * 4);
        for (&key, &weight) in &states {
            for (digits, tval) in &nonzero {
                let mut k = key;
                for (q, d) in digits.iter().enumerate() {
                    match d {
                        0 => k += 1 << (6 * q),
                        1 => k += 1 << (6 * q + 3),
                        _ => {}
                    }
                }
                *next.entry(k).or_insert(0.0) += weight * tval;
            }
        }
        states = next;
    }

    let mut total = 0.0;
    for (key, weight) in states {
        let mut factor = 1.0;
        for q in 0..n {
            let cx = ((key >> (6 * q)) & 0x7) as u32;
            let cy = ((key >> (6 * q + 3)) & 0x7) as u32;
            let cz = t - cx - cy;
            factor *= sphere_monomial_average(cx, cy, cz);
            if factor == 0.0 {
                break;
            }
        }
        total += weight * factor;
    }
    Ok(total)
}

/// Closed-form R^(2), R^(4), R^(6) of a Bell-diagonal state. Positivity of
/// the parameters is not required, which makes this usable for boundary
/// scans over the whole parameter cube.
pub fn bd_moments(c: &BellDiagonalParams) -> MomentSet {
    let p2: f64 = c.as_array().iter().map(|x| x.powi(2)).sum();
    let p4: f64 = c.as_array().iter().map(|x| x.powi(4)).sum();
    let p6: f64 = c.as_array().iter().map(|x| x.powi(6)).sum();
    let r2 = p2 / 9.0;
    let r4 = 2.0 / 75.0 * p4 + 27.0 / 25.0 * r2 * r2;
    let r6 = 8.0 / 735.0 * p6 - 486.0 / 245.0 * r2.powi(3) + 135.0 / 49.0 * r2 * r4;
    MomentSet {
        r2,
        r4,
        r6: Some(r6),
        engine: Engine::BdClosedForm,
        nsamples: None,
        stderr: None,
    }
}

/// Moment R^(t)_{alpha,beta} of the two-body marginal on the given qubit
/// pair: t = 2, 4 via the icosahedron design, t = 6 via monomial
/// integration (no strength-6 design is shipped).
pub fn two_body_moments(
    rho: &DensityMatrix,
    alpha: usize,
    beta: usize,
    t: u32,
) -> Result<f64> {
    let tensor = CorrelationTensor::two_body(rho, alpha, beta)?;
    match t {
        2 | 4 => moment_design(&tensor, t, &icosahedron_design()),
        6 => moment_monomial(&tensor, 6),
        other => Err(Error::Unsupported(format!(
            "two-body moment order {other}"
        ))),
    }
}

/// R^(2) and R^(4) by exact design sums (octahedron and icosahedron). r6 is
/// left unset: no strength-6 design is shipped, so sixth moments route
/// through [`moment_monomial`] (N <= 4) or [`bd_moments`].
pub fn moments_design(tensor: &CorrelationTensor) -> Result<MomentSet> {
    Ok(MomentSet {
        r2: moment_design(tensor, 2, &octahedron_design())?,
        r4: moment_design(tensor, 4, &icosahedron_design())?,
        r6: None,
        engine: Engine::Design,
        nsamples: None,
        stderr: None,
    })
}

/// R^(2), R^(4) and (when tractable) R^(6) by exact monomial integration.
pub fn moments_monomial(tensor: &CorrelationTensor) -> Result<MomentSet> {
    let r6 = match moment_monomial(tensor, 6) {
        Ok(v) => Some(v),
        Err(Error::ExpansionTooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(MomentSet {
        r2: moment_monomial(tensor, 2)?,
        r4: moment_monomial(tensor, 4)?,
        r6,
        engine: Engine::Monomial,
        nsamples: None,
        stderr: None,
    })
}

/// Monte Carlo R^(2), R^(4), R^(6) with standard errors, all from the same
/// sample budget (fresh streams per moment order).
pub fn moments_mc(tensor: &CorrelationTensor, nsamples: u64, seed: u64) -> Result<MomentSet> {
    let (r2, s2) = moment_mc(tensor, 2, nsamples, seed)?;
    let (r4, s4) = moment_mc(tensor, 4, nsamples, seed.wrapping_add(1))?;
    let (r6, s6) = moment_mc(tensor, 6, nsamples, seed.wrapping_add(2))?;
    Ok(MomentSet {
        r2,
        r4,
        r6: Some(r6),
        engine: Engine::MonteCarlo,
        nsamples: Some(nsamples),
        stderr: Some(McStderr {
            r2: s2,
            r4: s4,
            r6: Some(s6),
        }),
    })
}
