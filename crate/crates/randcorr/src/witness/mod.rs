//! Numerical optimization over the W class: the criterion constants chi, m,
//! b~, noise and amplitude thresholds for GHZ-type states, and the
//! brute-force Bell-diagonal boundary oracle.

pub mod nelder_mead;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::WClassCriterionParams;
use crate::designs::spherical::icosahedron_design;
use crate::error::{Error, Result};
use crate::moments::{bd_moments, moment_design};
use crate::qcore::states::{ghz, psi_theta, BellDiagonalParams, StandardFormParams};
use crate::qcore::tensor::CorrelationTensor;
use nelder_mead::nelder_mead;

/// Outcome of a multi-start maximization over the W class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub value: f64,
    pub argmax: StandardFormParams,
    pub restarts: usize,
    /// max - min over the restart optima; large values flag a rugged
    /// landscape (restarts stuck in distinct local maxima)
    pub spread: f64,
}

/// Which W-class criterion a threshold refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionKind {
    #[serde(rename = "r2-only")]
    R2Only,
    #[serde(rename = "line")]
    Line,
}

/// A detection threshold found by bisection (or closed form, in which case
/// the bracket width is 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub threshold: f64,
    pub criterion: CriterionKind,
    pub bracket_width: f64,
}

/// (r2, r4) of the W-class one-excitation state with raw (unnormalized,
/// sign-insensitive) amplitudes. r4 is skipped when not needed.
fn wclass_r2r4(n: usize, raw: &[f64], need_r4: bool) -> Result<(f64, f64)> {
    let params = StandardFormParams::normalized(raw, 0.0)?;
    let rho = crate::qcore::states::standard_form_state(n, &params, true)?;
    let tensor = CorrelationTensor::from_state(&rho);
    let r2 = tensor.norm_sqr() / 3.0_f64.powi(n as i32);
    let r4 = if need_r4 {
        moment_design(&tensor, 4, &icosahedron_design())?
    } else {
        0.0
    };
    Ok((r2, r4))
}

/// Multi-start Nelder-Mead maximization of `objective(r2, r4)` over W-class
/// pure states in the one-excitation standard form (N + 1 non-negative
/// amplitudes, normalized). Restart k runs on its own seeded stream, so the
/// result is deterministic and independent of thread count.
fn maximize_wclass<F>(
    n: usize,
    objective: F,
    need_r4: bool,
    restarts: usize,
    seed: u64,
) -> Result<OptResult>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if !(3..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "W-class optimization supports 3 <= N <= 8, got {n}"
        )));
    }
    let dim = n + 1;
    let run_batch = |lo: usize, hi: usize| -> Vec<(f64, Vec<f64>)> {
        (lo..hi)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64 + 1);
                let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect();
                let neg = |x: &[f64]| -> f64 {
                    match wclass_r2r4(n, x, need_r4) {
                        Ok((r2, r4)) => -objective(r2, r4),
                        Err(_) => f64::INFINITY,
                    }
                };
                let (x, fx) = nelder_mead(neg, &x0, 0.3, 800, 1e-14);
                (-fx, x)
            })
            .collect()
    };

    let mut results = run_batch(0, restarts);
    let spread_of = |rs: &[(f64, Vec<f64>)]| -> f64 {
        let lo = rs.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let hi = rs.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    let mut total = restarts;
    if spread_of(&results) > 1e-5 {
        log::warn!(
            "restart spread {:.3e} > 1e-5 for N = {n}; doubling restarts",
            spread_of(&results)
        );
        results.extend(run_batch(restarts, 2 * restarts));
        total = 2 * restarts;
    }
    let spread = spread_of(&results);
    let best = results
        .iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    let argmax = StandardFormParams::normalized(&best.1, 0.0)?;
    Ok(OptResult {
        value: best.0,
        argmax,
        restarts: total,
        spread,
    })
}

/// Maximum of R^(t) over W-class pure states, t in {2, 4}.
pub fn maximize_moment_wclass(n: usize, t: u32, restarts: usize, seed: u64) -> Result<OptResult> {
    match t {
        2 => maximize_wclass(n, |r2, _| r2, false, restarts, seed),
        4 => maximize_wclass(n, |_, r4| r4, true, restarts, seed),
        other => Err(Error::Unsupported(format!(
            "W-class moment maximization for t = {other}"
        ))),
    }
}

/// Derives the full line-criterion parameter set for N qubits: chi from the
/// R^(2) maximizer, the slope m through the (r2, r4) pairs of the two
/// moment maximizers, and the intercept b~ from a final maximization of
/// r4 - m r2 over the W class.
pub fn compute_line_params(n: usize, seed: u64) -> Result<WClassCriterionParams> {
    if !(3..=6).contains(&n) {
        return Err(Error::Unsupported(format!(
            "line criterion validity is only established for 3 <= N <= 6, got {n}"
        )));
    }
    let opt2 = maximize_moment_wclass(n, 2, 64, seed)?;
    let opt4 = maximize_moment_wclass(n, 4, 64, seed.wrapping_add(1))?;
    let lam2: Vec<f64> = opt2.argmax.lambdas.clone();
    let lam4: Vec<f64> = opt4.argmax.lambdas.clone();
    let (r2_a, r4_a) = wclass_r2r4(n, &lam2, true)?;
    let (r2_b, r4_b) = wclass_r2r4(n, &lam4, true)?;
    if (r2_a - r2_b).abs() < 1e-9 {
        return Err(Error::SlopeSignViolation(f64::NAN));
    }
    let m = (r4_b - r4_a) / (r2_b - r2_a);
    if m >= 0.0 {
        return Err(Error::SlopeSignViolation(m));
    }
    let optb = maximize_wclass(n, |r2, r4| r4 - m * r2, true, 64, seed.wrapping_add(2))?;
    Ok(WClassCriterionParams {
        nqubits: n as u32,
        chi: opt2.value,
        slope_m: m,
        intercept_btilde: optb.value,
    })
}

/// Exact (r2, r4) of the N-qubit GHZ state.
fn ghz_moments(n: usize) -> Result<(f64, f64)> {
    let tensor = CorrelationTensor::from_state(&ghz(n)?);
    let r2 = tensor.norm_sqr() / 3.0_f64.powi(n as i32);
    let r4 = moment_design(&tensor, 4, &icosahedron_design())?;
    Ok((r2, r4))
}

fn line_margin(params: &WClassCriterionParams, r2: f64, r4: f64) -> f64 {
    r4 - (params.slope_m * r2 + params.intercept_btilde)
}

/// Largest depolarizing-noise fraction p at which the noisy GHZ state is
/// still certified outside Conv(W). Uses the exact scaling of the GHZ
/// correlation tensor under white noise, R^(t)(p) = (1-p)^t R^(t)(0):
/// closed form for the r2-only criterion, bisection to 1e-10 for the line.
pub fn noise_threshold(
    params: &WClassCriterionParams,
    criterion: CriterionKind,
) -> Result<ThresholdResult> {
    let n = params.nqubits as usize;
    let (r2g, r4g) = ghz_moments(n)?;
    match criterion {
        CriterionKind::R2Only => {
            if r2g <= params.chi {
                return Err(Error::NotDetected);
            }
            Ok(ThresholdResult {
                threshold: 1.0 - (params.chi / r2g).sqrt(),
                criterion,
                bracket_width: 0.0,
            })
        }
        CriterionKind::Line => {
            let margin = |p: f64| {
                let s = 1.0 - p;
                line_margin(params, s * s * r2g, s.powi(4) * r4g)
            };
            if margin(0.0) <= 0.0 {
                return Err(Error::NotDetected);
            }
            let (mut lo, mut hi) = (0.0, 1.0);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                if margin(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(ThresholdResult {
                threshold: 0.5 * (lo + hi),
                criterion,
                bracket_width: hi - lo,
            })
        }
    }
}

/// Smallest amplitude angle theta at which cos(theta)|0..0> + sin(theta)|1..1>
/// is certified outside Conv(W); bisection on [0, pi/4] to 1e-10.
pub fn amplitude_threshold(
    params: &WClassCriterionParams,
    criterion: CriterionKind,
) -> Result<ThresholdResult> {
    let n = params.nqubits as usize;
    let ico = icosahedron_design();
    let margin = |theta: f64| -> Result<f64> {
        let tensor = CorrelationTensor::from_state(&psi_theta(n, theta)?);
        let r2 = tensor.norm_sqr() / 3.0_f64.powi(n as i32);
        Ok(match criterion {
            CriterionKind::R2Only => r2 - params.chi,
            CriterionKind::Line => {
                let r4 = moment_design(&tensor, 4, &ico)?;
                line_margin(params, r2, r4)
            }
        })
    };
    let quarter = std::f64::consts::FRAC_PI_4;
    if margin(quarter)? <= 0.0 {
        return Err(Error::NotDetected);
    }
    let (mut lo, mut hi) = (0.0, quarter);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdResult {
        threshold: 0.5 * (lo + hi),
        criterion,
        bracket_width: hi - lo,
    })
}

/// Which Bell-diagonal states a boundary scan samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryMode {
    #[serde(rename = "all")]
    All,
    #[serde(rename = "separable")]
    Separable,
    #[serde(rename = "entangled")]
    Entangled,
}

/// Extremal (r2, r4) samples observed in one r2 cell of a boundary scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCell {
    pub r2_lo: f64,
    pub r2_hi: f64,
    pub count: u64,
    /// sample with the smallest r4 in the cell, as (r2, r4)
    pub min: Option<(f64, f64)>,
    /// sample with the largest r4 in the cell, as (r2, r4)
    pub max: Option<(f64, f64)>,
}

const BF_CHUNK: u64 = 8192;

/// Brute-force oracle for the Bell-diagonal boundary curves: random
/// physical BD states (eigenvalues from a flat Dirichlet with a cycling
/// power transform q in {1, 3, 8} that biases toward faces and corners),
/// filtered by `mode`, binned into the r2 grid cells, tracking extremal r4.
///
/// `grid` lists ascending cell edges; samples outside [grid[0], grid[last]]
/// are dropped. Deterministic for a fixed seed (counter-indexed streams,
/// in-order merge).
pub fn bd_boundary_bruteforce(
    grid: &[f64],
    nsamples: u64,
    mode: BoundaryMode,
    seed: u64,
) -> Vec<BoundaryCell> {
    assert!(grid.len() >= 2 && grid.windows(2).all(|w| w[0] < w[1]));
    let ncells = grid.len() - 1;
    let empty: Vec<BoundaryCell> = (0..ncells)
        .map(|i| BoundaryCell {
            r2_lo: grid[i],
            r2_hi: grid[i + 1],
            count: 0,
            min: None,
            max: None,
        })
        .collect();

    let nchunks = nsamples.div_ceil(BF_CHUNK);
    let partials: Vec<Vec<BoundaryCell>> = (0..nchunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let mut cells = empty.clone();
            let lo = chunk * BF_CHUNK;
            let hi = nsamples.min(lo + BF_CHUNK);
            for i in lo..hi {
                let q = [1.0, 3.0, 8.0][(i % 3) as usize];
                // flat Dirichlet eigenvalues, sharpened by the power q
                let mut lam = [0.0f64; 4];
                let mut sum = 0.0;
                for l in lam.iter_mut() {
                    *l = (-f64::ln(rng.gen_range(f64::EPSILON..1.0))).powf(q);
                    sum += *l;
                }
                for l in lam.iter_mut() {
                    *l /= sum;
                }
                let c = BellDiagonalParams::new(
                    lam[1] + lam[2] - lam[0] - lam[3],
                    lam[1] + lam[3] - lam[0] - lam[2],
                    lam[2] + lam[3] - lam[0] - lam[1],
                );
                let keep = match mode {
                    BoundaryMode::All => true,
                    BoundaryMode::Separable => c.l1_norm() <= 1.0,
                    BoundaryMode::Entangled => c.l1_norm() > 1.0,
                };
                if !keep {
                    continue;
                }
                let m = bd_moments(&c);
                if m.r2 < grid[0] || m.r2 >= grid[ncells] {
                    continue;
                }
                let idx = match grid[..ncells]
                    .binary_search_by(|edge| edge.partial_cmp(&m.r2).unwrap())
                {
                    Ok(j) => j,
                    Err(j) => j - 1,
                };
                let cell = &mut cells[idx];
                cell.count += 1;
                if cell.min.is_none_or(|(_, r4)| m.r4 < r4) {
                    cell.min = Some((m.r2, m.r4));
                }
                if cell.max.is_none_or(|(_, r4)| m.r4 > r4) {
                    cell.max = Some((m.r2, m.r4));
                }
            }
            cells
        })
        .collect();

    let mut merged = empty;
    for part in partials {
        for (acc, cell) in merged.iter_mut().zip(part) {
            acc.count += cell.count;
            if let Some((r2, r4)) = cell.min {
                if acc.min.is_none_or(|(_, b)| r4 < b) {
                    acc.min = Some((r2, r4));
                }
            }
            if let Some((r2, r4)) = cell.max {
                if acc.max.is_none_or(|(_, b)| r4 > b) {
                    acc.max = Some((r2, r4));
                }
            }
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn chi_3_reproduced() {
        let opt = maximize_moment_wclass(3, 2, 16, 11).unwrap();
        assert_relative_eq!(opt.value, 11.0 / 81.0, epsilon = 1e-7);
    }

    #[test]
    fn r4_maximizer_n3_hits_product_corner() {
        // the W-class maximum of r4 for three qubits is the pure product
        // state at (1/9, 1/25)
        let opt = maximize_moment_wclass(3, 4, 16, 13).unwrap();
        assert_relative_eq!(opt.value, 1.0 / 25.0, epsilon = 1e-6);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let a = maximize_moment_wclass(3, 2, 8, 5).unwrap();
        let b = maximize_moment_wclass(3, 2, 8, 5).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.argmax.lambdas, b.argmax.lambdas);
    }

    #[test]
    fn ghz_scaling_thresholds_n3() {
        let p = WClassCriterionParams::shipped(3).unwrap();
        let r2only = noise_threshold(&p, CriterionKind::R2Only).unwrap();
        assert_relative_eq!(
            r2only.threshold,
            1.0 - (11.0_f64 / 12.0).sqrt(),
            epsilon = 1e-12
        );
        let line = noise_threshold(&p, CriterionKind::Line).unwrap();
        assert!(line.threshold > r2only.threshold);
        assert!(line.bracket_width <= 1e-10);
    }

    #[test]
    fn amplitude_threshold_brackets() {
        let p = WClassCriterionParams::shipped(3).unwrap();
        let th = amplitude_threshold(&p, CriterionKind::R2Only).unwrap();
        assert!(th.threshold > 0.0 && th.threshold < std::f64::consts::FRAC_PI_4);
        // monotone detection above the threshold
        use crate::criteria::wclass_r2_criterion;
        use crate::qcore::states::psi_theta;
        for i in 1..=20 {
            let theta = th.threshold
                + i as f64 / 20.0 * (std::f64::consts::FRAC_PI_4 - th.threshold - 1e-6);
            let t = CorrelationTensor::from_state(&psi_theta(3, theta).unwrap());
            let r2 = t.norm_sqr() / 27.0;
            assert_eq!(
                wclass_r2_criterion(&p, r2).verdict,
                crate::criteria::Verdict::OutsideWClass
            );
        }
    }

    #[test]
    fn boundary_bruteforce_small_run() {
        use crate::criteria::{f_lb, f_ub};
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 30.0).collect();
        let cells = bd_boundary_bruteforce(&grid, 60_000, BoundaryMode::All, 3);
        for cell in &cells {
            if let Some((r2, r4)) = cell.min {
                assert!(r4 >= f_lb(r2).unwrap() - 1e-9);
            }
            if let Some((r2, r4)) = cell.max {
                assert!(r4 <= f_ub(r2).unwrap() + 1e-9);
            }
        }
        // determinism
        let again = bd_boundary_bruteforce(&grid, 60_000, BoundaryMode::All, 3);
        assert_eq!(cells, again);
    }
}
