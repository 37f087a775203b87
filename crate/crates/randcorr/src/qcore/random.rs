//! Seeded random sampling of directions, states and unitaries.
//!
//! Every sampler takes an `&mut impl Rng`; [`seeded_rng`] builds the
//! deterministic generator used throughout the crate.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::qcore::density::DensityMatrix;
use crate::qcore::operators::{tensor_product, CMatrix, CVector};
use crate::qcore::states::{standard_form_state, BlochDirection, StandardFormParams};

/// Deterministic generator for a 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; one value per call keeps the stream layout simple
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Uniform direction on the unit sphere.
pub fn random_bloch_direction(rng: &mut impl Rng) -> BlochDirection {
    loop {
        let v = [
            standard_normal(rng),
            standard_normal(rng),
            standard_normal(rng),
        ];
        let n2 = v.iter().map(|x| x * x).sum::<f64>();
        if n2 > 1e-12 {
            return BlochDirection::normalized(v[0], v[1], v[2]);
        }
    }
}

/// Haar-random pure state of `n` qubits.
pub fn random_pure_state(n: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim = 1usize << n;
    let v = CVector::from_fn(dim, |_, _| complex_normal(rng));
    DensityMatrix::from_pure(&v)
}

/// Product of independent Haar-random single-qubit pure states.
pub fn random_product_state(n: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let mut v = CVector::from_fn(2, |_, _| complex_normal(rng));
    v /= Complex64::new(v.norm(), 0.0);
    for _ in 1..n {
        let mut w = CVector::from_fn(2, |_, _| complex_normal(rng));
        w /= Complex64::new(w.norm(), 0.0);
        v = v.kronecker(&w);
    }
    DensityMatrix::from_pure(&v)
}

/// Flat-Dirichlet mixture weights via normalized Exp(1) variates.
pub fn dirichlet_flat(k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k)
        .map(|_| -f64::ln(rng.gen_range(f64::EPSILON..1.0)))
        .collect();
    let s: f64 = w.iter().sum();
    for x in &mut w {
        *x /= s;
    }
    w
}

/// Convex mixture of `nterms` random product states, weights flat on the
/// simplex. Every sample is fully separable by construction.
pub fn random_separable_mixture(
    n: usize,
    nterms: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    assert!(nterms >= 1);
    let weights = dirichlet_flat(nterms, rng);
    let dim = 1usize << n;
    let mut acc = CMatrix::zeros(dim, dim);
    for w in weights {
        let p = random_product_state(n, rng)?;
        acc += p.into_matrix() * Complex64::new(w, 0.0);
    }
    DensityMatrix::new(acc)
}

/// Mixture of random W-class pure states (one-excitation standard form with
/// uniformly random non-negative amplitudes), weights flat on the simplex.
pub fn random_mixed_wclass(
    n: usize,
    nterms: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    assert!(nterms >= 1);
    let weights = dirichlet_flat(nterms, rng);
    let dim = 1usize << n;
    let mut acc = CMatrix::zeros(dim, dim);
    for w in weights {
        let raw: Vec<f64> = (0..n + 1).map(|_| standard_normal(rng).abs()).collect();
        let params = StandardFormParams::normalized(&raw, 0.0)?;
        let pure = standard_form_state(n, &params, true)?;
        acc += pure.into_matrix() * Complex64::new(w, 0.0);
    }
    DensityMatrix::new(acc)
}

/// Mixed state from the Hilbert-Schmidt measure: G G^dagger / tr, with G a
/// square Ginibre matrix.
pub fn random_density_matrix(n: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let dim = 1usize << n;
    let g = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr)
}

/// Haar-random 2x2 unitary: QR of a Ginibre matrix with the R diagonal
/// phases absorbed into Q.
pub fn random_unitary_2x2(rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(2, 2, |_, _| complex_normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..2 {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / Complex64::new(d.norm(), 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..2 {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-random local unitary U_1 (x) ... (x) U_N.
pub fn random_local_unitary(n: usize, rng: &mut impl Rng) -> Result<CMatrix> {
    let mut acc = random_unitary_2x2(rng);
    for _ in 1..n {
        acc = tensor_product(&acc, &random_unitary_2x2(rng))?;
    }
    Ok(acc)
}
