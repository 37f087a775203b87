//! Multi-qubit state constructors and parameter types.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::density::DensityMatrix;
use crate::qcore::operators::{pauli, tensor_product, Axis, CMatrix, CVector, N_MAX};
use crate::qcore::tensor::CorrelationTensor;

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochDirection {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochDirection {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if (n2 - 1.0).abs() > 1e-10 {
            return Err(Error::OutOfRange(format!(
                "Bloch direction has squared norm {n2}"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Self {
        let n = (x * x + y * y + z * z).sqrt();
        Self {
            x: x / n,
            y: y / n,
            z: z / n,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn negated(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Bell-diagonal state parameters (c1, c2, c3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    /// The four eigenvalues of the corresponding state.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        [
            (1.0 - c1 - c2 - c3) / 4.0,
            (1.0 + c1 + c2 - c3) / 4.0,
            (1.0 + c1 - c2 + c3) / 4.0,
            (1.0 - c1 + c2 + c3) / 4.0,
        ]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// l1 norm |c1| + |c2| + |c3|; separable iff <= 1.
    pub fn l1_norm(&self) -> f64 {
        self.c1.abs() + self.c2.abs() + self.c3.abs()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

/// Coefficients of the closed-form two-body Dicke marginal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DickeMarginalCoeffs {
    pub vplus: f64,
    pub vminus: f64,
    pub y: f64,
}

/// Standard-form amplitudes for pure-state parametrizations.
///
/// For N = 3 the five lambdas multiply |000>, |100> (with phase phi), |101>,
/// |110>, |111> in that order. For N > 3 only the W-class form is supported:
/// `lambdas[0]` multiplies |0..0> and `lambdas[i]` (i = 1..N) the basis state
/// with a single excitation on qubit i-1; `phi` must be 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardFormParams {
    pub lambdas: Vec<f64>,
    pub phi: f64,
}

impl StandardFormParams {
    pub fn new(lambdas: Vec<f64>, phi: f64) -> Result<Self> {
        if lambdas.iter().any(|l| *l < 0.0) {
            return Err(Error::OutOfRange("lambdas must be non-negative".into()));
        }
        if !(0.0..=std::f64::consts::PI).contains(&phi) {
            return Err(Error::OutOfRange(format!("phi {phi} outside [0, pi]")));
        }
        let n2: f64 = lambdas.iter().map(|l| l * l).sum();
        if (n2 - 1.0).abs() > 1e-10 {
            return Err(Error::Unnormalized(n2));
        }
        Ok(Self { lambdas, phi })
    }

    /// Normalizes a raw non-negative amplitude vector.
    pub fn normalized(raw: &[f64], phi: f64) -> Result<Self> {
        let n2: f64 = raw.iter().map(|l| l * l).sum();
        if n2 < 1e-20 {
            return Err(Error::Unnormalized(n2));
        }
        let n = n2.sqrt();
        Self::new(raw.iter().map(|l| (l / n).abs()).collect(), phi)
    }
}

fn check_nqubits(n: usize) -> Result<()> {
    if n == 0 || n > N_MAX {
        return Err(Error::DimensionOverflow {
            requested: n,
            max: N_MAX,
        });
    }
    Ok(())
}

/// rho_BD = (1/4) [ 1_4 + sum_j c_j sigma_j x sigma_j ].
pub fn bell_diagonal(params: &BellDiagonalParams) -> Result<DensityMatrix> {
    let min_eig = params.min_eigenvalue();
    if min_eig < -1e-10 {
        return Err(Error::NonPhysicalParams(min_eig));
    }
    let mut m = CMatrix::identity(4, 4);
    for (axis, c) in [Axis::X, Axis::Y, Axis::Z]
        .into_iter()
        .zip(params.as_array())
    {
        let p = pauli(axis);
        m += tensor_product(&p, &p)? * Complex64::new(c, 0.0);
    }
    DensityMatrix::new(m * Complex64::new(0.25, 0.0))
}

/// |Psi+> = (|01> + |10>) / sqrt(2).
pub fn bell_psi_plus() -> Result<DensityMatrix> {
    let mut v = CVector::zeros(4);
    v[1] = Complex64::new(1.0, 0.0);
    v[2] = Complex64::new(1.0, 0.0);
    DensityMatrix::from_pure(&v)
}

/// Dicke state |D^N_k>: equal superposition of all basis states with
/// k excitations.
pub fn dicke_state(n: usize, k: usize) -> Result<DensityMatrix> {
    check_nqubits(n)?;
    if k > n {
        return Err(Error::ExcitationOutOfRange {
            n: n as u64,
            k: k as u64,
        });
    }
    let dim = 1usize << n;
    let mut v = CVector::zeros(dim);
    for idx in 0..dim {
        if (idx as u64).count_ones() as usize == k {
            v[idx] = Complex64::new(1.0, 0.0);
        }
    }
    DensityMatrix::from_pure(&v)
}

/// Closed-form coefficients of the two-body reduced Dicke state.
///
/// v- and y follow the standard marginal formulas; v+ is fixed to
/// (N-k)(N-k-1) / (N(N-1)) so that v+ + v- + 2y = 1. (The more commonly
/// quoted (N-1)(N-k-1) / (N(N-1)) variant agrees for k <= 1 but breaks trace
/// normalization for k >= 2; the partial-trace cross-check in the test suite
/// pins the corrected form.)
pub fn dicke_marginal_coeffs(n: u64, k: u64) -> Result<DickeMarginalCoeffs> {
    if n < 2 || k > n {
        return Err(Error::ExcitationOutOfRange { n, k });
    }
    let nf = n as f64;
    let kf = k as f64;
    let denom = nf * (nf - 1.0);
    Ok(DickeMarginalCoeffs {
        vplus: (nf - kf) * (nf - kf - 1.0) / denom,
        vminus: kf * (kf - 1.0) / denom,
        y: kf * (nf - kf) / denom,
    })
}

/// Two-body reduced density matrix of |D^N_k> as a 4x4 state, valid for any
/// N (no dense N-qubit object is built).
pub fn dicke_two_body_marginal(n: u64, k: u64) -> Result<DensityMatrix> {
    let c = dicke_marginal_coeffs(n, k)?;
    let z = Complex64::new(0.0, 0.0);
    let mut m = CMatrix::from_element(4, 4, z);
    m[(0, 0)] = Complex64::new(c.vplus, 0.0);
    m[(3, 3)] = Complex64::new(c.vminus, 0.0);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        m[(i, j)] = Complex64::new(c.y, 0.0);
    }
    DensityMatrix::new(m)
}

/// Diagonal two-body correlation tensor of the Dicke marginal,
/// diag(2y, 2y, v+ + v- - 2y).
pub fn dicke_marginal_tensor(n: u64, k: u64) -> Result<CorrelationTensor> {
    let c = dicke_marginal_coeffs(n, k)?;
    Ok(CorrelationTensor::diagonal2([
        2.0 * c.y,
        2.0 * c.y,
        c.vplus + c.vminus - 2.0 * c.y,
    ]))
}

/// |GHZ_N> = (|0..0> + |1..1>) / sqrt(2).
pub fn ghz(n: usize) -> Result<DensityMatrix> {
    psi_theta(n, std::f64::consts::FRAC_PI_4)
}

/// p * 1/2^N + (1-p) |GHZ_N><GHZ_N|.
pub fn noisy_ghz(n: usize, p: f64) -> Result<DensityMatrix> {
    check_nqubits(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("noise parameter p = {p}")));
    }
    let dim = 1usize << n;
    let ghz = ghz(n)?;
    let mixed = CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
    DensityMatrix::new(mixed * Complex64::new(p, 0.0) + ghz.into_matrix() * Complex64::new(1.0 - p, 0.0))
}

/// |Psi(theta)> = cos(theta) |0..0> + sin(theta) |1..1>.
pub fn psi_theta(n: usize, theta: f64) -> Result<DensityMatrix> {
    check_nqubits(n)?;
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::OutOfRange(format!("theta = {theta}")));
    }
    let dim = 1usize << n;
    let mut v = CVector::zeros(dim);
    v[0] = Complex64::new(theta.cos(), 0.0);
    v[dim - 1] = Complex64::new(theta.sin(), 0.0);
    DensityMatrix::from_pure(&v)
}

/// |W_N> = |D^N_1>.
pub fn w_state(n: usize) -> Result<DensityMatrix> {
    dicke_state(n, 1)
}

/// Pure state from a standard-form parametrization.
///
/// With `wclass_only` the N = 3 form enforces lambda_4 = phi = 0; for N > 3
/// only the W-class one-excitation form exists here, so `wclass_only` is
/// implied and the parameter count must be N + 1.
pub fn standard_form_state(
    n: usize,
    params: &StandardFormParams,
    wclass_only: bool,
) -> Result<DensityMatrix> {
    check_nqubits(n)?;
    let n2: f64 = params.lambdas.iter().map(|l| l * l).sum();
    if (n2 - 1.0).abs() > 1e-10 {
        return Err(Error::Unnormalized(n2));
    }
    if n == 3 && !(wclass_only && params.lambdas.len() == 4) {
        if params.lambdas.len() != 5 {
            return Err(Error::OutOfRange(format!(
                "expected 5 lambdas for N = 3, got {}",
                params.lambdas.len()
            )));
        }
        if wclass_only && (params.lambdas[4].abs() > 1e-12 || params.phi.abs() > 1e-12) {
            return Err(Error::OutOfRange(
                "W-class restriction requires lambda_4 = phi = 0".into(),
            ));
        }
        let l = &params.lambdas;
        let mut v = CVector::zeros(8);
        v[0b000] = Complex64::new(l[0], 0.0);
        v[0b100] = Complex64::from_polar(l[1], params.phi);
        v[0b101] = Complex64::new(l[2], 0.0);
        v[0b110] = Complex64::new(l[3], 0.0);
        v[0b111] = Complex64::new(l[4], 0.0);
        return DensityMatrix::from_pure(&v);
    }
    // W-class one-excitation form (also accepted for N = 3 with 4 lambdas)
    if !wclass_only && n != 3 {
        return Err(Error::Unsupported(format!(
            "general standard form for N = {n} > 3; only the W-class form is implemented"
        )));
    }
    if params.lambdas.len() != n + 1 {
        return Err(Error::OutOfRange(format!(
            "W-class form for N = {n} expects {} lambdas, got {}",
            n + 1,
            params.lambdas.len()
        )));
    }
    if params.phi.abs() > 1e-12 {
        return Err(Error::OutOfRange(
            "W-class one-excitation form has no phase freedom".into(),
        ));
    }
    let dim = 1usize << n;
    let mut v = CVector::zeros(dim);
    v[0] = Complex64::new(params.lambdas[0], 0.0);
    for q in 0..n {
        // single excitation on qubit q (qubit 0 = most significant bit)
        v[1usize << (n - 1 - q)] = Complex64::new(params.lambdas[q + 1], 0.0);
    }
    DensityMatrix::from_pure(&v)
}

/// Bell-diagonal parameters with the same moments as an arbitrary two-qubit
/// state: the 3x3 correlation matrix is brought to diagonal form by local
/// rotations (via its SVD), and the twirl that removes local Bloch vectors
/// leaves exactly (c1, c2, c3).
///
/// Rotations on the Bloch sphere are special-orthogonal, so when the SVD
/// factors have determinant product -1 the sign is absorbed into c3.
pub fn bd_project(rho: &DensityMatrix) -> Result<BellDiagonalParams> {
    if rho.nqubits() != 2 {
        return Err(Error::OutOfRange(format!(
            "bd_project expects a 2-qubit state, got {} qubits",
            rho.nqubits()
        )));
    }
    let t = CorrelationTensor::from_state(rho);
    let e = t.entries();
    let c = Matrix3::from_row_slice(e);
    let det = c.determinant();
    let svd = c.svd(false, false);
    let mut s = [
        svd.singular_values[0],
        svd.singular_values[1],
        svd.singular_values[2],
    ];
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let sign = if det < 0.0 { -1.0 } else { 1.0 };
    Ok(BellDiagonalParams::new(s[0], s[1], sign * s[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bell_diagonal_limits() {
        let mixed = bell_diagonal(&BellDiagonalParams::new(0.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(mixed.matrix()[(0, 0)].re, 0.25, epsilon = 1e-14);

        let psi = bell_diagonal(&BellDiagonalParams::new(1.0, 1.0, -1.0)).unwrap();
        let reference = bell_psi_plus().unwrap();
        let diff = (psi.matrix() - reference.matrix()).norm();
        assert_relative_eq!(diff, 0.0, epsilon = 1e-12);

        // (1,1,1) has eigenvalue -1/2
        assert!(bell_diagonal(&BellDiagonalParams::new(1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn dicke_marginal_coefficients() {
        let c = dicke_marginal_coeffs(3, 1).unwrap();
        assert_relative_eq!(c.vplus, 1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(c.vminus, 0.0, epsilon = 1e-14);
        assert_relative_eq!(c.y, 1.0 / 3.0, epsilon = 1e-14);

        let c = dicke_marginal_coeffs(4, 2).unwrap();
        assert_relative_eq!(c.vminus, 1.0 / 6.0, epsilon = 1e-14);
        assert_relative_eq!(c.vplus + c.vminus + 2.0 * c.y, 1.0, epsilon = 1e-14);

        // trace normalization for a range of (N, k)
        for n in 2..40u64 {
            for k in 0..=n {
                let c = dicke_marginal_coeffs(n, k).unwrap();
                assert_relative_eq!(c.vplus + c.vminus + 2.0 * c.y, 1.0, epsilon = 1e-12);
                assert!(c.vplus >= -1e-15 && c.vminus >= -1e-15 && c.y >= -1e-15);
            }
        }
    }

    #[test]
    fn dicke_marginal_matches_partial_trace() {
        use crate::qcore::density::partial_trace;
        for n in 2..=6usize {
            for k in 0..=n {
                let full = dicke_state(n, k).unwrap();
                let red = partial_trace(&full, &[0, 1]).unwrap();
                let closed = dicke_two_body_marginal(n as u64, k as u64).unwrap();
                let diff = (red.matrix() - closed.matrix()).norm();
                assert!(diff < 1e-12, "N={n} k={k} diff={diff:.3e}");
            }
        }
    }

    #[test]
    fn noisy_ghz_and_psi_theta_limits() {
        let mixed = noisy_ghz(3, 1.0).unwrap();
        for i in 0..8 {
            assert_relative_eq!(mixed.matrix()[(i, i)].re, 0.125, epsilon = 1e-14);
        }
        let g = psi_theta(3, std::f64::consts::FRAC_PI_4).unwrap();
        let diff = (g.matrix() - ghz(3).unwrap().matrix()).norm();
        assert_relative_eq!(diff, 0.0, epsilon = 1e-13);
        assert!(psi_theta(3, 2.0).is_err());
        assert!(noisy_ghz(3, 1.5).is_err());
    }

    #[test]
    fn standard_form_basics() {
        let p = StandardFormParams::new(vec![1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        let rho = standard_form_state(3, &p, false).unwrap();
        assert_relative_eq!(rho.matrix()[(0, 0)].re, 1.0, epsilon = 1e-14);

        let bad = StandardFormParams {
            lambdas: vec![1.0, 1.0, 0.0, 0.0, 0.0],
            phi: 0.0,
        };
        assert!(standard_form_state(3, &bad, false).is_err());
    }

    #[test]
    fn bd_project_fixed_point() {
        let c = BellDiagonalParams::new(0.3, 0.2, 0.1);
        let rho = bell_diagonal(&c).unwrap();
        let out = bd_project(&rho).unwrap();
        let mut got = [out.c1.abs(), out.c2.abs(), out.c3.abs()];
        got.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_relative_eq!(got[0], 0.3, epsilon = 1e-12);
        assert_relative_eq!(got[1], 0.2, epsilon = 1e-12);
        assert_relative_eq!(got[2], 0.1, epsilon = 1e-12);
    }

    #[test]
    fn bd_project_wrong_dimension() {
        assert!(bd_project(&ghz(3).unwrap()).is_err());
    }
}
