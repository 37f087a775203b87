//! Density matrices and partial traces.
//!
//! Basis convention: qubit 0 is the leftmost tensor factor, i.e. the most
//! significant bit of a computational-basis index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::operators::{
    hermitian_eigenvalues, hermiticity_deviation, qubit_count, Axis, CMatrix, CVector, N_MAX,
};

/// Dense N-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    nqubits: usize,
}

impl DensityMatrix {
    /// Wraps a matrix after checking dimension, trace and Hermiticity.
    /// Positivity is not checked here (it needs an eigendecomposition);
    /// call [`DensityMatrix::validate`] when that matters.
    pub fn new(mat: CMatrix) -> Result<Self> {
        let nqubits = qubit_count(mat.nrows())?;
        if nqubits > N_MAX {
            return Err(Error::DimensionOverflow {
                requested: nqubits,
                max: N_MAX,
            });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::OutOfRange(format!("trace {tr} != 1")));
        }
        let herm = hermiticity_deviation(&mat);
        if herm > 1e-10 {
            return Err(Error::OutOfRange(format!(
                "matrix is not Hermitian (deviation {herm:.3e})"
            )));
        }
        Ok(Self { mat, nqubits })
    }

    /// Projector onto a pure state; the vector is normalized first.
    pub fn from_pure(state: &CVector) -> Result<Self> {
        let norm = state.norm();
        if norm < 1e-14 {
            return Err(Error::OutOfRange("zero state vector".into()));
        }
        let v = state / Complex64::new(norm, 0.0);
        let mat = CMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj());
        Self::new(mat)
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Full state check: trace, Hermiticity and positivity at `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let tr = self.mat.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::OutOfRange(format!("trace {tr} != 1")));
        }
        let herm = hermiticity_deviation(&self.mat);
        if herm > tol {
            return Err(Error::OutOfRange(format!(
                "Hermiticity deviation {herm:.3e}"
            )));
        }
        let min_eig = hermitian_eigenvalues(&self.mat)[0];
        if min_eig < -tol {
            return Err(Error::NonPhysicalParams(min_eig));
        }
        Ok(())
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
        if self.nqubits != other.nqubits {
            return Err(Error::OutOfRange("qubit-count mismatch in mix".into()));
        }
        let l = Complex64::new(lambda, 0.0);
        let r = Complex64::new(1.0 - lambda, 0.0);
        DensityMatrix::new(&self.mat * l + &other.mat * r)
    }

    /// Row-major [re, im] pairs, the JSON interchange layout.
    pub fn to_flat(&self) -> Vec<[f64; 2]> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = self.mat[(i, j)];
                out.push([e.re, e.im]);
            }
        }
        out
    }

    /// Rebuilds a state from row-major [re, im] pairs.
    pub fn from_flat(entries: &[[f64; 2]]) -> Result<Self> {
        let dim2 = entries.len();
        let dim = (dim2 as f64).sqrt().round() as usize;
        if dim * dim != dim2 {
            return Err(Error::OutOfRange(format!(
                "{dim2} entries do not form a square matrix"
            )));
        }
        let mat = CMatrix::from_fn(dim, dim, |i, j| {
            let [re, im] = entries[i * dim + j];
            Complex64::new(re, im)
        });
        Self::new(mat)
    }

    /// Expectation value of the Pauli string given by `axes` (one axis per
    /// qubit). Exploits the one-nonzero-per-row structure of Pauli strings,
    /// so each call is O(2^N) rather than a matrix product.
    pub fn pauli_expectation(&self, axes: &[Axis]) -> f64 {
        assert_eq!(axes.len(), self.nqubits);
        let n = self.nqubits;
        let dim = self.dim();
        // bits that get flipped by sigma_x / sigma_y factors
        let mut flip: usize = 0;
        for (q, ax) in axes.iter().enumerate() {
            if matches!(ax, Axis::X | Axis::Y) {
                flip |= 1 << (n - 1 - q);
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            let c = r ^ flip;
            // P_{c,r} = product over qubits of the single-qubit Pauli entry
            let mut factor = Complex64::new(1.0, 0.0);
            for (q, ax) in axes.iter().enumerate() {
                let rbit = (r >> (n - 1 - q)) & 1;
                factor *= match ax {
                    Axis::X => Complex64::new(1.0, 0.0),
                    Axis::Y => {
                        if rbit == 0 {
                            Complex64::new(0.0, 1.0)
                        } else {
                            Complex64::new(0.0, -1.0)
                        }
                    }
                    Axis::Z => {
                        if rbit == 0 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(-1.0, 0.0)
                        }
                    }
                };
            }
            acc += self.mat[(r, c)] * factor;
        }
        acc.re
    }
}

/// Traces out every qubit not listed in `keep`. The result carries the kept
/// qubits in ascending index order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.nqubits();
    if keep.is_empty() {
        return Err(Error::OutOfRange("keep set must be nonempty".into()));
    }
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() {
        return Err(Error::OutOfRange("duplicate qubit index in keep set".into()));
    }
    for &q in &keep_sorted {
        if q >= n {
            return Err(Error::InvalidIndex {
                index: q,
                nqubits: n,
            });
        }
    }
    let m = keep_sorted.len();
    let traced: Vec<usize> = (0..n).filter(|q| !keep_sorted.contains(q)).collect();
    let dim_out = 1usize << m;
    let dim_tr = 1usize << traced.len();

    // assemble a full basis index from kept-space and traced-space indices
    let compose = |kept_idx: usize, tr_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, &q) in keep_sorted.iter().enumerate() {
            let bit = (kept_idx >> (m - 1 - pos)) & 1;
            full |= bit << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (tr_idx >> (traced.len() - 1 - pos)) & 1;
            full |= bit << (n - 1 - q);
        }
        full
    };

    let mut out = CMatrix::zeros(dim_out, dim_out);
    for i in 0..dim_out {
        for j in 0..dim_out {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..dim_tr {
                acc += rho.matrix()[(compose(i, e), compose(j, e))];
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::new(out)
}
