//! Full correlation tensors T_{i1..iN} = <sigma_{i1} x ... x sigma_{iN}>.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::density::{partial_trace, DensityMatrix};
use crate::qcore::operators::Axis;

/// Real tensor with 3^N entries indexed by an axis per qubit, stored
/// row-major with qubit 0 as the most significant base-3 digit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTensor {
    nqubits: usize,
    entries: Vec<f64>,
}

impl CorrelationTensor {
    pub fn new(nqubits: usize, entries: Vec<f64>) -> Self {
        assert_eq!(entries.len(), 3usize.pow(nqubits as u32));
        Self { nqubits, entries }
    }

    /// All N-body Pauli expectation values of `rho`.
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let n = rho.nqubits();
        let len = 3usize.pow(n as u32);
        let mut entries = vec![0.0; len];
        let mut axes = vec![Axis::X; n];
        for (flat, slot) in entries.iter_mut().enumerate() {
            let mut rem = flat;
            for q in (0..n).rev() {
                axes[q] = Axis::from_index(rem % 3);
                rem /= 3;
            }
            *slot = rho.pauli_expectation(&axes);
        }
        Self { nqubits: n, entries }
    }

    /// 3x3 tensor of <1 .. sigma_i .. sigma_j .. 1> on qubits `alpha`, `beta`.
    pub fn two_body(rho: &DensityMatrix, alpha: usize, beta: usize) -> Result<Self> {
        if alpha == beta {
            return Err(Error::OutOfRange("alpha and beta must differ".into()));
        }
        let reduced = partial_trace(rho, &[alpha.min(beta), alpha.max(beta)])?;
        let mut t = Self::from_state(&reduced);
        if alpha > beta {
            t = t.swap_pair();
        }
        Ok(t)
    }

    /// Transpose of a 3x3 two-body tensor (swaps the two qubit slots).
    fn swap_pair(&self) -> Self {
        assert_eq!(self.nqubits, 2);
        let mut entries = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                entries[j * 3 + i] = self.entries[i * 3 + j];
            }
        }
        Self { nqubits: 2, entries }
    }

    /// Diagonal two-body tensor diag(c1, c2, c3), the form every
    /// Bell-diagonal state and Dicke marginal reduces to.
    pub fn diagonal2(c: [f64; 3]) -> Self {
        let mut entries = vec![0.0; 9];
        for (i, v) in c.iter().enumerate() {
            entries[i * 3 + i] = *v;
        }
        Self { nqubits: 2, entries }
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, axes: &[Axis]) -> f64 {
        assert_eq!(axes.len(), self.nqubits);
        let flat = axes.iter().fold(0usize, |acc, ax| acc * 3 + ax.index());
        self.entries[flat]
    }

    /// Entrywise scaling; scales the moment R^(t) by s^t.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            nqubits: self.nqubits,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    /// Sum of squared entries, i.e. 3^N * R^(2).
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum()
    }

    /// Correlation function E(u_1, .., u_N) = sum_I T_I prod_n u_n^{(i_n)}.
    pub fn correlation(&self, directions: &[[f64; 3]]) -> f64 {
        assert_eq!(directions.len(), self.nqubits);
        let mut cur = self.entries.clone();
        for u in directions {
            cur = contract_first_axis(&cur, u);
        }
        cur[0]
    }
}

/// Contracts the leading base-3 axis of a flattened tensor with a direction.
pub(crate) fn contract_first_axis(tensor: &[f64], u: &[f64; 3]) -> Vec<f64> {
    let stride = tensor.len() / 3;
    let mut out = vec![0.0; stride];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = u[0] * tensor[j] + u[1] * tensor[stride + j] + u[2] * tensor[2 * stride + j];
    }
    out
}
