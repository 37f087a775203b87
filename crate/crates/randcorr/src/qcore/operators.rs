//! Dense complex operators on small multi-qubit Hilbert spaces.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, the working representation for every operator.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector, used for pure states.
pub type CVector = nalgebra::DVector<Complex64>;

/// Hard cap on dense operator size: a 2^12 x 2^12 complex matrix is 256 MiB
/// worth of products during a single multiply, which is where dense stops
/// being the right representation.
pub const N_MAX: usize = 12;

/// Measurement axis on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        match i {
            0 => Axis::X,
            1 => Axis::Y,
            2 => Axis::Z,
            _ => panic!("axis index {i} out of range"),
        }
    }
}

/// The 2x2 Pauli matrix for the given axis.
pub fn pauli(axis: Axis) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::X => CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Axis::Y => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Axis::Z => CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    }
}

/// 2x2 identity.
pub fn identity2() -> CMatrix {
    CMatrix::identity(2, 2)
}

/// Kronecker product a (x) b, refusing results beyond `N_MAX` qubits.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let dim = a.nrows() * b.nrows();
    let max_dim = 1usize << N_MAX;
    if dim > max_dim {
        return Err(Error::DimensionOverflow {
            requested: dim.trailing_zeros() as usize,
            max: N_MAX,
        });
    }
    Ok(a.kronecker(b))
}

/// Kronecker product of a list of factors, left to right.
pub fn tensor_product_all(factors: &[CMatrix]) -> Result<CMatrix> {
    let mut it = factors.iter();
    let first = it.next().expect("at least one factor");
    let mut acc = first.clone();
    for f in it {
        acc = tensor_product(&acc, f)?;
    }
    Ok(acc)
}

/// Max-norm deviation from Hermiticity.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Number of qubits for a 2^N-dimensional operator; errors on non-powers of two.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::OutOfRange(format!(
            "dimension {dim} is not a power of two >= 2"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pauli_definitions() {
        let z = pauli(Axis::Z);
        assert_eq!(z[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex64::new(-1.0, 0.0));
        // involution
        for ax in Axis::ALL {
            let p = pauli(ax);
            let sq = &p * &p;
            assert_relative_eq!((sq - identity2()).norm(), 0.0, epsilon = 1e-15);
        }
        // pairwise trace-orthogonal
        let tr_xy = (pauli(Axis::X) * pauli(Axis::Y)).trace();
        assert_relative_eq!(tr_xy.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tensor_product_identity() {
        let i4 = tensor_product(&identity2(), &identity2()).unwrap();
        assert_eq!(i4, CMatrix::identity(4, 4));
    }

    #[test]
    fn tensor_product_zz_on_00() {
        let zz = tensor_product(&pauli(Axis::Z), &pauli(Axis::Z)).unwrap();
        assert_eq!(zz[(0, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn tensor_overflow_rejected() {
        let mut m = identity2();
        for _ in 0..11 {
            m = tensor_product(&m, &identity2()).unwrap();
        }
        assert!(tensor_product(&m, &identity2()).is_err());
    }
}
