//! Core quantum objects: operators, density matrices, correlation tensors,
//! state constructors and seeded random sampling.

pub mod density;
pub mod operators;
pub mod random;
pub mod states;
pub mod tensor;

pub use density::{partial_trace, DensityMatrix};
pub use operators::{Axis, CMatrix, CVector, N_MAX};
pub use states::{BellDiagonalParams, BlochDirection, DickeMarginalCoeffs, StandardFormParams};
pub use tensor::CorrelationTensor;
