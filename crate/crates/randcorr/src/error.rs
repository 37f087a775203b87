use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator of {requested} qubits exceeds the dense limit of {max} qubits")]
    DimensionOverflow { requested: usize, max: usize },

    #[error("qubit index {index} out of range for {nqubits} qubits")]
    InvalidIndex { index: usize, nqubits: usize },

    #[error("Bell-diagonal parameters are nonphysical (min eigenvalue {0:.3e})")]
    NonPhysicalParams(f64),

    #[error("excitation count {k} out of range for {n} qubits")]
    ExcitationOutOfRange { n: u64, k: u64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("standard-form parameters are not normalized (sum of squares = {0})")]
    Unnormalized(f64),

    #[error("design strength {have} is insufficient for moment order {need}")]
    InsufficientStrength { have: u32, need: u32 },

    #[error("design sum would need {0:.2e} terms; use the Monte Carlo engine instead")]
    SumTooLarge(f64),

    #[error("monomial expansion would need {0:.2e} terms")]
    ExpansionTooLarge(f64),

    #[error("group closure produced {got} elements, expected {expected}")]
    ClosureSizeMismatch { got: usize, expected: usize },

    #[error("conjugated group element is not unitary (deviation {0:.2e})")]
    NonUnitaryResult(f64),

    #[error("global-phase deduplication kept {got} elements, expected {expected}")]
    DedupSizeMismatch { got: usize, expected: usize },

    #[error("design '{name}' fails verification at strength {strength} (max deviation {deviation:.2e})")]
    VerificationFailure {
        name: String,
        strength: u32,
        deviation: f64,
    },

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("line-criterion slope must be negative, got {0}")]
    SlopeSignViolation(f64),

    #[error("state is not detected even at zero noise")]
    NotDetected,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("design file parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
