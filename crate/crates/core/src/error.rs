use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid extent {0:?}: every component must be at least 1")]
    InvalidExtent([usize; 3]),

    #[error("extent {extent:?} too small: {reason}")]
    ExtentTooSmall { extent: [usize; 3], reason: String },

    #[error("complex construction failed: {0}")]
    Construction(String),

    #[error("qubit graph is not bipartite (edge {edge} joins qubits of equal parity)")]
    NotBipartite { edge: usize },

    #[error("X row {x_row} and Z row {z_row} anticommute")]
    Commutation { x_row: usize, z_row: usize },

    #[error("projection region is empty")]
    EmptyRegion,

    #[error("qubit {0} is not a column of the code")]
    RegionOutOfRange(usize),

    #[error("projection removes every qubit")]
    EmptyProjection,

    #[error("code encodes no logical qubits")]
    NoLogicalQubits,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not X-type (Z support on qubit {qubit})")]
    NotXType { qubit: usize },

    #[error("rotation exponent {exp} on qubit {qubit} is odd; commutator would not be a Pauli")]
    OddRotation { qubit: usize, exp: u8 },

    #[error("transversal layer does not preserve the codespace: {witness}")]
    CodespaceNotPreserved { witness: String },

    #[error("unclassifiable coefficient {coeff} on {monomial}")]
    Unclassifiable { monomial: String, coeff: u8 },

    #[error("state-vector bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("{operator} is not in the expected coset; residual support {residual:?}")]
    Membership {
        operator: String,
        residual: Vec<usize>,
    },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
