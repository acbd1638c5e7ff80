use thiserror::Error;

use crate::gate::Gate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("gate {index} ({gate}) touches wire {wire}, circuit has {n_wires} wires")]
    WireOutOfRange {
        index: usize,
        gate: Gate,
        wire: usize,
        n_wires: usize,
    },

    #[error("circuit has {circuit} wires but architecture has {arch} sites")]
    WireCountMismatch { circuit: usize, arch: usize },

    #[error("gate {index} acts on non-adjacent sites ({a}, {b})")]
    NotAdjacent { index: usize, a: usize, b: usize },

    #[error("no Hamiltonian chain found: {0}")]
    ChainNotFound(String),

    #[error("matrix is singular over GF(2)")]
    Singular,

    #[error("gate {0} is not Clifford")]
    NonClifford(Gate),

    #[error("gate {0} is not supported here")]
    UnsupportedGate(Gate),

    #[error("{n} qubits exceeds the limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
