use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a register needs at least one qubit")]
    EmptyRegister,

    #[error("vertex {vertex} out of range for a register of {n} qubits")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("two-qubit gate needs distinct operands, got {0} twice")]
    IdenticalOperands(usize),

    #[error("qubit {qubit}: forced outcome {forced} contradicts deterministic outcome {actual}")]
    ForcedOutcomeContradiction {
        qubit: usize,
        forced: u8,
        actual: u8,
    },

    #[error("qubit {qubit}: outcome {outcome} has probability zero")]
    ImpossibleOutcome { qubit: usize, outcome: u8 },

    #[error("vertex {0} is isolated; its vertex operator cannot be reduced")]
    IsolatedVertex(usize),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("dense simulation supports at most {max} qubits, got {n}")]
    TooManyQubits { n: usize, max: usize },

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitCountMismatch(usize, usize),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
