use alloc::string::String;
use alloc::vec::Vec;

use crate::automaton::Violation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid automaton ({} violation(s))", .0.len())]
    InvalidAutomaton(Vec<Violation>),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("state {state} is nondeterministic but carries no quantifier")]
    NondeterministicUnquantified { state: String },
    #[error("arena has {nodes} nodes, above the oracle limit of {limit}")]
    ArenaTooLarge { nodes: usize, limit: usize },
    #[error("state {state} is universal; an existential automaton was expected")]
    NotExistential { state: String },
    #[error("state {state} is existential; a universal automaton was expected")]
    NotUniversal { state: String },
    #[error("automaton is not in recognising mode: {0}")]
    NotRecognisingMode(String),
    #[error("forbidden pattern is not a horizontal or vertical domino: {0}")]
    NotDominoSft(String),
    #[error("forbidden pattern does not fit: {0}")]
    PatternTooLarge(String),
    #[error("automaton has {states} states, the cover supports at most {limit}")]
    TooManyStates { states: usize, limit: usize },
    #[error("no complement element of f({n}) found below the scan bound")]
    NoComplementFound { n: u64 },
}
