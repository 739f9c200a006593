use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(#[from] Violation),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("slot {slot} out of range at vertex {vertex} (out-degree {out_degree})")]
    InvalidSlot { vertex: usize, slot: usize, out_degree: usize },

    #[error("no edge {tail}->{head}")]
    NoSuchEdge { tail: usize, head: usize },

    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("illegal routing at vertex {vertex}: it holds no positive chip count")]
    IllegalRouting { vertex: usize },

    #[error("routing vector has a negative entry at vertex {vertex}")]
    NegativeRouting { vertex: usize },

    #[error("divisor is not a single chip (one chip-and-rotor configuration required)")]
    NotOneChip,

    #[error("configuration is not a unicycle")]
    NotUnicycle,

    #[error("configuration is not recurrent")]
    NotRecurrent,

    #[error("divisor degree is {degree}, at least 1 is required")]
    DegreeTooSmall { degree: String },

    #[error("divisor degree is {degree}, the rotor-router action needs degree 0")]
    DegreeNotZero { degree: String },

    #[error("step budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("graph is not Eulerian (in-degree differs from out-degree at vertex {vertex})")]
    NotEulerian { vertex: usize },

    #[error("arborescence is rooted at {actual}, expected root {expected}")]
    RootMismatch { expected: usize, actual: usize },

    #[error("edge {tail}:{slot} does not leave the root {root}")]
    RootEdgeMismatch { root: usize, tail: usize, slot: usize },

    #[error("not a spanning in-arborescence: {0}")]
    NotArborescence(String),

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("undirected input has a loop at vertex {vertex}")]
    UndirectedLoop { vertex: usize },

    #[error("undirected input is disconnected: vertex {vertex} unreachable from vertex 0")]
    Disconnected { vertex: usize },

    #[error("inconsistent rotation system: {0}")]
    BadRotation(String),

    #[error("edge pairing is inconsistent with the graph: {0}")]
    PairingInconsistent(String),
}
