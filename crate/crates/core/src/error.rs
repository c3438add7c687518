use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("vertex {0} is not on the circuit")]
    VertexNotOnCircuit(usize),

    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("flow assigns no value to edge {0}")]
    MissingEdgeAssignment(EdgeId),

    #[error("edge set is not a cycle: vertex {0} has odd degree")]
    NotACycle(usize),

    #[error("flows live on different host graphs ({0} vs {1} edges)")]
    HostMismatch(usize, usize),

    #[error("flow is zero on edge {0}")]
    FlowHasZeroEdge(EdgeId),

    #[error("flow violates conservation at vertex {0}")]
    NotAFlow(usize),

    #[error("integer flow value {value} on edge {edge} is outside -3..=3")]
    ValueOutOfRange { edge: EdgeId, value: i64 },

    #[error("search budget exceeded: {required} steps needed, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("edges {0} and {1} do not share exactly one endpoint")]
    EdgesNotAdjacent(EdgeId, EdgeId),

    #[error("edges {0} and {1} carry different flow values")]
    ValuesDiffer(EdgeId, EdgeId),

    #[error("edge {0} is not on the circuit")]
    NotOnCircuit(EdgeId),

    #[error("anchor vertex {vertex} has even degree in the pairing subgraph")]
    AnchorNotOdd { vertex: usize },

    #[error("no nowhere-zero Z2xZ2-flow found")]
    NoNowhereZeroFlow,

    #[error("claimed counterexample satisfies the bound (minimum {minimum}, circuit weight {circuit_weight})")]
    NotACounterexample { minimum: u64, circuit_weight: u64 },

    #[error("circuit weight {0} is outside the theorem range (at most 35)")]
    OutsideTheoremRange(u64),

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
