//! Z2×Z2-flows on weighted multigraphs.
//!
//! The central question: given a graph `G`, a circuit `C`, positive weights
//! and a flow `f` that is nonzero off `C`, how light can the zero class on
//! `C` be made by moving within the flows that share `f`'s support off `C`?
//! [`minimize_zero_weight`] answers it exactly; [`verify_theorem`] compares the
//! answer against a quarter of the circuit weight.
//!
//! Around that sit the graph and flow primitives, the lifting and audit
//! machinery used to study minimal counterexamples, an integer 4-flow
//! converter, a seeded instance generator and the batch harness that drives
//! the `flowforge` binary.

pub mod audit;
pub mod bits;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod format;
pub mod graph;
pub mod harness;
pub mod integer;
pub mod pairing;
pub mod reduce;
pub mod search;
pub mod segments;

pub use audit::{audit, audit_designated, AuditReport, LemmaId, Verdict};
pub use bits::EdgeSet;
pub use error::{Error, Result};
pub use flow::{
    add_flows, circuit_flow, class_edges, cycle_basis, is_valid_flow, permute_values, support,
    two_cycle_cover, validate_flow, CycleBasis, ValuePermutation, Z2Z2Flow, Z2Z2,
};
pub use graph::{
    circuit_path, components_with_odd_vertices, spanning_forest, Circuit, Direction, Edge,
    EdgeId, Multigraph, Segment, WeightMap,
};
pub use integer::{from_integer_4flow, to_integer_4flow, IntegerFlow};
pub use format::{parse_document, read_quadruple, write_quadruple, Document};
pub use pairing::{pairing, Frame, PairingReport};
pub use reduce::{lift, lift_once, pullback, reduce_quadruple, LiftRecord, Reduction, ReductionReport};
pub use search::{
    enumerate_class_oracle, minimize_zero_weight, nowhere_zero_flow, pigeonhole_shift,
    verify_theorem, Method, Quadruple, Regime, SearchOptions, SearchResult, TheoremVerdict,
};
pub use segments::{alternating_segments, is_maximal_segment};
