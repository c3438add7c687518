//! Lifting adjacent circuit edges and the minimal-quadruple reduction.

use crate::error::{Error, Result};
use crate::flow::{Z2Z2Flow, Z2Z2};
use crate::graph::{Circuit, Edge, EdgeId, Multigraph, WeightMap};
use crate::search::{
    for_each_class_member, minimize_zero_weight, pigeonhole_shift, Quadruple, SearchOptions,
};

/// What one lift did to the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRecord {
    /// `(xy, yz)`, in circuit order.
    pub removed: (EdgeId, EdgeId),
    /// The new edge `xz`.
    pub added: EdgeId,
    pub added_weight: u64,
    pub pivot_vertex: usize,
    /// The common value of `xy` and `yz`, carried by the new edge.
    pub witness_value: Z2Z2,
}

/// Replaces the adjacent circuit edges `xy`, `yz` (equal under `g`) by one
/// edge `xz` of summed weight; the result carries `g` with `xz` valued `g(xy)`.
///
/// The new edge gets id `max id + 1`. Vertex `y` is kept even if it becomes
/// isolated, so vertex indices stay stable.
pub fn lift(q: &Quadruple, g: &Z2Z2Flow, xy: EdgeId, yz: EdgeId) -> Result<(Quadruple, LiftRecord)> {
    let graph = q.graph();
    let c = q.circuit();
    let p = graph.require_position(xy)?;
    let r = graph.require_position(yz)?;
    let i = c.index_of_edge(p).ok_or(Error::NotOnCircuit(xy))?;
    let j = c.index_of_edge(r).ok_or(Error::NotOnCircuit(yz))?;
    let n = c.len();
    let (e1, e2) = (graph.edge(p), graph.edge(r));
    let shared: Vec<usize> = [e1.u, e1.v].into_iter().filter(|&v| e2.touches(v)).collect();
    if n < 3 || shared.len() != 1 || e1.is_loop() || e2.is_loop() {
        return Err(Error::EdgesNotAdjacent(xy, yz));
    }
    if !q.is_member(g) {
        return Err(Error::InvalidQuadruple("lift flow is not a class member".into()));
    }
    if g.get(p) != g.get(r) {
        return Err(Error::ValuesDiffer(xy, yz));
    }
    let y = shared[0];
    let (x, z) = (e1.other(y), e2.other(y));

    // keep circuit order: `first` precedes `second` cyclically
    let (first, second) = if (i + 1) % n == j { (i, j) } else { (j, i) };
    let added = graph.max_edge_id().map_or(0, |m| m + 1);
    let added_weight = q.weights().at(p) + q.weights().at(r);
    let value = g.get(p);

    let mut edges: Vec<Edge> = graph
        .edges()
        .iter()
        .filter(|e| e.id != xy && e.id != yz)
        .copied()
        .collect();
    edges.push(Edge { id: added, u: x, v: z });
    let g_star = Multigraph::new(graph.vertex_count(), edges)?;

    let mut circuit_ids = Vec::with_capacity(n - 1);
    for k in 0..n {
        if k == first {
            circuit_ids.push(added);
        } else if k != second {
            circuit_ids.push(graph.id(c.edge_at(k as isize)));
        }
    }
    let c_star = Circuit::from_edge_ids(&g_star, &circuit_ids)?;

    let mut values = Vec::with_capacity(g_star.edge_count());
    let mut weights = Vec::with_capacity(g_star.edge_count());
    for e in g_star.edges() {
        if e.id == added {
            values.push(value);
            weights.push(added_weight);
        } else {
            let old = graph.position(e.id).expect("kept edge");
            values.push(g.get(old));
            weights.push(q.weights().at(old));
        }
    }
    let q_star = Quadruple::new(
        g_star,
        Z2Z2Flow::from_values(&values),
        c_star,
        WeightMap::from_positions(weights)?,
    )?;
    let record = LiftRecord {
        removed: (graph.id(c.edge_at(first as isize)), graph.id(c.edge_at(second as isize))),
        added,
        added_weight,
        pivot_vertex: y,
        witness_value: value,
    };
    Ok((q_star, record))
}

/// Extends a flow of the lifted graph back to the original one by copying
/// the new edge's value onto both removed edges.
pub fn pullback(original: &Multigraph, lifted: &Multigraph, record: &LiftRecord, h: &Z2Z2Flow) -> Result<Z2Z2Flow> {
    if h.len() != lifted.edge_count() {
        return Err(Error::HostMismatch(h.len(), lifted.edge_count()));
    }
    let carried = h.get(lifted.require_position(record.added)?);
    let mut out = Z2Z2Flow::zero(original.edge_count());
    for (pos, e) in original.edges().iter().enumerate() {
        let v = if e.id == record.removed.0 || e.id == record.removed.1 {
            carried
        } else {
            h.get(lifted.require_position(e.id)?)
        };
        out.set(pos, v);
    }
    Ok(out)
}

/// Finds a class member with two adjacent equal circuit values and lifts them.
///
/// Members are scanned in oracle order and pairs in circuit order, so the
/// choice is deterministic. Returns `None` when every value class on the
/// circuit is a matching for every member, or the circuit is shorter than 3.
pub fn lift_once(q: &Quadruple, budget: u128) -> Result<Option<(Quadruple, LiftRecord, Z2Z2Flow)>> {
    let c = q.circuit();
    let n = c.len();
    if n < 3 {
        return Ok(None);
    }
    let mut found: Option<(Z2Z2Flow, usize)> = None;
    for_each_class_member(q, budget, |g| {
        for i in 0..n {
            let (a, b) = (c.edge_at(i as isize), c.edge_at(i as isize + 1));
            if g.get(a) == g.get(b) {
                found = Some((g.clone(), i));
                return false;
            }
        }
        true
    })?;
    let Some((g, i)) = found else {
        return Ok(None);
    };
    let graph = q.graph();
    let xy = graph.id(c.edge_at(i as isize));
    let yz = graph.id(c.edge_at(i as isize + 1));
    let (q_star, record) = lift(q, &g, xy, yz)?;
    Ok(Some((q_star, record, g)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `w(C)` is not a multiple of 4.
    Pigeonhole,
    /// The search found a member below a quarter of `w(C)`.
    Search { minimum: u64 },
    Lift {
        record: LiftRecord,
        edges_after: usize,
        /// The circuit now has at most two edges.
        degenerate: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// A member of the original class with `4 * zero weight < w(C)`.
    Resolved { witness: Z2Z2Flow, zero_weight: u64, circuit_weight: u64 },
    /// No lift applies and no member is below a quarter: every value class
    /// on the circuit is a matching for every member.
    Reduced(Box<Quadruple>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub outcome: Reduction,
    pub trace: Vec<TraceStep>,
}

/// Alternates exact search and lifting until the instance is resolved or no
/// lift applies. Lifts strictly shrink the edge set, so this terminates.
pub fn reduce_quadruple(q: &Quadruple, opts: &SearchOptions) -> Result<ReductionReport> {
    let circuit_weight = q.circuit_weight();
    let mut trace = Vec::new();
    if circuit_weight % 4 != 0 {
        let witness = pigeonhole_shift(q.flow(), q.circuit(), q.weights());
        trace.push(TraceStep::Pigeonhole);
        return Ok(ReductionReport {
            outcome: Reduction::Resolved {
                zero_weight: q.zero_weight(&witness),
                witness,
                circuit_weight,
            },
            trace,
        });
    }

    let mut chain: Vec<(Quadruple, LiftRecord)> = Vec::new();
    let mut current = q.clone();
    loop {
        let result = minimize_zero_weight(&current, opts)?;
        if result.theorem_holds {
            trace.push(TraceStep::Search {
                minimum: result.minimum_zero_weight,
            });
            let mut witness = result.witness;
            let mut lifted = current.graph().clone();
            for (before, record) in chain.iter().rev() {
                witness = pullback(before.graph(), &lifted, record, &witness)?;
                lifted = before.graph().clone();
            }
            debug_assert_eq!(q.zero_weight(&witness), result.minimum_zero_weight);
            return Ok(ReductionReport {
                outcome: Reduction::Resolved {
                    zero_weight: q.zero_weight(&witness),
                    witness,
                    circuit_weight,
                },
                trace,
            });
        }
        match lift_once(&current, opts.budget)? {
            None => {
                return Ok(ReductionReport {
                    outcome: Reduction::Reduced(Box::new(current)),
                    trace,
                })
            }
            Some((next, record, _)) => {
                trace.push(TraceStep::Lift {
                    record: record.clone(),
                    edges_after: next.graph().edge_count(),
                    degenerate: next.circuit().is_degenerate(),
                });
                chain.push((current, record));
                current = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::is_valid_flow;

    fn path_circuit(weights: Vec<u64>, values: &[Z2Z2]) -> Quadruple {
        let n = weights.len();
        let triples: Vec<_> = (0..n).map(|i| (i as u64, i, (i + 1) % n)).collect();
        let g = Multigraph::from_triples(n, &triples).unwrap();
        let c = Circuit::from_edge_ids(&g, &(0..n as u64).collect::<Vec<_>>()).unwrap();
        Quadruple::new(g, Z2Z2Flow::from_values(values), c, WeightMap::from_positions(weights).unwrap())
            .unwrap()
    }

    #[test]
    fn lift_sums_weights_and_keeps_value() {
        let q = path_circuit(vec![1, 2, 3, 4], &[Z2Z2::A11; 4]);
        let (q2, rec) = lift(&q, q.flow(), 0, 1).unwrap();
        assert_eq!(rec.added, 4);
        assert_eq!(rec.added_weight, 3);
        assert_eq!(rec.witness_value, Z2Z2::A11);
        assert_eq!(rec.pivot_vertex, 1);
        assert_eq!(q2.circuit_weight(), q.circuit_weight());
        assert_eq!(q2.graph().edge_count(), 3);
        assert!(is_valid_flow(q2.graph(), q2.flow()));
    }

    #[test]
    fn lifting_zero_edges_keeps_zero_weight() {
        let q = path_circuit(vec![1, 2, 3, 4], &[Z2Z2::ZERO; 4]);
        let (q2, rec) = lift(&q, q.flow(), 1, 2).unwrap();
        assert_eq!(rec.witness_value, Z2Z2::ZERO);
        assert_eq!(q2.zero_weight(q2.flow()), q.zero_weight(q.flow()));
        let back = pullback(q.graph(), q2.graph(), &rec, q2.flow()).unwrap();
        assert_eq!(&back, q.flow());
    }

    #[test]
    fn triangle_lifts_to_digon() {
        let q = path_circuit(vec![1, 1, 1], &[Z2Z2::A10; 3]);
        let (q2, _) = lift(&q, q.flow(), 2, 0).unwrap();
        assert_eq!(q2.circuit().len(), 2);
        assert!(q2.circuit().is_degenerate());
        assert_eq!(q2.circuit_weight(), 3);
    }

    #[test]
    fn lift_errors() {
        let q = path_circuit(vec![1; 4], &[Z2Z2::A10; 4]);
        assert!(matches!(lift(&q, q.flow(), 0, 2), Err(Error::EdgesNotAdjacent(0, 2))));
        // unequal circuit values need a chord to be a flow
        let graph = Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0), (4, 0, 2)]).unwrap();
        let c = Circuit::from_edge_ids(&graph, &[0, 1, 2, 3]).unwrap();
        use Z2Z2 as V;
        let f = Z2Z2Flow::from_values(&[V::A10, V::A10, V::A01, V::A01, V::A11]);
        let q2 = Quadruple::new(graph, f, c, WeightMap::from_positions(vec![1; 5]).unwrap()).unwrap();
        assert!(matches!(lift(&q2, q2.flow(), 1, 2), Err(Error::ValuesDiffer(1, 2))));
        assert!(matches!(lift(&q2, q2.flow(), 0, 4), Err(Error::NotOnCircuit(4))));
    }

    #[test]
    fn reduce_resolves_non_multiples_of_four() {
        let q = path_circuit(vec![9, 9, 9, 8], &[Z2Z2::A11; 4]);
        let rep = reduce_quadruple(&q, &SearchOptions::default()).unwrap();
        assert_eq!(rep.trace, vec![TraceStep::Pigeonhole]);
        assert!(matches!(rep.outcome, Reduction::Resolved { .. }));
    }

    #[test]
    fn reduce_circuit_alone() {
        let q = path_circuit(vec![1; 4], &[Z2Z2::A10; 4]);
        let rep = reduce_quadruple(&q, &SearchOptions::default()).unwrap();
        match rep.outcome {
            Reduction::Resolved { zero_weight, .. } => assert_eq!(zero_weight, 0),
            other => panic!("{other:?}"),
        }
    }
}
