//! Conversion between Z2×Z2-flows and integer 4-flows.
//!
//! Forward direction: each coordinate's support is an even subgraph; split it
//! into circuits and orient each one to get ±1 flows `f1`, `f2`, then take
//! `f1 + 2*f2`. Edge orientations are finally flipped so that the value is
//! congruent to `1` (class `10`), `2` (class `01`) or `3` (class `11`) mod 4.
//!
//! Reverse direction: coordinate 1 is the odd edges. Coordinate 2 is the
//! parity of `(F - h)/2` where `h` is a ±1 flow on the odd edges; when the odd
//! edges are already balanced under the given orientation `h` is `+1`
//! everywhere, which reduces to reading bit 1 of `F mod 4`.

use crate::bits::EdgeSet;
use crate::error::{Error, Result};
use crate::flow::{decompose_into_circuits, validate_flow, Z2Z2Flow};
use crate::graph::{EdgeId, Multigraph};

/// An orientation plus integer values, indexed by edge position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerFlow {
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    pub value: Vec<i64>,
}

impl IntegerFlow {
    /// Zero flow under the stored `u -> v` orientation.
    pub fn zero(g: &Multigraph) -> Self {
        IntegerFlow {
            tail: g.edges().iter().map(|e| e.u).collect(),
            head: g.edges().iter().map(|e| e.v).collect(),
            value: vec![0; g.edge_count()],
        }
    }

    /// Builds from `(id, tail, head, value)` records covering every edge.
    pub fn from_records(g: &Multigraph, records: &[(EdgeId, usize, usize, i64)]) -> Result<Self> {
        let mut flow = IntegerFlow::zero(g);
        let mut seen = g.empty_set();
        for &(id, tail, head, value) in records {
            let pos = g.require_position(id)?;
            let e = g.edge(pos);
            if !((tail == e.u && head == e.v) || (tail == e.v && head == e.u)) {
                return Err(Error::InvalidGraph(format!(
                    "orientation {tail}->{head} does not match edge {id} ({}-{})",
                    e.u, e.v
                )));
            }
            flow.tail[pos] = tail;
            flow.head[pos] = head;
            flow.value[pos] = value;
            seen.insert(pos);
        }
        if let Some(p) = seen.complement().first() {
            return Err(Error::MissingEdgeAssignment(g.id(p)));
        }
        Ok(flow)
    }

    /// Net outflow minus inflow at each vertex.
    pub fn excess(&self, vertex_count: usize) -> Vec<i64> {
        let mut ex = vec![0i64; vertex_count];
        for i in 0..self.value.len() {
            ex[self.tail[i]] += self.value[i];
            ex[self.head[i]] -= self.value[i];
        }
        ex
    }

    pub fn conserves(&self, vertex_count: usize) -> bool {
        self.excess(vertex_count).iter().all(|&x| x == 0)
    }

    pub fn is_k_flow(&self, vertex_count: usize, k: i64) -> bool {
        self.conserves(vertex_count) && self.value.iter().all(|v| v.abs() < k)
    }

    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_positions(
            self.value.len(),
            self.value.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, _)| i),
        )
    }

    fn flip(&mut self, pos: usize) {
        std::mem::swap(&mut self.tail[pos], &mut self.head[pos]);
        self.value[pos] = -self.value[pos];
    }
}

/// ±1 flow on `set` relative to the stored edge orientation.
fn unit_flow(g: &Multigraph, set: &EdgeSet) -> Result<Vec<i64>> {
    let mut out = vec![0i64; g.edge_count()];
    for circuit in decompose_into_circuits(g, set)? {
        for step in circuit {
            out[step.edge] = if step.tail == g.edge(step.edge).u { 1 } else { -1 };
        }
    }
    Ok(out)
}

/// Integer 4-flow with the same support as a nowhere-zero Z2×Z2-flow.
pub fn to_integer_4flow(g: &Multigraph, f: &Z2Z2Flow) -> Result<IntegerFlow> {
    if let Some(p) = f.support().complement().first() {
        return Err(Error::FlowHasZeroEdge(g.id(p)));
    }
    to_integer_flow(g, f)
}

/// Like [`to_integer_4flow`] but accepts flows with zero edges; the result
/// has identical support.
pub fn to_integer_flow(g: &Multigraph, f: &Z2Z2Flow) -> Result<IntegerFlow> {
    let check = validate_flow(g, f)?;
    if let Some(v) = check.violations.first() {
        return Err(Error::NotAFlow(v.vertex));
    }
    let f1 = unit_flow(g, f.coordinate1())?;
    let f2 = unit_flow(g, f.coordinate2())?;
    let mut out = IntegerFlow::zero(g);
    for pos in 0..g.edge_count() {
        out.value[pos] = f1[pos] + 2 * f2[pos];
        let want = f.get(pos).code() as i64;
        if want != 0 && out.value[pos].rem_euclid(4) != want {
            out.flip(pos);
        }
        // class 01 is ±2 either way; keep it positive
        if out.value[pos] == -2 {
            out.flip(pos);
        }
    }
    Ok(out)
}

/// Z2×Z2-flow read off an integer flow with `|value| <= 3`.
pub fn from_integer_4flow(g: &Multigraph, flow: &IntegerFlow) -> Result<Z2Z2Flow> {
    if flow.value.len() != g.edge_count() {
        return Err(Error::HostMismatch(flow.value.len(), g.edge_count()));
    }
    for (pos, &v) in flow.value.iter().enumerate() {
        if v.abs() > 3 {
            return Err(Error::ValueOutOfRange { edge: g.id(pos), value: v });
        }
    }
    if let Some((v, _)) = flow
        .excess(g.vertex_count())
        .iter()
        .enumerate()
        .find(|(_, x)| **x != 0)
    {
        return Err(Error::NotAFlow(v));
    }

    let odd = EdgeSet::from_positions(
        g.edge_count(),
        (0..g.edge_count()).filter(|&p| flow.value[p] % 2 != 0),
    );
    // h = +1 on every odd edge, in the flow's own orientation
    let mut excess = vec![0i64; g.vertex_count()];
    for p in odd.iter() {
        excess[flow.tail[p]] += 1;
        excess[flow.head[p]] -= 1;
    }
    let h: Vec<i64> = if excess.iter().all(|&x| x == 0) {
        (0..g.edge_count()).map(|p| odd.contains(p) as i64).collect()
    } else {
        let reference = unit_flow(g, &odd)?;
        (0..g.edge_count())
            .map(|p| {
                // `reference` is relative to the stored u->v orientation
                if flow.tail[p] == g.edge(p).u {
                    reference[p]
                } else {
                    -reference[p]
                }
            })
            .collect()
    };

    let mut c2 = g.empty_set();
    for p in 0..g.edge_count() {
        let half = (flow.value[p] - h[p]) / 2;
        if half % 2 != 0 {
            c2.insert(p);
        }
    }
    Ok(Z2Z2Flow::from_coordinates(odd, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{is_valid_flow, Z2Z2};

    fn square() -> Multigraph {
        Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0)]).unwrap()
    }

    #[test]
    fn constant_circuit_flows() {
        let g = square();
        for (v, expect) in [(Z2Z2::A11, 3), (Z2Z2::A10, 1), (Z2Z2::A01, 2)] {
            let f = Z2Z2Flow::from_values(&[v; 4]);
            let i = to_integer_4flow(&g, &f).unwrap();
            assert!(i.is_k_flow(4, 4));
            assert!(i.value.iter().all(|x| x.abs() == expect), "{v:?}: {:?}", i.value);
            assert_eq!(from_integer_4flow(&g, &i).unwrap(), f);
        }
    }

    #[test]
    fn reverse_direction_reads_residues() {
        let g = square();
        let mut i = IntegerFlow::zero(&g);
        i.value = vec![3; 4];
        assert_eq!(
            from_integer_4flow(&g, &i).unwrap(),
            Z2Z2Flow::from_values(&[Z2Z2::A11; 4])
        );
        i.value = vec![2; 4];
        assert_eq!(
            from_integer_4flow(&g, &i).unwrap(),
            Z2Z2Flow::from_values(&[Z2Z2::A01; 4])
        );
        i.value = vec![4; 4];
        assert!(matches!(
            from_integer_4flow(&g, &i),
            Err(Error::ValueOutOfRange { value: 4, .. })
        ));
        i.value = vec![1, 1, 1, 2];
        assert!(matches!(from_integer_4flow(&g, &i), Err(Error::NotAFlow(_))));
    }

    #[test]
    fn unbalanced_odd_edges_still_decode_to_a_flow() {
        // theta graph: 2 on one branch, 1 and 1 on the others; +1 on odd edges is not balanced
        let g = Multigraph::from_triples(2, &[(0, 0, 1), (1, 0, 1), (2, 1, 0)]).unwrap();
        let i = IntegerFlow {
            tail: vec![0, 0, 1],
            head: vec![1, 1, 0],
            value: vec![1, 1, 2],
        };
        let f = from_integer_4flow(&g, &i).unwrap();
        assert!(is_valid_flow(&g, &f));
        assert_eq!(f.support().count(), 3);
    }

    #[test]
    fn k4_nowhere_zero_round_trip() {
        let g = Multigraph::from_triples(
            4,
            &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)],
        )
        .unwrap();
        use Z2Z2 as V;
        let f = Z2Z2Flow::from_values(&[V::A10, V::A11, V::A01, V::A11, V::A01, V::A10]);
        assert!(is_valid_flow(&g, &f));
        let i = to_integer_4flow(&g, &f).unwrap();
        assert!(i.is_k_flow(4, 4));
        assert!(i.value.iter().all(|v| (1..=3).contains(&v.abs())));
        assert_eq!(from_integer_4flow(&g, &i).unwrap(), f);
    }
}
