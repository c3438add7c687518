//! Small hand-built quadruples used by tests, examples and the acceptance run.

use crate::flow::{Z2Z2Flow, Z2Z2};
use crate::graph::{Circuit, Multigraph, Segment, WeightMap};
use crate::search::Quadruple;

/// Instance A: `K4` with the triangle `0-1-2` as circuit.
///
/// Edge ids: 0 = 01, 1 = 12, 2 = 20, 3 = 03, 4 = 13, 5 = 23.
pub fn instance_a(weights: [u64; 6]) -> Quadruple {
    use Z2Z2 as V;
    let graph = Multigraph::from_triples(
        4,
        &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)],
    )
    .expect("K4");
    let c = Circuit::from_edge_ids(&graph, &[0, 1, 2]).expect("triangle");
    let f = Z2Z2Flow::from_values(&[V::A10, V::A11, V::ZERO, V::A10, V::A01, V::A11]);
    Quadruple::new(graph, f, c, WeightMap::from_positions(weights.to_vec()).expect("weights"))
        .expect("instance A")
}

/// A circuit `0..n` carrying `values`, plus one hub joined to every circuit
/// vertex whose two circuit values differ; each spoke carries that difference.
///
/// Circuit edge `i` has id `i` and joins `i` and `i+1`; spokes weigh 1.
pub fn circuit_with_hub(values: &[Z2Z2], circuit_weights: &[u64]) -> (Quadruple, Z2Z2Flow) {
    let n = values.len();
    assert_eq!(n, circuit_weights.len());
    let hub = n;
    let mut triples: Vec<(u64, usize, usize)> = (0..n).map(|i| (i as u64, i, (i + 1) % n)).collect();
    let mut all_values = values.to_vec();
    let mut weights = circuit_weights.to_vec();
    for v in 0..n {
        let s = values[(v + n - 1) % n] + values[v];
        if !s.is_zero() {
            triples.push((triples.len() as u64, v, hub));
            all_values.push(s);
            weights.push(1);
        }
    }
    let graph = Multigraph::from_triples(n + 1, &triples).expect("hub graph");
    let c = Circuit::from_edge_ids(&graph, &(0..n as u64).collect::<Vec<_>>()).expect("circuit");
    let g = Z2Z2Flow::from_values(&all_values);
    let q = Quadruple::new(graph, g.clone(), c, WeightMap::from_positions(weights).expect("weights"))
        .expect("hub quadruple");
    (q, g)
}

/// The Petersen graph laid out along one of its 9-circuits: circuit edge `i`
/// has id `i` and joins `i` and `i+1 mod 9`; vertex 9 is the one left out.
///
/// It has no nowhere-zero Z2×Z2-flow, so every flow vanishes somewhere on the
/// circuit once it is nonzero off it.
pub const PETERSEN_NINE: [(u64, usize, usize); 15] = [
    (0, 0, 1),
    (1, 1, 2),
    (2, 2, 3),
    (3, 3, 4),
    (4, 4, 5),
    (5, 5, 6),
    (6, 6, 7),
    (7, 7, 8),
    (8, 8, 0),
    (9, 0, 4),
    (10, 1, 6),
    (11, 2, 9),
    (12, 3, 7),
    (13, 8, 9),
    (14, 9, 5),
];

fn parse(codes: &str) -> Vec<Z2Z2> {
    codes.split_whitespace().map(|s| s.parse().expect("value")).collect()
}

/// Frame weights drawn in the first figure: `w(v5v6) = 4`,
/// `w(v2v3) = w(v8v9) = 2`, the other zero edges 1.
pub const FIGURE_ONE_WEIGHTS: [u64; 12] = [4, 1, 2, 1, 4, 4, 4, 1, 2, 1, 4, 4];

/// Frame weights for the second figure: `w(v5v6) = 3`, `w(v2v3) = 2`,
/// `w(v1v2) = w(v3v4) = 1`; total 28 with every edge at most 3.
pub const FIGURE_TWO_WEIGHTS: [u64; 13] = [3, 1, 2, 1, 3, 3, 3, 1, 3, 1, 3, 2, 2];

/// The first figure's segment as a quadruple: zeros at circuit edges
/// 1, 3, 5, 7, 9; the segment is edges 1..=9 and circuit edge `i` is frame edge `i`.
pub fn figure_one(weights: &[u64; 12]) -> (Quadruple, Z2Z2Flow, Segment) {
    let (q, g) = circuit_with_hub(&parse("10 00 11 00 01 00 11 00 11 00 01 11"), weights);
    (q, g, Segment { start: 1, len: 9 })
}

/// The second figure's segment on a 13-edge circuit.
pub fn figure_two(weights: &[u64; 13]) -> (Quadruple, Z2Z2Flow, Segment) {
    let (q, g) = circuit_with_hub(&parse("10 00 11 00 01 00 11 00 11 00 01 01 11"), weights);
    (q, g, Segment { start: 1, len: 9 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segments::alternating_segments;

    #[test]
    fn figure_fixtures_are_valid() {
        let (q, g, s) = figure_one(&FIGURE_ONE_WEIGHTS);
        assert_eq!(q.circuit_weight(), 32);
        assert_eq!(alternating_segments(&g, q.circuit()), vec![s]);
        let (q, g, s) = figure_two(&FIGURE_TWO_WEIGHTS);
        assert_eq!(q.circuit_weight(), 28);
        assert_eq!(q.circuit().max_weight(q.weights()), 3);
        assert_eq!(alternating_segments(&g, q.circuit()), vec![s]);
    }
}
