//! Exhaustive checks of the flow space on every small 2-edge-connected graph.

mod common;

use std::collections::BTreeSet;

use rayon::prelude::*;

use common::{all_flows, conserves, ear_shapes};
use flowforge::{add_flows, from_integer_4flow, to_integer_4flow, validate_flow, Multigraph, Z2Z2Flow, Z2Z2};

fn codes(f: &Z2Z2Flow) -> Vec<u8> {
    f.values().iter().map(|v| v.code()).collect()
}

/// Every assignment of the four values, kept when it conserves.
fn brute_force_flows(g: &Multigraph) -> BTreeSet<Vec<u8>> {
    let m = g.edge_count();
    (0u64..1 << (2 * m))
        .map(|code| {
            let values: Vec<Z2Z2> = (0..m).map(|i| Z2Z2::from_code((code >> (2 * i) & 3) as u8)).collect();
            Z2Z2Flow::from_values(&values)
        })
        .filter(|f| conserves(g, f))
        .map(|f| codes(&f))
        .collect()
}

#[test]
fn cycle_basis_spans_exactly_the_valid_flows() {
    let mut graphs: Vec<Multigraph> = ear_shapes(8, 6).iter().map(|s| s.graph()).collect();
    // loops, a pendant path and a disconnected pair are outside the ear family
    graphs.push(Multigraph::from_triples(2, &[(0, 0, 0), (1, 0, 1), (2, 1, 1), (3, 0, 1), (4, 0, 1)]).unwrap());
    graphs.push(Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 2, 3)]).unwrap());
    graphs.push(Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 0), (2, 2, 3), (3, 3, 2), (4, 3, 3)]).unwrap());
    graphs.par_iter().for_each(|g| {
        let spanned: BTreeSet<Vec<u8>> = all_flows(g).iter().map(codes).collect();
        assert_eq!(spanned.len(), 1 << (2 * g.cycle_space_dimension()));
        assert_eq!(spanned, brute_force_flows(g), "{g:?}");
    });
}

#[test]
fn flow_space_is_closed_under_addition() {
    for s in ear_shapes(7, 4) {
        let g = s.graph();
        let flows = all_flows(&g);
        for (i, a) in flows.iter().enumerate().step_by(7) {
            let b = &flows[(i * 31 + 5) % flows.len()];
            let sum = add_flows(a, b).unwrap();
            assert!(validate_flow(&g, &sum).unwrap().is_valid());
        }
    }
}

#[test]
fn converter_is_sound_up_to_ten_edges() {
    let converted: usize = ear_shapes(10, 9)
        .par_iter()
        .map(|s| {
            let g = s.graph();
            let mut n = 0;
            for f in all_flows(&g).into_iter().filter(|f| f.is_nowhere_zero()) {
                let h = to_integer_4flow(&g, &f).unwrap();
                assert!(h.is_k_flow(g.vertex_count(), 4));
                assert!(h.value.iter().all(|v| *v != 0));
                assert_eq!(from_integer_4flow(&g, &h).unwrap(), f);
                n += 1;
            }
            n
        })
        .sum();
    assert!(converted > 1_000_000, "{converted}");
}
