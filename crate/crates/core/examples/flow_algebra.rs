//! Cycle basis, value permutations and the pigeonhole shift on a wheel.

use flowforge::{
    cycle_basis, permute_values, pigeonhole_shift, validate_flow, Circuit, Multigraph, ValuePermutation, WeightMap,
    Z2Z2Flow, Z2Z2,
};

fn main() -> flowforge::Result<()> {
    // wheel with five spokes; rim edges 0..5
    let mut triples: Vec<(u64, usize, usize)> = (0..5).map(|i| (i as u64, i, (i + 1) % 5)).collect();
    triples.extend((0..5).map(|i| (5 + i as u64, i, 5)));
    let g = Multigraph::from_triples(6, &triples)?;
    let basis = cycle_basis(&g);
    println!("dimension {}", basis.dimension());
    let mut f = Z2Z2Flow::zero(g.edge_count());
    for (row, v) in basis.rows.iter().zip([Z2Z2::A10, Z2Z2::A10, Z2Z2::A01, Z2Z2::A01, Z2Z2::A11]) {
        f.add_on(row, v);
    }
    assert!(validate_flow(&g, &f)?.is_valid());
    println!("f      = {:?}", f.values());
    for s in ValuePermutation::all() {
        let h = permute_values(&f, s);
        assert_eq!(h.support(), f.support());
        println!("sigma f = {:?}", h.values());
    }
    let rim = Circuit::from_edge_ids(&g, &[0, 1, 2, 3, 4])?;
    let w = WeightMap::from_positions(vec![4, 1, 3, 2, 2, 1, 1, 1, 1, 1])?;
    let shifted = pigeonhole_shift(&f, &rim, &w);
    let zero: u64 = rim.edge_positions().iter().filter(|&&p| shifted.get(p).is_zero()).map(|&p| w.at(p)).sum();
    println!("after the shift the zero class on the rim weighs {zero} of {}", rim.weight(&w));
    Ok(())
}
