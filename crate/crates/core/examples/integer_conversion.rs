//! Z2×Z2-flow to integer 4-flow and back, on K4 and the 3-cube.

use flowforge::{from_integer_4flow, nowhere_zero_flow, to_integer_4flow, Multigraph};

fn main() -> flowforge::Result<()> {
    let k4 = Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)])?;
    let cube_edges: Vec<(u64, usize, usize)> = (0..8usize)
        .flat_map(|v| [1, 2, 4].map(|b| (v, v ^ b)))
        .filter(|(u, v)| u < v)
        .enumerate()
        .map(|(i, (u, v))| (i as u64, u, v))
        .collect();
    let cube = Multigraph::from_triples(8, &cube_edges)?;
    for (name, g) in [("K4", k4), ("cube", cube)] {
        let f = nowhere_zero_flow(&g, 1).ok_or(flowforge::Error::NoNowhereZeroFlow)?;
        let h = to_integer_4flow(&g, &f)?;
        assert!(h.is_k_flow(g.vertex_count(), 4));
        assert_eq!(from_integer_4flow(&g, &h)?, f);
        println!("{name}:");
        for pos in 0..g.edge_count() {
            println!("  edge {} {} -> {} : {} ~ {}", g.id(pos), h.tail[pos], h.head[pos], h.value[pos], f.get(pos));
        }
    }
    Ok(())
}
