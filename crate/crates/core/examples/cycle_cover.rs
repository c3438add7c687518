//! Two-cycle covers from nowhere-zero flows with few `11` edges.

use flowforge::harness::cover;
use flowforge::Multigraph;

fn main() -> flowforge::Result<()> {
    let k4 = Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)])?;
    // K3,3
    let k33: Vec<(u64, usize, usize)> =
        (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).enumerate().map(|(i, (a, b))| (i as u64, a, b)).collect();
    let k33 = Multigraph::from_triples(6, &k33)?;
    for (name, g) in [("K4", k4), ("K3,3", k33)] {
        println!("{name}:");
        print!("{}", cover(&g, None, 1)?);
    }
    Ok(())
}
