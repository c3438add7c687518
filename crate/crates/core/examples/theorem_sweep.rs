//! Seeded theorem-mode sweep over both instance bases, CSV to stdout.
//!
//! `cargo run --release --example theorem_sweep -- 2000`

use flowforge::harness::{sweep, Base, GeneratorConfig, SweepOptions};

fn main() -> flowforge::Result<()> {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let circuit = GeneratorConfig {
        seed: 7,
        count,
        ..GeneratorConfig::default()
    };
    // chords would let a nowhere-zero flow back in
    let petersen = GeneratorConfig {
        base: Base::Petersen,
        extra_vertices: 0..=0,
        chords: 0..=0,
        ..circuit.clone()
    };
    for cfg in [circuit, petersen] {
        let mut csv = Vec::new();
        let summary = sweep(&cfg, &SweepOptions::default(), &mut csv)?;
        let positive = String::from_utf8_lossy(&csv)
            .lines()
            .skip(1)
            .filter(|l| l.split(',').nth(7).is_some_and(|m| !m.is_empty() && m != "0"))
            .count();
        println!("{:?}: {summary} positive_minima={positive}", cfg.base);
    }
    Ok(())
}
