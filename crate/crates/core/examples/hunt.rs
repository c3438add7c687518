//! Hunt-mode sweep above the proven range; prints the ratio distribution.
//!
//! Any instance that fails the bound would be re-checked by the oracle,
//! reduced, audited and archived under the temp directory.

use std::collections::BTreeMap;

use flowforge::harness::{hunt, Base, GeneratorConfig, HuntOptions, SweepOptions, WeightPolicy};
use flowforge::Regime;

fn main() -> flowforge::Result<()> {
    let cfg = GeneratorConfig {
        seed: 36,
        count: 400,
        base: Base::Petersen,
        extra_vertices: 0..=1,
        chords: 0..=2,
        max_dimension: 9,
        weights: WeightPolicy::Targeted {
            totals: vec![36],
            max_edge: 5,
        },
        mode: Regime::Hunt,
        ..GeneratorConfig::default()
    };
    let opts = HuntOptions {
        sweep: SweepOptions::default(),
        oracle_budget: 1 << 24,
        archive_dir: std::env::temp_dir().join("flowforge-hunt"),
    };
    let mut csv = Vec::new();
    let report = hunt(&cfg, &opts, &mut csv)?;
    let mut ratios: BTreeMap<String, u64> = BTreeMap::new();
    for line in String::from_utf8_lossy(&csv).lines().skip(1) {
        if let Some(r) = line.split(',').nth(8).filter(|r| !r.is_empty()) {
            *ratios.entry(r.to_string()).or_default() += 1;
        }
    }
    println!("{}", report.summary);
    println!("candidates: {}", report.candidates.len());
    for (ratio, n) in ratios {
        println!("4*min/w(C) = {ratio}: {n}");
    }
    Ok(())
}
