//! Exact minimum of the zero class on the K4 triangle, by both searches.

use flowforge::fixtures::instance_a;
use flowforge::{minimize_zero_weight, verify_theorem, Regime, SearchOptions};

fn main() -> flowforge::Result<()> {
    for weights in [[1; 6], [4, 4, 4, 1, 1, 1], [3, 4, 1, 1, 1, 1]] {
        let q = instance_a(weights);
        let fast = minimize_zero_weight(&q, &SearchOptions::branch_and_bound())?;
        let slow = minimize_zero_weight(&q, &SearchOptions::oracle())?;
        assert_eq!(fast.witness, slow.witness);
        let verdict = verify_theorem(&q, Regime::Theorem, &SearchOptions::default())?;
        println!(
            "weights {weights:?}: w(C)={} minimum={} witness={:?} holds={}",
            q.circuit_weight(),
            fast.minimum_zero_weight,
            fast.witness.values(),
            verdict.holds()
        );
    }
    Ok(())
}
