//! Lifting two equal circuit edges, pulling a flow back, and the full reduction.

use flowforge::fixtures::{figure_two, FIGURE_TWO_WEIGHTS};
use flowforge::reduce::TraceStep;
use flowforge::{lift, pullback, reduce_quadruple, Reduction, SearchOptions};

fn main() -> flowforge::Result<()> {
    let (q, g, _) = figure_two(&FIGURE_TWO_WEIGHTS);
    let c = q.circuit();
    let graph = q.graph();
    // circuit edges 10 and 11 both carry 01
    let (xy, yz) = (graph.id(c.edge_at(10)), graph.id(c.edge_at(11)));
    let (star, record) = lift(&q, &g, xy, yz)?;
    println!(
        "lifted {:?} into edge {} of weight {}: |E| {} -> {}, w(C) {} -> {}",
        record.removed,
        record.added,
        record.added_weight,
        graph.edge_count(),
        star.graph().edge_count(),
        q.circuit_weight(),
        star.circuit_weight()
    );
    let back = pullback(graph, star.graph(), &record, star.flow())?;
    assert_eq!(back, g);
    assert_eq!(q.zero_weight(&back), star.zero_weight(star.flow()));

    let report = reduce_quadruple(&q, &SearchOptions::default())?;
    for step in &report.trace {
        match step {
            TraceStep::Lift { record, edges_after, .. } => {
                println!("lift {:?} -> {} (|E| = {edges_after})", record.removed, record.added)
            }
            other => println!("{other:?}"),
        }
    }
    match report.outcome {
        Reduction::Resolved { zero_weight, circuit_weight, .. } => {
            println!("resolved: 4*{zero_weight} < {circuit_weight}")
        }
        Reduction::Reduced(r) => println!("irreducible quadruple with {} edges", r.graph().edge_count()),
    }
    Ok(())
}
