//! The two hand-drawn segment patterns through the designated audit, intact
//! and with one weight changed.

use flowforge::fixtures::{figure_one, figure_two, FIGURE_ONE_WEIGHTS, FIGURE_TWO_WEIGHTS};
use flowforge::{audit_designated, LemmaId, Verdict};

fn show(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(w) => format!("fail: {}", w.detail),
        Verdict::NotApplicable(r) => format!("n/a: {r}"),
    }
}

fn main() -> flowforge::Result<()> {
    let mut bent = FIGURE_ONE_WEIGHTS;
    bent[8] = 3;
    for (label, w) in [("weight-4 pattern", FIGURE_ONE_WEIGHTS), ("weight-4 pattern, w(v8v9)=3", bent)] {
        let (q, g, s) = figure_one(&w);
        let report = audit_designated(&q, &g, s)?;
        println!("{label}: {}", show(report.verdict(LemmaId::L3_8)));
    }
    let mut bent = FIGURE_TWO_WEIGHTS;
    bent[2] = 1;
    for (label, w) in [("weight-3 pattern", FIGURE_TWO_WEIGHTS), ("weight-3 pattern, w(v2v3)=1", bent)] {
        let (q, g, s) = figure_two(&w);
        let report = audit_designated(&q, &g, s)?;
        println!("{label}: {}", show(report.verdict(LemmaId::L3_9)));
    }
    // the fixture is a bare segment, not a minimal counterexample, so lemmas
    // outside the pattern checks are free to fail here
    let (q, g, s) = figure_one(&FIGURE_ONE_WEIGHTS);
    print!("{}", audit_designated(&q, &g, s)?);
    Ok(())
}
