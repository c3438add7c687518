//! Alternating segments of a circuit and their maximality over a class.
//!
//! A segment here always begins and ends with a zero edge and strictly
//! alternates zero / nonzero in between, so its length is odd. The edge just
//! before and just after a segment is therefore nonzero or breaks the
//! alternation. When the whole circuit alternates, every zero edge starts a
//! segment of length `|C| - 1`.

use std::collections::HashSet;

use crate::bits::EdgeSet;
use crate::error::Result;
use crate::flow::Z2Z2Flow;
use crate::graph::{Circuit, Segment};
use crate::search::{for_each_class_member, Quadruple};

/// Maximal alternating runs of `g` along `c`, sorted by start index.
pub fn alternating_segments(g: &Z2Z2Flow, c: &Circuit) -> Vec<Segment> {
    let n = c.len();
    let zero: Vec<bool> = (0..n).map(|i| g.get(c.edge_at(i as isize)).is_zero()).collect();
    // link i joins circuit edges i and i+1
    let good = |i: usize| zero[i] != zero[(i + 1) % n];

    let Some(cut) = (0..n).find(|&i| !good(i)) else {
        let mut out: Vec<Segment> = (0..n)
            .filter(|&i| zero[i])
            .map(|start| Segment { start, len: n - 1 })
            .collect();
        out.sort_by_key(|s| s.start);
        return out;
    };

    let mut out = Vec::new();
    let mut block: Vec<usize> = Vec::new();
    let mut flush = |block: &mut Vec<usize>| {
        let first = block.iter().position(|&i| zero[i]);
        let last = block.iter().rposition(|&i| zero[i]);
        if let (Some(a), Some(b)) = (first, last) {
            out.push(Segment {
                start: block[a],
                len: b - a + 1,
            });
        }
        block.clear();
    };
    for k in 1..=n {
        let i = (cut + k) % n;
        block.push(i);
        if !good(i) {
            flush(&mut block);
        }
    }
    out.sort_by_key(|s| s.start);
    out
}

/// Zero edges of `g` inside `s`, as graph positions.
pub fn segment_zeros(g: &Z2Z2Flow, c: &Circuit, s: &Segment, edge_count: usize) -> EdgeSet {
    EdgeSet::from_positions(
        edge_count,
        s.indices(c.len())
            .map(|i| c.edge_at(i as isize))
            .filter(|&p| g.get(p).is_zero()),
    )
}

/// Every `(zero set, length)` pair realised by a maximal run of some class member.
#[derive(Clone, Debug, Default)]
pub struct RunCatalogue {
    runs: Vec<(EdgeSet, usize)>,
}

impl RunCatalogue {
    pub fn build(q: &Quadruple, budget: u128) -> Result<Self> {
        let m = q.graph().edge_count();
        let mut seen = HashSet::new();
        for_each_class_member(q, budget, |g| {
            for s in alternating_segments(g, q.circuit()) {
                seen.insert((segment_zeros(g, q.circuit(), &s, m), s.len));
            }
            true
        })?;
        let mut runs: Vec<_> = seen.into_iter().collect();
        runs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.words().cmp(b.0.words())));
        Ok(RunCatalogue { runs })
    }

    /// A strictly longer run whose zeros contain `zeros`, if any.
    pub fn longer_cover(&self, zeros: &EdgeSet, len: usize) -> Option<&(EdgeSet, usize)> {
        self.runs
            .iter()
            .take_while(|(_, l)| *l > len)
            .find(|(z, _)| zeros.is_subset(z))
    }

    pub fn is_maximal(&self, g: &Z2Z2Flow, c: &Circuit, s: &Segment) -> bool {
        let zeros = segment_zeros(g, c, s, g.len());
        self.longer_cover(&zeros, s.len).is_none()
    }
}

/// True iff no class member has a strictly longer alternating segment whose
/// zero edges include the zero edges of `s` under `g`.
pub fn is_maximal_segment(q: &Quadruple, g: &Z2Z2Flow, s: &Segment, budget: u128) -> Result<bool> {
    let zeros = segment_zeros(g, q.circuit(), s, q.graph().edge_count());
    let mut maximal = true;
    for_each_class_member(q, budget, |h| {
        for t in alternating_segments(h, q.circuit()) {
            if t.len > s.len && zeros.is_subset(&segment_zeros(h, q.circuit(), &t, h.len())) {
                maximal = false;
                return false;
            }
        }
        true
    })?;
    Ok(maximal)
}
