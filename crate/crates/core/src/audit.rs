//! One predicate per structural lemma about minimal counterexamples, with
//! class-wide quantification done by exhaustive enumeration.
//!
//! Verdicts are pass, fail with a re-checkable witness, or not applicable
//! with the unmet hypothesis named. A predicate never passes vacuously.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::{Z2Z2Flow, Z2Z2};
use crate::graph::{Direction, EdgeId, Segment};
use crate::pairing::{anchors, normalize, pairing, Frame, PairingReport, PATH_CAP};
use crate::search::{
    enumerate_class_oracle, verify_theorem, Quadruple, Regime, SearchOptions,
};
use crate::segments::{alternating_segments, RunCatalogue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    L3_1,
    L3_2,
    L3_3,
    L3_4,
    L3_5,
    L3_6,
    L3_7,
    L3_8,
    L3_9,
    L3_10,
    S4_9,
    S4_11,
    S4_13,
}

impl LemmaId {
    pub const ALL: [LemmaId; 13] = [
        LemmaId::L3_1,
        LemmaId::L3_2,
        LemmaId::L3_3,
        LemmaId::L3_4,
        LemmaId::L3_5,
        LemmaId::L3_6,
        LemmaId::L3_7,
        LemmaId::L3_8,
        LemmaId::L3_9,
        LemmaId::L3_10,
        LemmaId::S4_9,
        LemmaId::S4_11,
        LemmaId::S4_13,
    ];

    fn index(self) -> usize {
        self as usize
    }

    fn unmet(self) -> &'static str {
        match self {
            LemmaId::L3_1 => "empty class",
            LemmaId::L3_2 => "circuit has fewer than three edges",
            LemmaId::L3_3 => "no circuit vertex meets two distinct nonzero circuit values",
            LemmaId::L3_4 => "no frame with pairings v1~vr, vs~vt and 1<s<r<t",
            LemmaId::L3_5 => "no maximal segment with a zero edge of weight Omega (or of weight 2 when Omega=3)",
            LemmaId::L3_6 => "no maximal segment whose frame normalises",
            LemmaId::L3_7 => "no maximal segment with a zero edge of weight Omega",
            LemmaId::L3_8 => "Omega is not 4 or no maximal segment has a zero edge of weight 4",
            LemmaId::L3_9 => "Omega is not 3 or no maximal segment has a zero edge of weight 3",
            LemmaId::L3_10 | LemmaId::S4_9 | LemmaId::S4_11 | LemmaId::S4_13 => {
                "no heavy maximal segment with w(v2v3)=2 and a member zero there"
            }
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LemmaId::L3_1 => "L3.1",
            LemmaId::L3_2 => "L3.2",
            LemmaId::L3_3 => "L3.3",
            LemmaId::L3_4 => "L3.4",
            LemmaId::L3_5 => "L3.5",
            LemmaId::L3_6 => "L3.6",
            LemmaId::L3_7 => "L3.7",
            LemmaId::L3_8 => "L3.8",
            LemmaId::L3_9 => "L3.9",
            LemmaId::L3_10 => "L3.10",
            LemmaId::S4_9 => "S4.9",
            LemmaId::S4_11 => "S4.11",
            LemmaId::S4_13 => "S4.13",
        };
        f.write_str(s)
    }
}

/// A member flow (by edge id) and what about it breaks the statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub flow: Vec<(EdgeId, Z2Z2)>,
    pub detail: String,
}

impl Witness {
    fn of(q: &Quadruple, g: &Z2Z2Flow, detail: String) -> Self {
        let graph = q.graph();
        Witness {
            flow: (0..g.len()).map(|p| (graph.id(p), g.get(p))).collect(),
            detail,
        }
    }

    /// A witness that is only a weight pattern.
    pub fn pattern(detail: String) -> Self {
        Witness {
            flow: Vec::new(),
            detail,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("witness=")?;
        if self.flow.is_empty() {
            f.write_str("-")?;
        }
        for (k, (id, v)) in self.flow.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}:{v}")?;
        }
        write!(f, " detail=\"{}\"", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub verdicts: BTreeMap<LemmaId, Verdict>,
    pub notes: Vec<String>,
    pub members: u64,
}

impl AuditReport {
    pub fn verdict(&self, id: LemmaId) -> &Verdict {
        &self.verdicts[&id]
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, v) in &self.verdicts {
            match v {
                Verdict::Pass => writeln!(f, "{id} pass")?,
                Verdict::Fail(w) => writeln!(f, "{id} fail {w}")?,
                Verdict::NotApplicable(r) => writeln!(f, "{id} n/a reason={r}")?,
            }
        }
        for note in &self.notes {
            writeln!(f, "# {note}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    applicable: bool,
    fail: Option<Witness>,
}

#[derive(Clone, Debug, Default)]
struct Tallies {
    lemmas: [Tally; 13],
    skipped_frames: u64,
    truncated_paths: bool,
}

impl Tallies {
    fn check(&mut self, id: LemmaId, ok: bool, witness: impl FnOnce() -> Witness) {
        let t = &mut self.lemmas[id.index()];
        t.applicable = true;
        if !ok && t.fail.is_none() {
            t.fail = Some(witness());
        }
    }

    /// Folds a later batch in; earlier failures win.
    fn absorb(&mut self, later: Tallies) {
        for (mine, theirs) in self.lemmas.iter_mut().zip(later.lemmas) {
            mine.applicable |= theirs.applicable;
            if mine.fail.is_none() {
                mine.fail = theirs.fail;
            }
        }
        self.skipped_frames += later.skipped_frames;
        self.truncated_paths |= later.truncated_paths;
    }

    fn verdicts(&self, only: &[LemmaId], skipped_reason: &str) -> BTreeMap<LemmaId, Verdict> {
        LemmaId::ALL
            .iter()
            .map(|&id| {
                let t = &self.lemmas[id.index()];
                let v = if !only.contains(&id) {
                    Verdict::NotApplicable(skipped_reason.to_string())
                } else if let Some(w) = &t.fail {
                    Verdict::Fail(w.clone())
                } else if t.applicable {
                    Verdict::Pass
                } else {
                    Verdict::NotApplicable(id.unmet().to_string())
                };
                (id, v)
            })
            .collect()
    }
}

/// Where a heavy segment's `v2v3` edge may be zero in some member, the
/// lengths of the maximal segments through it, each with one member realising it.
type ZeroRuns = Vec<BTreeMap<usize, usize>>;

struct Ctx<'a> {
    q: &'a Quadruple,
    omega: u64,
    members: &'a [Z2Z2Flow],
    zero_runs: Option<ZeroRuns>,
    path_cap: usize,
}

/// Pairings of one member keyed by the unordered value pair.
struct PairingCache<'a> {
    q: &'a Quadruple,
    g: &'a Z2Z2Flow,
    cache: HashMap<(u8, u8), PairingReport>,
}

impl<'a> PairingCache<'a> {
    fn new(q: &'a Quadruple, g: &'a Z2Z2Flow) -> Self {
        PairingCache {
            q,
            g,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, a: Z2Z2, b: Z2Z2) -> &PairingReport {
        let key = (a.code().min(b.code()), a.code().max(b.code()));
        self.cache
            .entry(key)
            .or_insert_with(|| pairing(self.q, self.g, a, b))
    }
}

/// Full audit of a quadruple.
///
/// With `claims_counterexample`, the instance is first re-verified with the
/// oracle and rejected if the bound holds.
pub fn audit(q: &Quadruple, claims_counterexample: bool, budget: u128) -> Result<AuditReport> {
    let oracle = SearchOptions {
        budget,
        ..SearchOptions::oracle()
    };
    if claims_counterexample {
        let verdict = verify_theorem(q, Regime::Hunt, &oracle)?;
        if verdict.holds() {
            return Err(Error::NotACounterexample {
                minimum: verdict.zero_weight(),
                circuit_weight: q.circuit_weight(),
            });
        }
    }

    let members: Vec<Z2Z2Flow> = enumerate_class_oracle(q, budget)?.collect();
    let catalogue = RunCatalogue::build(q, budget)?;
    let n = q.circuit().len();

    let mut zero_runs: ZeroRuns = vec![BTreeMap::new(); n];
    for (k, g) in members.iter().enumerate() {
        for s in alternating_segments(g, q.circuit()) {
            if !catalogue.is_maximal(g, q.circuit(), &s) {
                continue;
            }
            for i in s.indices(n) {
                if g.get(q.circuit().edge_at(i as isize)).is_zero() {
                    zero_runs[i].entry(s.len).or_insert(k);
                }
            }
        }
    }

    let ctx = Ctx {
        q,
        omega: q.circuit().max_weight(q.weights()),
        members: &members,
        zero_runs: Some(zero_runs),
        path_cap: PATH_CAP,
    };

    let partial: Vec<Tallies> = members
        .par_iter()
        .map(|g| {
            let mut t = Tallies::default();
            member_checks(&ctx, g, &mut t);
            for s in alternating_segments(g, q.circuit()) {
                if catalogue.is_maximal(g, q.circuit(), &s) {
                    segment_checks(&ctx, g, &s, &mut t);
                }
            }
            t
        })
        .collect();
    let mut total = Tallies::default();
    for t in partial {
        total.absorb(t);
    }

    let mut notes = base_notes(q);
    if total.skipped_frames > 0 {
        notes.push(format!(
            "{} segment frames skipped: flanking values zero or equal, no normal form",
            total.skipped_frames
        ));
    }
    if total.truncated_paths {
        notes.push(format!("t'' path enumeration capped at {PATH_CAP} paths per t'"));
    }
    Ok(AuditReport {
        verdicts: total.verdicts(&LemmaId::ALL, ""),
        notes,
        members: members.len() as u64,
    })
}

fn base_notes(q: &Quadruple) -> Vec<String> {
    let mut notes = vec![
        "t'' is evaluated for every enumerated path P1; L3.6 folds in t'' <= |S|".to_string(),
        "S4 predicates exclude the inference that rests on an unresolved cross-reference".to_string(),
        "L3.4 uses 1 < s < r < t with v1~vr and vs~vt in one component of P_{a,a+b}".to_string(),
    ];
    if q.circuit_weight() > 35 {
        notes.push(format!(
            "w(C) = {} exceeds 35; the bound 8 in L3.1 and the weight cap in L3.7 are not implied",
            q.circuit_weight()
        ));
    }
    notes
}

/// Lemmas that only need `g` and a segment the caller asserts is maximal:
/// L3.4 through L3.9, and L3.10/S4 when `Omega = 2` (then `S' = S`).
pub const DESIGNATED: [LemmaId; 10] = [
    LemmaId::L3_4,
    LemmaId::L3_5,
    LemmaId::L3_6,
    LemmaId::L3_7,
    LemmaId::L3_8,
    LemmaId::L3_9,
    LemmaId::L3_10,
    LemmaId::S4_9,
    LemmaId::S4_11,
    LemmaId::S4_13,
];

/// Audits one member and one segment without enumerating the class.
pub fn audit_designated(q: &Quadruple, g: &Z2Z2Flow, s: Segment) -> Result<AuditReport> {
    if !q.is_member(g) {
        return Err(Error::InvalidQuadruple("designated flow is not a class member".into()));
    }
    let members = [g.clone()];
    let ctx = Ctx {
        q,
        omega: q.circuit().max_weight(q.weights()),
        members: &members,
        zero_runs: None,
        path_cap: PATH_CAP,
    };
    let mut t = Tallies::default();
    segment_checks(&ctx, g, &s, &mut t);
    let mut notes = base_notes(q);
    notes.push("designated audit: segment maximality is assumed, class-wide lemmas skipped".into());
    Ok(AuditReport {
        verdicts: t.verdicts(&DESIGNATED, "class-wide lemma, not evaluated on a designation"),
        notes,
        members: 1,
    })
}

fn member_checks(ctx: &Ctx<'_>, g: &Z2Z2Flow, t: &mut Tallies) {
    let q = ctx.q;
    let c = q.circuit();
    let n = c.len();
    let total = q.circuit_weight();
    let graph = q.graph();

    for a in Z2Z2::ALL {
        let wa = q.class_weight(g, a);
        t.check(LemmaId::L3_1, 4 * wa == total, || {
            Witness::of(q, g, format!("w(E_{{g={a}}}(C)) = {wa}, w(C) = {total}"))
        });
    }

    if n < 3 {
        return;
    }
    for i in 0..n as isize {
        let (e, f) = (c.edge_at(i), c.edge_at(i + 1));
        t.check(LemmaId::L3_2, g.get(e) != g.get(f), || {
            Witness::of(
                q,
                g,
                format!(
                    "circuit edges {} and {} both {}; lifting them applies",
                    graph.id(e),
                    graph.id(f),
                    g.get(e)
                ),
            )
        });
    }

    let mut pairs = PairingCache::new(q, g);
    for i in 0..n as isize {
        let x = c.vertex_at(i);
        let (left, right) = (c.edge_at(i - 1), c.edge_at(i));
        for (e1, e2) in [(left, right), (right, left)] {
            let (a, b) = (g.get(e1), g.get(e2));
            if a.is_zero() || b.is_zero() || a == b {
                continue;
            }
            let Ok(partners) = pairs.get(a, a + b).partners(x) else {
                continue;
            };
            for y in partners {
                let Some(j) = c.index_of_vertex(y) else { continue };
                let j = j as isize;
                let sum = g.get(c.edge_at(j - 1)) + g.get(c.edge_at(j));
                t.check(LemmaId::L3_3, sum != b, || {
                    Witness::of(
                        q,
                        g,
                        format!("x={x} y={y} a={a} b={b}: circuit values at y sum to b"),
                    )
                });
                let ni = n as isize;
                let fwd = Segment {
                    start: i as usize,
                    len: ((j - i).rem_euclid(ni)) as usize,
                };
                let bwd = Segment {
                    start: j as usize,
                    len: ((i - j).rem_euclid(ni)) as usize,
                };
                for arc in [fwd, bwd] {
                    let arc_edges = arc.edge_set(c, graph.edge_count());
                    for cv in Z2Z2::ALL {
                        let lhs = q.weights().total(&g.value_set(cv).and(&arc_edges));
                        let rhs = q.weights().total(&g.value_set(cv + b).and(&arc_edges));
                        t.check(LemmaId::L3_3, lhs == rhs, || {
                            Witness::of(
                                q,
                                g,
                                format!(
                                    "x={x} y={y} a={a} b={b}: arc from circuit edge {} of length {} has w_{cv}={lhs} but w_{}={rhs}",
                                    arc.start,
                                    arc.len,
                                    cv + b
                                ),
                            )
                        });
                    }
                }
            }
        }
    }
}

fn segment_label(s: &Segment, dir: Option<Direction>) -> String {
    match dir {
        None => format!("segment start={} len={}", s.start, s.len),
        Some(d) => format!("segment start={} len={} dir={:?}", s.start, s.len, d),
    }
}

fn segment_checks(ctx: &Ctx<'_>, g: &Z2Z2Flow, s: &Segment, t: &mut Tallies) {
    let q = ctx.q;
    let c = q.circuit();
    let n = c.len();
    let omega = ctx.omega;
    let len = s.len;
    let zero_weights: Vec<u64> = s
        .indices(n)
        .map(|i| c.edge_at(i as isize))
        .filter(|&p| g.get(p).is_zero())
        .map(|p| q.weights().at(p))
        .collect();
    let heavy = zero_weights.contains(&omega);
    let label = segment_label(s, None);

    if heavy || (omega == 3 && zero_weights.contains(&2)) {
        t.check(LemmaId::L3_5, len + 2 <= n, || {
            Witness::of(q, g, format!("{label}: |S| > |C| - 2 with Omega={omega}"))
        });
    }
    if heavy {
        t.check(LemmaId::L3_7, len >= 9 && omega <= 4, || {
            Witness::of(q, g, format!("{label}: |S|={len}, Omega={omega}"))
        });
    }

    let frames = [
        Frame::new(c, *s, Direction::Forward),
        Frame::new(c, *s, Direction::Backward),
    ];
    let weights = [frames[0].weights(c, q.weights()), frames[1].weights(c, q.weights())];
    if heavy && omega == 4 {
        let r = pattern_in_some_direction(&weights[0], &weights[1], len, omega_four_pattern);
        t.check(LemmaId::L3_8, r.is_ok(), || {
            Witness::of(q, g, format!("{label}: {}", r.clone().unwrap_err()))
        });
    }
    if heavy && omega == 3 {
        let r = pattern_in_some_direction(&weights[0], &weights[1], len, omega_three_pattern);
        t.check(LemmaId::L3_9, r.is_ok(), || {
            Witness::of(q, g, format!("{label}: {}", r.clone().unwrap_err()))
        });
    }

    for (frame, w) in frames.iter().zip(&weights) {
        let dl = segment_label(s, Some(frame.direction));
        if let Some((_, gn)) = normalize(c, frame, g) {
            frame_checks(ctx, g, &gn, frame, w, &dl, t);
        } else {
            t.skipped_frames += 1;
        }
        if heavy && len >= 2 && w[2] == 2 {
            shifted_segment_checks(ctx, g, s, frame, &dl, t);
        }
    }
}

fn frame_checks(
    ctx: &Ctx<'_>,
    g: &Z2Z2Flow,
    gn: &Z2Z2Flow,
    frame: &Frame,
    w: &[u64],
    label: &str,
    t: &mut Tallies,
) {
    let q = ctx.q;
    let c = q.circuit();
    let n = c.len();
    let len = frame.len();
    let (a, b) = (Z2Z2::A10, Z2Z2::A11);
    let vals = frame.values(c, gn);

    // L3.4
    let p = pairing(q, gn, a, a + b);
    let comp: Vec<Option<usize>> = (0..n).map(|i| p.component_of(frame.vertex(c, i as isize))).collect();
    let mut prefix = vec![[0u64; 4]; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i];
        prefix[i + 1][vals[i].code() as usize] += w[i];
    }
    // weight of value v on frame edges 1..k-1, i.e. the path v1..vk
    let path_w = |k: usize, v: Z2Z2| prefix[k][v.code() as usize] - prefix[1][v.code() as usize];
    if let Some(c1) = comp[1] {
        for r in 3..n {
            if comp[r] != Some(c1) {
                continue;
            }
            for s_ in 2..r {
                let Some(cs) = comp[s_] else { continue };
                for t_ in r + 1..n {
                    if comp[t_] != Some(cs) {
                        continue;
                    }
                    for cv in Z2Z2::ALL {
                        let (lhs, rhs) = (path_w(t_, cv), path_w(s_, cv + b));
                        t.check(LemmaId::L3_4, lhs == rhs, || {
                            Witness::of(
                                q,
                                g,
                                format!("{label}: r={r} s={s_} t={t_}: w_{cv}(v1..v{t_})={lhs}, w_{}(v1..v{s_})={rhs}", cv + b),
                            )
                        });
                    }
                }
            }
        }
    }

    // L3.6
    match anchors(q, gn, frame, ctx.path_cap) {
        Ok(an) => {
            t.truncated_paths |= an.truncated;
            let omega = ctx.omega;
            for &ti in &an.t {
                t.check(LemmaId::L3_6, (5..=len).contains(&ti) && ti != 6, || {
                    Witness::of(q, g, format!("{label}: t={ti} outside 5..=|S| or equal to 6"))
                });
                if ti == 7 {
                    t.check(LemmaId::L3_6, vals[2] == b && vals[4] == b, || {
                        Witness::of(q, g, format!("{label}: t=7 but normalised g(v2v3)={}, g(v4v5)={}", vals[2], vals[4]))
                    });
                }
                if len >= 3 && (w[1] == omega || w[3] == omega) {
                    t.check(LemmaId::L3_6, ti >= 7, || {
                        Witness::of(q, g, format!("{label}: Omega on v1v2 or v3v4 but t={ti}"))
                    });
                }
            }
            for sa in &an.t_double_prime {
                for &tpp in &sa.partners {
                    t.check(LemmaId::L3_6, tpp <= len, || {
                        Witness::of(q, g, format!("{label}: t'={} gives t''={tpp} > |S|", sa.t_prime))
                    });
                }
            }
        }
        Err(_) => {
            // v0 is odd in P_{a,a+b} whenever g is nonzero off C; otherwise
            // the anchors are undefined and the frame is skipped
            t.skipped_frames += 1;
        }
    }
}

/// L3.10 and the S4 exclusions for segments `S'` through frame edge 2.
fn shifted_segment_checks(ctx: &Ctx<'_>, g: &Z2Z2Flow, s: &Segment, frame: &Frame, label: &str, t: &mut Tallies) {
    let q = ctx.q;
    let n = q.circuit().len();
    let mut candidates: Vec<(usize, &Z2Z2Flow, &str)> = Vec::new();
    if ctx.omega == 2 {
        candidates.push((s.len, g, "S'=S since Omega=2"));
    } else if let Some(runs) = &ctx.zero_runs {
        for (&l, &k) in &runs[frame.edge_index(2)] {
            candidates.push((l, &ctx.members[k], "maximal S' of g' through v2v3"));
        }
    }
    for (l, h, how) in candidates {
        let detail = |what: &str| format!("{label}: {how} has |S'|={l}; {what}");
        t.check(LemmaId::L3_10, (9..=n.saturating_sub(2)).contains(&l), || {
            Witness::of(q, h, detail("needs 9 <= |S'| <= |C|-2"))
        });
        for (id, bad) in [(LemmaId::S4_9, 9), (LemmaId::S4_11, 11), (LemmaId::S4_13, 13)] {
            t.check(id, l != bad, || Witness::of(q, h, detail(&format!("|S'| = {bad} is excluded"))));
        }
    }
}

/// Why a segment does not match a weight pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternMismatch {
    TooShort { len: usize, min: usize },
    Weight { frame_edge: usize, expected: u64, actual: u64 },
}

impl fmt::Display for PatternMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternMismatch::TooShort { len, min } => {
                write!(f, "|S| = {len}, pattern needs at least {min} edges")
            }
            PatternMismatch::Weight {
                frame_edge,
                expected,
                actual,
            } => write!(
                f,
                "w(v{}v{}) = {actual}, expected {expected}",
                frame_edge,
                frame_edge + 1
            ),
        }
    }
}

fn expect(w: &[u64], i: usize, want: u64) -> std::result::Result<(), PatternMismatch> {
    let actual = w.get(i).copied().unwrap_or(0);
    if actual == want {
        Ok(())
    } else {
        Err(PatternMismatch::Weight {
            frame_edge: i,
            expected: want,
            actual,
        })
    }
}

fn need_len(len: usize, min: usize) -> std::result::Result<(), PatternMismatch> {
    if len >= min {
        Ok(())
    } else {
        Err(PatternMismatch::TooShort { len, min })
    }
}

/// `w(v5v6) = 4`, the other zero edges of `S` weigh 1, `w(v2v3) = w(v8v9) = 2`.
///
/// `w` holds frame weights; zero edges of `S` sit at odd frame positions.
pub fn omega_four_pattern(w: &[u64], len: usize) -> std::result::Result<(), PatternMismatch> {
    need_len(len, 9)?;
    expect(w, 5, 4)?;
    for i in (1..=len).step_by(2).filter(|&i| i != 5) {
        expect(w, i, 1)?;
    }
    expect(w, 2, 2)?;
    expect(w, 8, 2)
}

/// `w(v5v6) = 3`, `w(v2v3) = 2`, `w(v1v2) = w(v3v4) = 1`.
pub fn omega_three_pattern(w: &[u64], len: usize) -> std::result::Result<(), PatternMismatch> {
    need_len(len, 5)?;
    expect(w, 5, 3)?;
    expect(w, 2, 2)?;
    expect(w, 1, 1)?;
    expect(w, 3, 1)
}

/// Accepts if either direction matches; otherwise reports the forward mismatch.
pub fn pattern_in_some_direction(
    forward: &[u64],
    backward: &[u64],
    len: usize,
    pattern: fn(&[u64], usize) -> std::result::Result<(), PatternMismatch>,
) -> std::result::Result<(), PatternMismatch> {
    match pattern(forward, len) {
        Ok(()) => Ok(()),
        Err(e) => pattern(backward, len).map_err(|_| e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: [u64; 12] = [4, 1, 2, 1, 4, 4, 4, 1, 2, 1, 4, 4];

    #[test]
    fn figure_one_weights_match() {
        assert_eq!(omega_four_pattern(&FIG1, 9), Ok(()));
        let mut w = FIG1;
        w[8] = 1;
        assert_eq!(
            omega_four_pattern(&w, 9),
            Err(PatternMismatch::Weight {
                frame_edge: 8,
                expected: 2,
                actual: 1
            })
        );
    }

    #[test]
    fn pattern_direction_fallback() {
        let mut fwd = FIG1;
        fwd[2] = 3;
        // mirror image of the segment read backwards
        let mut bwd = [0u64; 12];
        for i in 1..=9 {
            bwd[i] = FIG1[10 - i];
        }
        assert!(pattern_in_some_direction(&fwd, &bwd, 9, omega_four_pattern).is_ok());
        let err = pattern_in_some_direction(&fwd, &fwd, 9, omega_four_pattern).unwrap_err();
        assert!(matches!(err, PatternMismatch::Weight { frame_edge: 2, .. }));
    }

    #[test]
    fn short_segment_fails_pattern() {
        assert!(omega_three_pattern(&[1, 1, 2, 1, 1, 3], 3).is_err());
        assert!(omega_three_pattern(&[1, 1, 2, 1, 1, 3, 1], 5).is_ok());
    }

    #[test]
    fn report_lines() {
        let mut t = Tallies::default();
        t.check(LemmaId::L3_2, true, || unreachable!());
        t.check(LemmaId::L3_7, false, || Witness {
            flow: vec![(0, Z2Z2::A10), (1, Z2Z2::ZERO)],
            detail: "x".into(),
        });
        let report = AuditReport {
            verdicts: t.verdicts(&LemmaId::ALL, ""),
            notes: vec![],
            members: 0,
        };
        let text = report.to_string();
        assert!(text.contains("L3.2 pass\n"));
        assert!(text.contains("L3.7 fail witness=0:10,1:00 detail=\"x\"\n"));
        assert!(text.contains("L3.8 n/a reason="));
        assert_eq!(text.lines().count(), 13);
    }

    #[test]
    fn figure_fixtures_through_designated_audit() {
        use crate::fixtures::*;
        let (q, g, s) = figure_one(&FIGURE_ONE_WEIGHTS);
        let r = audit_designated(&q, &g, s).unwrap();
        assert!(r.verdict(LemmaId::L3_8).is_pass(), "{r}");
        assert!(matches!(r.verdict(LemmaId::L3_9), Verdict::NotApplicable(_)));

        let mut w = FIGURE_ONE_WEIGHTS;
        w[8] = 3;
        let (q, g, s) = figure_one(&w);
        let r = audit_designated(&q, &g, s).unwrap();
        assert!(r.verdict(LemmaId::L3_8).is_fail(), "{r}");

        let (q, g, s) = figure_two(&FIGURE_TWO_WEIGHTS);
        let r = audit_designated(&q, &g, s).unwrap();
        assert!(r.verdict(LemmaId::L3_9).is_pass(), "{r}");
        let mut w = FIGURE_TWO_WEIGHTS;
        w[2] = 1;
        let (q, g, s) = figure_two(&w);
        let r = audit_designated(&q, &g, s).unwrap();
        assert!(r.verdict(LemmaId::L3_9).is_fail(), "{r}");
    }

    #[test]
    fn holding_instance_is_not_a_counterexample() {
        let q = crate::fixtures::instance_a([1; 6]);
        let err = audit(&q, true, crate::search::DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::NotACounterexample { minimum: 0, circuit_weight: 3 }));
    }

    #[test]
    fn full_audit_on_instance_a() {
        let q = crate::fixtures::instance_a([4, 4, 4, 1, 1, 1]);
        let r = audit(&q, false, crate::search::DEFAULT_BUDGET).unwrap();
        // off-circuit star at vertex 3: 6 nonzero triples, times 4 circuit shifts
        assert_eq!(r.members, 24);
        assert_eq!(r.verdicts.len(), 13);
        // some member has a zero class below a quarter of w(C)
        assert!(r.verdict(LemmaId::L3_1).is_fail());
    }
}
