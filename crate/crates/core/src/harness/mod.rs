//! Instance generation, sweeps, counterexample hunting and cycle covers.

pub mod generate;
pub mod sweep;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use crate::audit::{audit, AuditReport};
use crate::bits::EdgeSet;
use crate::error::{Error, Result};
use crate::flow::{decompose_into_circuits, is_valid_flow, two_cycle_cover, Z2Z2Flow};
use crate::format::{write_atomic, write_quadruple};
use crate::graph::{EdgeId, Multigraph};
use crate::reduce::{reduce_quadruple, Reduction, ReductionReport};
use crate::search::{nowhere_zero_flow, verify_theorem, Quadruple, Regime, SearchOptions};

pub use generate::{generate, generate_instance, Base, GeneratorConfig, Instance, WeightPolicy};
pub use sweep::{sweep, Outcome, SweepOptions, SweepRecord, SweepSummary};

/// A sweep counterexample after oracle re-verification.
#[derive(Clone, Debug)]
pub enum Candidate {
    /// The oracle confirms `4 * min >= w(C)`.
    Confirmed {
        id: u64,
        quadruple: Quadruple,
        oracle_minimum: u64,
        reduction: ReductionReport,
        audit: std::result::Result<AuditReport, String>,
        files: Vec<PathBuf>,
    },
    /// The oracle found a better member: the fast search is wrong here.
    Rejected { id: u64, fast_minimum: u64, oracle_minimum: u64 },
}

#[derive(Clone, Debug)]
pub struct HuntReport {
    pub summary: SweepSummary,
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug)]
pub struct HuntOptions {
    pub sweep: SweepOptions,
    /// Budget for oracle re-verification, reduction and audit.
    pub oracle_budget: u128,
    pub archive_dir: PathBuf,
}

/// Sweeps in hunt mode and follows up every instance where no member beats a
/// quarter of `w(C)`: oracle re-check, reduction, audit, archive.
pub fn hunt<W: Write>(cfg: &GeneratorConfig, opts: &HuntOptions, out: W) -> Result<HuntReport> {
    if cfg.mode != Regime::Hunt {
        return Err(Error::InvalidConfig("hunt needs hunt mode".into()));
    }
    let mut candidates = Vec::new();
    let summary = sweep::run(cfg, &opts.sweep, out, |id, q| {
        candidates.push(follow_up(cfg.seed, id, q, opts)?);
        Ok(false)
    })?;
    Ok(HuntReport { summary, candidates })
}

fn follow_up(seed: u64, id: u64, q: &Quadruple, opts: &HuntOptions) -> Result<Candidate> {
    let oracle = SearchOptions {
        budget: opts.oracle_budget,
        ..SearchOptions::oracle()
    };
    let fast = crate::search::minimize_zero_weight(q, &opts.sweep.search)?.minimum_zero_weight;
    let verdict = verify_theorem(q, Regime::Hunt, &oracle)?;
    if verdict.holds() {
        return Ok(Candidate::Rejected {
            id,
            fast_minimum: fast,
            oracle_minimum: verdict.zero_weight(),
        });
    }
    let stem = format!("candidate-{seed}-{id}");
    let mut files = vec![sweep::dump(&opts.archive_dir, &stem, q)?];
    let reduction = reduce_quadruple(q, &oracle)?;
    let audited = match &reduction.outcome {
        Reduction::Reduced(r) => {
            files.push(sweep::dump(&opts.archive_dir, &format!("{stem}.reduced"), r)?);
            audit(r, true, opts.oracle_budget)
        }
        Reduction::Resolved { .. } => audit(q, true, opts.oracle_budget),
    };
    let audit_text = match &audited {
        Ok(report) => report.to_string(),
        Err(e) => format!("# audit failed: {e}\n"),
    };
    let audit_path = opts.archive_dir.join(format!("{stem}.audit.txt"));
    write_atomic(&audit_path, &audit_text)?;
    files.push(audit_path);
    Ok(Candidate::Confirmed {
        id,
        quadruple: q.clone(),
        oracle_minimum: verdict.zero_weight(),
        reduction,
        audit: audited.map_err(|e| e.to_string()),
        files,
    })
}

/// Two cycles covering every edge, from a nowhere-zero flow.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverReport {
    pub flow: Z2Z2Flow,
    /// Support of the first and second coordinate.
    pub s1: EdgeSet,
    pub s2: EdgeSet,
    /// Each cycle split into circuits, as edge ids in traversal order.
    pub circuits1: Vec<Vec<EdgeId>>,
    pub circuits2: Vec<Vec<EdgeId>>,
    pub total: usize,
    pub edges: usize,
}

impl CoverReport {
    pub fn ratio(&self) -> f64 {
        self.total as f64 / self.edges as f64
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, circuits) in [("S1", &self.circuits1), ("S2", &self.circuits2)] {
            for c in circuits.iter() {
                let ids: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                writeln!(f, "{name} circuit {}", ids.join(" "))?;
            }
        }
        writeln!(f, "|S1| = {}", self.s1.count())?;
        writeln!(f, "|S2| = {}", self.s2.count())?;
        writeln!(f, "total = {}", self.total)?;
        writeln!(f, "|E| = {}", self.edges)?;
        writeln!(f, "ratio = {:.4}", self.ratio())?;
        // informational only
        writeln!(f, "34/21 = {:.4} (ratio below: {})", 34.0 / 21.0, self.ratio() < 34.0 / 21.0)?;
        writeln!(f, "50/31 = {:.4} (ratio below: {})", 50.0 / 31.0, self.ratio() < 50.0 / 31.0)
    }
}

/// Covers `g` by the supports of a nowhere-zero flow's two coordinates.
///
/// Uses `flow` when given, else searches for one with fewest `11` edges.
pub fn cover(g: &Multigraph, flow: Option<&Z2Z2Flow>, jobs: usize) -> Result<CoverReport> {
    let flow = match flow {
        Some(f) => {
            if !is_valid_flow(g, f) {
                return Err(Error::InvalidQuadruple("cover flow violates conservation".into()));
            }
            f.clone()
        }
        None => nowhere_zero_flow(g, jobs).ok_or(Error::NoNowhereZeroFlow)?,
    };
    let (s1, s2) = two_cycle_cover(g, &flow)?;
    let split = |s: &EdgeSet| -> Result<Vec<Vec<EdgeId>>> {
        Ok(decompose_into_circuits(g, s)?
            .into_iter()
            .map(|steps| steps.iter().map(|st| g.id(st.edge)).collect())
            .collect())
    };
    Ok(CoverReport {
        circuits1: split(&s1)?,
        circuits2: split(&s2)?,
        total: s1.count() + s2.count(),
        edges: g.edge_count(),
        flow,
        s1,
        s2,
    })
}

/// Text of a quadruple as archived by sweeps and hunts.
pub fn archive_text(name: &str, q: &Quadruple) -> String {
    write_quadruple(name, q)
}
