//! Seeded random quadruples.
//!
//! Instance `i` of a run draws from ChaCha8 seeded with `seed` on stream `i`,
//! so instances are independent of each other and of worker count.
//!
//! Shape on the default base: a circuit `0 -> 1 -> ... -> L-1 -> 0` (edge `i` has id `i`), extra
//! vertices each hung on two distinct existing vertices (so the graph stays
//! bridgeless), then random chords between distinct vertices. The flow is the
//! first random combination of cycle-basis rows that is nonzero off the circuit.
//!
//! Random shapes almost always admit a class member with no zero on the
//! circuit, so their minimum is 0. The Petersen base has no nowhere-zero
//! flow at all and forces a positive minimum.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fixtures::PETERSEN_NINE;
use crate::flow::{cycle_basis, Z2Z2Flow, Z2Z2};
use crate::graph::{Circuit, EdgeId, Multigraph, WeightMap};
use crate::search::{Quadruple, Regime, THEOREM_MAX_WEIGHT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightPolicy {
    Unit,
    /// Uniform in `1..=max` on every edge.
    Bounded(u64),
    /// `w(C)` drawn from `totals`, spread over the circuit with each edge in
    /// `1..=max_edge`; off-circuit edges uniform in `1..=max_edge`.
    Targeted { totals: Vec<u64>, max_edge: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// A fresh circuit of length drawn from `circuit_len`.
    Circuit,
    /// The Petersen graph on a 9-circuit; `circuit_len` is ignored.
    Petersen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub count: u64,
    pub base: Base,
    pub circuit_len: RangeInclusive<usize>,
    pub extra_vertices: RangeInclusive<usize>,
    pub chords: RangeInclusive<usize>,
    pub max_dimension: usize,
    pub weights: WeightPolicy,
    pub mode: Regime,
    /// Shape redraws before an instance is given up.
    pub shape_attempts: u32,
    /// Random flows tried per shape.
    pub flow_attempts: u32,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            count: 100,
            base: Base::Circuit,
            circuit_len: 7..=12,
            extra_vertices: 0..=3,
            chords: 1..=5,
            max_dimension: 8,
            weights: WeightPolicy::Targeted {
                totals: vec![28, 32],
                max_edge: 4,
            },
            mode: Regime::Theorem,
            shape_attempts: 64,
            flow_attempts: 4096,
        }
    }
}

impl GeneratorConfig {
    /// Circuit lengths the base can produce.
    pub fn effective_circuit_len(&self) -> RangeInclusive<usize> {
        match self.base {
            Base::Circuit => self.circuit_len.clone(),
            Base::Petersen => 9..=9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        let lens = self.effective_circuit_len();
        if lens.is_empty() || *lens.start() < 1 {
            return bad(format!("circuit length range {lens:?}"));
        }
        if self.extra_vertices.is_empty() || self.chords.is_empty() {
            return bad("empty vertex or chord range".into());
        }
        let max_len = *lens.end() as u64;
        let min_len = *lens.start() as u64;
        let (lo, hi) = match &self.weights {
            WeightPolicy::Unit => (min_len, max_len),
            WeightPolicy::Bounded(w) if *w >= 1 => (min_len, max_len * w),
            WeightPolicy::Bounded(_) => return bad("weight bound must be positive".into()),
            WeightPolicy::Targeted { totals, max_edge } => {
                if totals.is_empty() || *max_edge < 1 {
                    return bad("targeted weights need totals and a positive edge cap".into());
                }
                if totals.iter().any(|&t| t < min_len || t > max_len * max_edge) {
                    return bad(format!(
                        "a total in {totals:?} cannot be split over {lens:?} edges of weight 1..={max_edge}"
                    ));
                }
                (*totals.iter().min().unwrap(), *totals.iter().max().unwrap())
            }
        };
        match self.mode {
            Regime::Theorem if hi > THEOREM_MAX_WEIGHT => bad(format!(
                "theorem mode needs w(C) <= {THEOREM_MAX_WEIGHT}, policy allows up to {hi}"
            )),
            Regime::Hunt => match &self.weights {
                WeightPolicy::Targeted { totals, .. }
                    if totals.iter().all(|&t| (36..=40).contains(&t) && t % 4 == 0) =>
                {
                    Ok(())
                }
                _ => bad(format!(
                    "hunt mode needs targeted totals in 36..=40 divisible by 4 (policy spans {lo}..={hi})"
                )),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Generated { id: u64, quadruple: Quadruple },
    /// No admissible shape or flow within the attempt limits.
    Exhausted { id: u64, reason: String },
}

impl Instance {
    pub fn id(&self) -> u64 {
        match self {
            Instance::Generated { id, .. } | Instance::Exhausted { id, .. } => *id,
        }
    }
}

/// The random stream for instance `id`.
pub fn instance_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

pub fn generate_instance(cfg: &GeneratorConfig, id: u64) -> Instance {
    let mut rng = instance_rng(cfg.seed, id);
    let mut last = String::from("no attempts");
    for _ in 0..cfg.shape_attempts.max(1) {
        let (graph, len) = random_shape(cfg, &mut rng);
        let dim = graph.cycle_space_dimension();
        if dim > cfg.max_dimension {
            last = format!("dimension {dim} above {}", cfg.max_dimension);
            continue;
        }
        let Some(weights) = random_weights(cfg, &graph, len, &mut rng) else {
            last = format!("no target total fits a circuit of length {len}");
            continue;
        };
        let ids: Vec<EdgeId> = (0..len as u64).collect();
        let circuit = Circuit::from_edge_ids(&graph, &ids).expect("generated circuit");
        match random_flow(&graph, &circuit, cfg.flow_attempts, &mut rng) {
            Some(flow) => {
                let quadruple = Quadruple::new(graph, flow, circuit, weights).expect("generated quadruple");
                return Instance::Generated { id, quadruple };
            }
            None => last = format!("no flow nonzero off C in {} draws", cfg.flow_attempts),
        }
    }
    Instance::Exhausted { id, reason: last }
}

/// Instances `0..count` in order.
pub fn generate(cfg: &GeneratorConfig) -> Result<impl Iterator<Item = Instance> + '_> {
    cfg.validate()?;
    Ok((0..cfg.count).map(move |id| generate_instance(cfg, id)))
}

fn random_shape(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> (Multigraph, usize) {
    let (len, mut triples, mut n): (usize, Vec<(EdgeId, usize, usize)>, usize) = match cfg.base {
        Base::Circuit => {
            let len = rng.gen_range(cfg.circuit_len.clone());
            (len, (0..len).map(|i| (i as u64, i, (i + 1) % len)).collect(), len)
        }
        Base::Petersen => (9, PETERSEN_NINE.to_vec(), 10),
    };
    let extra = rng.gen_range(cfg.extra_vertices.clone());
    let chords = rng.gen_range(cfg.chords.clone());
    for _ in 0..extra {
        let mut pool: Vec<usize> = (0..n).collect();
        pool.shuffle(rng);
        let (a, b) = if n >= 2 { (pool[0], pool[1]) } else { (0, 0) };
        triples.push((triples.len() as u64, a, n));
        triples.push((triples.len() as u64, b, n));
        n += 1;
    }
    for _ in 0..chords {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        triples.push((triples.len() as u64, u, v));
    }
    (Multigraph::from_triples(n, &triples).expect("generated graph"), len)
}

fn random_weights(cfg: &GeneratorConfig, g: &Multigraph, len: usize, rng: &mut ChaCha8Rng) -> Option<WeightMap> {
    let m = g.edge_count();
    let w = match &cfg.weights {
        WeightPolicy::Unit => vec![1; m],
        WeightPolicy::Bounded(max) => (0..m).map(|_| rng.gen_range(1..=*max)).collect(),
        WeightPolicy::Targeted { totals, max_edge } => {
            let feasible: Vec<u64> = totals
                .iter()
                .copied()
                .filter(|&t| t >= len as u64 && t <= len as u64 * max_edge)
                .collect();
            let total = *feasible.choose(rng)?;
            let mut w: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=*max_edge)).collect();
            // circuit edges are positions 0..len
            for x in w.iter_mut().take(len) {
                *x = 1;
            }
            let mut left = total.saturating_sub(len as u64);
            while left > 0 {
                let open: Vec<usize> = (0..len).filter(|&i| w[i] < *max_edge).collect();
                let Some(&i) = open.choose(rng) else { break };
                w[i] += 1;
                left -= 1;
            }
            w
        }
    };
    Some(WeightMap::from_positions(w).expect("positive weights"))
}

fn random_flow(g: &Multigraph, c: &Circuit, attempts: u32, rng: &mut ChaCha8Rng) -> Option<Z2Z2Flow> {
    let basis = cycle_basis(g);
    let off = c.mask().complement();
    for _ in 0..attempts {
        let mut f = Z2Z2Flow::zero(g.edge_count());
        for row in &basis.rows {
            let v = Z2Z2::from_code(rng.gen_range(0..4));
            f.add_on(row, v);
        }
        if off.iter().all(|p| !f.get(p).is_zero()) {
            return Some(f);
        }
    }
    None
}
