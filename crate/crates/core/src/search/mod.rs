//! Exact minimization of the zero-class weight on a circuit.
//!
//! For a quadruple `(G, f, C, w)` the class `R_C(f)` is every flow of `G`
//! that is nonzero on all edges off `C`. Because `f` itself is nonzero there,
//! this set does not depend on `f`: it is the whole flow space `Z × Z` (one
//! copy of the cycle space per coordinate) filtered by the off-circuit
//! condition.

pub(crate) mod engine;

use std::fmt;

use crate::bits::EdgeSet;
use crate::error::{Error, Result};
use crate::flow::{
    cycle_basis, permute_values, validate_flow, CycleBasis, ValuePermutation, Z2Z2Flow, Z2Z2,
};
use crate::graph::{Circuit, Multigraph, WeightMap};

use engine::{Goal, Plan, Problem};

/// Default cap on oracle enumeration steps: `4^12`.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Largest circuit weight covered by the theorem.
pub const THEOREM_MAX_WEIGHT: u64 = 35;

/// A graph, a flow nonzero off a circuit, the circuit, and positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    graph: Multigraph,
    flow: Z2Z2Flow,
    circuit: Circuit,
    weights: WeightMap,
}

impl Quadruple {
    pub fn new(graph: Multigraph, flow: Z2Z2Flow, circuit: Circuit, weights: WeightMap) -> Result<Self> {
        let m = graph.edge_count();
        if flow.len() != m {
            return Err(Error::HostMismatch(flow.len(), m));
        }
        if weights.len() != m {
            return Err(Error::InvalidQuadruple(format!(
                "{} weights for {m} edges",
                weights.len()
            )));
        }
        if circuit.mask().len() != m {
            return Err(Error::InvalidQuadruple("circuit belongs to another graph".into()));
        }
        if let Some(v) = validate_flow(&graph, &flow)?.violations.first() {
            return Err(Error::NotAFlow(v.vertex));
        }
        let off = circuit.mask().complement();
        if let Some(p) = off.difference(&flow.support()).first() {
            return Err(Error::InvalidQuadruple(format!(
                "flow is zero on edge {} off the circuit",
                graph.id(p)
            )));
        }
        Ok(Quadruple {
            graph,
            flow,
            circuit,
            weights,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn flow(&self) -> &Z2Z2Flow {
        &self.flow
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn weights(&self) -> &WeightMap {
        &self.weights
    }

    pub fn into_parts(self) -> (Multigraph, Z2Z2Flow, Circuit, WeightMap) {
        (self.graph, self.flow, self.circuit, self.weights)
    }

    /// The same quadruple with `g` in place of the flow; `g` must be a class member.
    pub fn with_flow(&self, g: Z2Z2Flow) -> Result<Quadruple> {
        Quadruple::new(self.graph.clone(), g, self.circuit.clone(), self.weights.clone())
    }

    pub fn circuit_weight(&self) -> u64 {
        self.circuit.weight(&self.weights)
    }

    pub fn off_circuit(&self) -> EdgeSet {
        self.circuit.mask().complement()
    }

    pub fn cycle_space_dimension(&self) -> usize {
        self.graph.cycle_space_dimension()
    }

    /// `w(E_{g=a}(C))`.
    pub fn class_weight(&self, g: &Z2Z2Flow, a: Z2Z2) -> u64 {
        class_weights(g, &self.circuit, &self.weights)[a.code() as usize]
    }

    /// `w(E_{g=00}(C))`.
    pub fn zero_weight(&self, g: &Z2Z2Flow) -> u64 {
        self.class_weight(g, Z2Z2::ZERO)
    }

    /// True iff `g` is a valid flow of this graph that is nonzero off the circuit.
    pub fn is_member(&self, g: &Z2Z2Flow) -> bool {
        g.len() == self.graph.edge_count()
            && validate_flow(&self.graph, g).map_or(false, |c| c.is_valid())
            && self.off_circuit().is_subset(&g.support())
    }
}

/// Circuit weight of each value class, indexed by value code.
pub fn class_weights(g: &Z2Z2Flow, c: &Circuit, w: &WeightMap) -> [u64; 4] {
    let mut out = [0; 4];
    for &p in c.edge_positions() {
        out[g.get(p).code() as usize] += w.at(p);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    BranchAndBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::BranchAndBound => "bnb",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub method: Method,
    /// Oracle enumeration cap; the branch-and-bound ignores it.
    pub budget: u128,
    /// Worker threads for the branch-and-bound; `0` or `1` searches serially.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            method: Method::BranchAndBound,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

impl SearchOptions {
    pub fn oracle() -> Self {
        SearchOptions {
            method: Method::Oracle,
            ..Self::default()
        }
    }

    pub fn branch_and_bound() -> Self {
        Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub minimum_zero_weight: u64,
    /// The lexicographically smallest optimal class member.
    pub witness: Z2Z2Flow,
    pub explored: u64,
    pub method: Method,
    pub circuit_weight: u64,
    /// `4 * minimum < w(C)`.
    pub theorem_holds: bool,
}

/// Walks the flow space in Gray-code order over `2d` generators.
struct FlowSpaceWalk {
    basis: CycleBasis,
    g: Z2Z2Flow,
    step: u128,
    total: u128,
}

impl FlowSpaceWalk {
    fn new(g0: Z2Z2Flow, basis: CycleBasis) -> Self {
        let total = 1u128 << (2 * basis.dimension());
        FlowSpaceWalk {
            basis,
            g: g0,
            step: 0,
            total,
        }
    }

    fn next_flow(&mut self) -> Option<&Z2Z2Flow> {
        if self.step == self.total {
            return None;
        }
        if self.step > 0 {
            let bit = self.step.trailing_zeros() as usize;
            let value = if bit % 2 == 0 { Z2Z2::A10 } else { Z2Z2::A01 };
            self.g.add_on(&self.basis.rows[bit / 2], value);
        }
        self.step += 1;
        Some(&self.g)
    }
}

fn oracle_steps(dimension: usize) -> u128 {
    4u128.checked_pow(dimension as u32).unwrap_or(u128::MAX)
}

fn check_budget(dimension: usize, budget: u128) -> Result<()> {
    let required = oracle_steps(dimension);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Every member of `R_C(f)`, each exactly once, by brute force over the flow space.
pub struct ClassMembers {
    walk: FlowSpaceWalk,
    off: EdgeSet,
}

impl Iterator for ClassMembers {
    type Item = Z2Z2Flow;

    fn next(&mut self) -> Option<Z2Z2Flow> {
        let off = &self.off;
        loop {
            let g = self.walk.next_flow()?;
            if off.is_subset(&g.support()) {
                return Some(g.clone());
            }
        }
    }
}

pub fn enumerate_class_oracle(q: &Quadruple, budget: u128) -> Result<ClassMembers> {
    let basis = cycle_basis(q.graph());
    check_budget(basis.dimension(), budget)?;
    Ok(ClassMembers {
        walk: FlowSpaceWalk::new(q.flow().clone(), basis),
        off: q.off_circuit(),
    })
}

/// Calls `visit` on every class member without cloning; stops early if it returns false.
pub fn for_each_class_member(
    q: &Quadruple,
    budget: u128,
    mut visit: impl FnMut(&Z2Z2Flow) -> bool,
) -> Result<u64> {
    let basis = cycle_basis(q.graph());
    check_budget(basis.dimension(), budget)?;
    let off = q.off_circuit();
    let mut walk = FlowSpaceWalk::new(q.flow().clone(), basis);
    let mut steps = 0;
    while let Some(g) = walk.next_flow() {
        steps += 1;
        if off.is_subset(&g.support()) && !visit(g) {
            break;
        }
    }
    Ok(steps)
}

fn minimize_oracle(q: &Quadruple, budget: u128) -> Result<SearchResult> {
    let mut best: Option<(u64, Z2Z2Flow)> = None;
    let explored = for_each_class_member(q, budget, |g| {
        let z = q.zero_weight(g);
        let better = match &best {
            None => true,
            Some((b, bg)) => z < *b || (z == *b && g.lex_cmp(bg).is_lt()),
        };
        if better {
            best = Some((z, g.clone()));
        }
        true
    })?;
    let (minimum, witness) = best.expect("the quadruple's own flow is a member");
    Ok(result(q, minimum, witness, explored, Method::Oracle))
}

fn result(q: &Quadruple, minimum: u64, witness: Z2Z2Flow, explored: u64, method: Method) -> SearchResult {
    let circuit_weight = q.circuit_weight();
    SearchResult {
        minimum_zero_weight: minimum,
        witness,
        explored,
        method,
        circuit_weight,
        theorem_holds: 4 * minimum < circuit_weight,
    }
}

/// Allowed-value masks for class membership: nonzero off the circuit.
fn membership_mask(q: &Quadruple) -> Vec<u8> {
    (0..q.graph().edge_count())
        .map(|p| if q.circuit().mask().contains(p) { 0b1111 } else { 0b1110 })
        .collect()
}

fn minimize_bnb(q: &Quadruple, jobs: usize) -> Result<SearchResult> {
    let m = q.graph().edge_count();
    let basis = cycle_basis(q.graph());
    let mut cost = vec![0u64; m];
    for &p in q.circuit().edge_positions() {
        cost[p] = q.weights().at(p);
    }
    let problem = Problem {
        base: q.flow().clone(),
        rows: basis.rows,
        allowed: membership_mask(q),
        target: Z2Z2::ZERO,
        cost,
    };

    // the pigeonhole shift is a member, so its value is an incumbent
    let seed = *class_weights(q.flow(), q.circuit(), q.weights()).iter().min().unwrap();
    let mut explored = 0;
    let minimum = if seed == 0 {
        0
    } else {
        // circuit edges first, heaviest first: the objective is fixed early
        let mut order: Vec<usize> = q.circuit().edge_positions().to_vec();
        order.sort_by_key(|&p| (std::cmp::Reverse(q.weights().at(p)), p));
        order.extend(q.off_circuit().iter());
        let plan = Plan::new(&problem.rows, &order, m);
        let out = engine::run(&problem, &plan, Goal::Minimize, seed - 1, jobs);
        explored += out.nodes;
        out.best.map_or(seed, |(v, _)| v)
    };

    let plan = Plan::new(&problem.rows, &(0..m).collect::<Vec<_>>(), m);
    let out = engine::run(&problem, &plan, Goal::FirstLeaf, minimum, jobs);
    explored += out.nodes;
    let (value, witness) = out.best.expect("an optimal member exists");
    debug_assert_eq!(value, minimum);
    Ok(result(q, minimum, witness, explored, Method::BranchAndBound))
}

/// A nowhere-zero flow of `g` with as few `11` edges as possible (so its
/// two-cycle cover is shortest), lexicographically smallest among those.
/// `None` when `g` has a bridge.
pub fn nowhere_zero_flow(g: &Multigraph, jobs: usize) -> Option<Z2Z2Flow> {
    let m = g.edge_count();
    let problem = Problem {
        base: Z2Z2Flow::zero(m),
        rows: cycle_basis(g).rows,
        allowed: vec![0b1110; m],
        target: Z2Z2::A11,
        cost: vec![1; m],
    };
    let plan = Plan::new(&problem.rows, &(0..m).collect::<Vec<_>>(), m);
    let first = engine::run(&problem, &plan, Goal::FirstLeaf, m as u64, jobs).best?;
    let minimum = if first.0 == 0 {
        0
    } else {
        engine::run(&problem, &plan, Goal::Minimize, first.0 - 1, jobs)
            .best
            .map_or(first.0, |(v, _)| v)
    };
    engine::run(&problem, &plan, Goal::FirstLeaf, minimum, jobs)
        .best
        .map(|(_, f)| f)
}

/// Exact `min w(E_{g=00}(C))` over the class, with the lexicographically
/// smallest optimal member as witness.
pub fn minimize_zero_weight(q: &Quadruple, opts: &SearchOptions) -> Result<SearchResult> {
    match opts.method {
        Method::Oracle => minimize_oracle(q, opts.budget),
        Method::BranchAndBound => minimize_bnb(q, opts.jobs),
    }
}

/// Moves the lightest value class on `c` to `00`.
///
/// Ties prefer `00`, then the value order. A nonzero minimizer `a` is swapped
/// with `11` and `f_C` is added, which sends the `11` class to `00`.
pub fn pigeonhole_shift(g: &Z2Z2Flow, c: &Circuit, w: &WeightMap) -> Z2Z2Flow {
    let weights = class_weights(g, c, w);
    let a = Z2Z2::ALL
        .into_iter()
        .min_by_key(|a| (weights[a.code() as usize], *a))
        .unwrap();
    if a.is_zero() {
        return g.clone();
    }
    let mut out = permute_values(g, ValuePermutation::swapping(a, Z2Z2::A11));
    out.add_on(c.mask(), Z2Z2::A11);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Circuit weight at most 35; a counterexample is a bug signal.
    Theorem,
    /// Any circuit weight.
    Hunt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// `w(C)` is not a multiple of 4, so the lightest class is below a quarter.
    Pigeonhole,
    Search(SearchResult),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremVerdict {
    Holds {
        witness: Z2Z2Flow,
        zero_weight: u64,
        circuit_weight: u64,
        evidence: Evidence,
    },
    Counterexample {
        quadruple: Box<Quadruple>,
        result: SearchResult,
    },
}

impl TheoremVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, TheoremVerdict::Holds { .. })
    }

    /// Zero weight of the reported flow: the exact minimum unless the
    /// pigeonhole shortcut was taken.
    pub fn zero_weight(&self) -> u64 {
        match self {
            TheoremVerdict::Holds { zero_weight, .. } => *zero_weight,
            TheoremVerdict::Counterexample { result, .. } => result.minimum_zero_weight,
        }
    }

    pub fn witness(&self) -> &Z2Z2Flow {
        match self {
            TheoremVerdict::Holds { witness, .. } => witness,
            TheoremVerdict::Counterexample { result, .. } => &result.witness,
        }
    }
}

/// Decides whether some class member has zero weight below a quarter of `w(C)`.
pub fn verify_theorem(q: &Quadruple, regime: Regime, opts: &SearchOptions) -> Result<TheoremVerdict> {
    let circuit_weight = q.circuit_weight();
    if regime == Regime::Theorem && circuit_weight > THEOREM_MAX_WEIGHT {
        return Err(Error::OutsideTheoremRange(circuit_weight));
    }
    if circuit_weight % 4 != 0 {
        let witness = pigeonhole_shift(q.flow(), q.circuit(), q.weights());
        let zero_weight = q.zero_weight(&witness);
        debug_assert!(4 * zero_weight < circuit_weight);
        return Ok(TheoremVerdict::Holds {
            witness,
            zero_weight,
            circuit_weight,
            evidence: Evidence::Pigeonhole,
        });
    }
    let result = minimize_zero_weight(q, opts)?;
    Ok(if result.theorem_holds {
        TheoremVerdict::Holds {
            witness: result.witness.clone(),
            zero_weight: result.minimum_zero_weight,
            circuit_weight,
            evidence: Evidence::Search(result),
        }
    } else {
        TheoremVerdict::Counterexample {
            quadruple: Box::new(q.clone()),
            result,
        }
    })
}
