//! Test-side helpers: an exhaustive small-graph enumerator and independent
//! checks that do not go through the library's own validators.

#![allow(dead_code)]

use std::collections::HashSet;

use flowforge::{cycle_basis, Circuit, EdgeSet, Multigraph, Z2Z2Flow, Z2Z2};

/// A circuit `0 -> 1 -> ... -> len-1 -> 0` on the first `len` edges plus
/// off-circuit edges, as vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub vertices: usize,
    pub len: usize,
    pub off: Vec<(usize, usize)>,
}

impl Shape {
    pub fn edge_count(&self) -> usize {
        self.len + self.off.len()
    }

    pub fn dimension(&self) -> usize {
        self.edge_count() + 1 - self.vertices
    }

    pub fn graph(&self) -> Multigraph {
        let mut triples: Vec<(u64, usize, usize)> =
            (0..self.len).map(|i| (i as u64, i, (i + 1) % self.len)).collect();
        for &(u, v) in &self.off {
            triples.push((triples.len() as u64, u, v));
        }
        Multigraph::from_triples(self.vertices, &triples).expect("shape graph")
    }

    pub fn circuit(&self, g: &Multigraph) -> Circuit {
        Circuit::from_edge_ids(g, &(0..self.len as u64).collect::<Vec<_>>()).expect("shape circuit")
    }

    /// Smallest relabelling under circuit rotations and reflections and
    /// permutations of the off-circuit vertices.
    fn canonical(&self) -> Vec<(usize, usize)> {
        let l = self.len;
        let extra: Vec<usize> = (l..self.vertices).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perms = Vec::new();
        permutations(&extra, &mut Vec::new(), &mut vec![false; extra.len()], &mut perms);
        for reflect in [false, true] {
            for rot in 0..l {
                let on = |v: usize| if reflect { (rot + l - v) % l } else { (v + rot) % l };
                for p in &perms {
                    let map = |v: usize| if v < l { on(v) } else { p[v - l] };
                    let mut key: Vec<(usize, usize)> = self
                        .off
                        .iter()
                        .map(|&(u, v)| {
                            let (a, b) = (map(u), map(v));
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    key.sort_unstable();
                    if best.as_ref().map_or(true, |b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn permutations(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permutations(items, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Every loopless 2-edge-connected multigraph with at most `max_edges` edges
/// and cycle-space dimension at most `max_dim`, paired with each of its
/// circuits of length at least 2, up to isomorphism fixing the circuit.
///
/// Built by ear decomposition from the circuit: such a graph has one starting
/// from any of its circuits, and every ear adds exactly one dimension.
pub fn ear_shapes(max_edges: usize, max_dim: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for len in 2..=max_edges {
        let base = Shape {
            vertices: len,
            len,
            off: Vec::new(),
        };
        let mut seen: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::new();
        seen.insert((base.vertices, base.canonical()));
        let mut level = vec![base];
        while let Some(first) = level.first() {
            if first.dimension() > max_dim {
                break;
            }
            out.extend(level.iter().cloned());
            if first.dimension() == max_dim {
                break;
            }
            let mut next = Vec::new();
            for s in &level {
                for ear in ears(s, max_edges) {
                    if seen.insert((ear.vertices, ear.canonical())) {
                        next.push(ear);
                    }
                }
            }
            level = next;
        }
    }
    out
}

fn ears(s: &Shape, max_edges: usize) -> Vec<Shape> {
    let room = max_edges - s.edge_count();
    let mut out = Vec::new();
    for u in 0..s.vertices {
        for v in u..s.vertices {
            let min_len = if u == v { 2 } else { 1 };
            for k in min_len..=room {
                let mut t = s.clone();
                let mut prev = u;
                for _ in 0..k - 1 {
                    t.off.push((prev, t.vertices));
                    prev = t.vertices;
                    t.vertices += 1;
                }
                t.off.push((prev, v));
                out.push(t);
            }
        }
    }
    out
}

/// Every Z2×Z2-flow of `g`: all `4^d` combinations of a cycle basis.
pub fn all_flows(g: &Multigraph) -> Vec<Z2Z2Flow> {
    let basis = cycle_basis(g);
    let d = basis.dimension();
    let mut out = Vec::with_capacity(1 << (2 * d));
    for code in 0u64..(1 << (2 * d)) {
        let mut f = Z2Z2Flow::zero(g.edge_count());
        for (k, row) in basis.rows.iter().enumerate() {
            f.add_on(row, Z2Z2::from_code(((code >> (2 * k)) & 3) as u8));
        }
        out.push(f);
    }
    out
}

/// Parity conservation counted directly from the edge list.
pub fn conserves(g: &Multigraph, f: &Z2Z2Flow) -> bool {
    let mut parity = vec![0u8; g.vertex_count()];
    for (pos, e) in g.edges().iter().enumerate() {
        let c = f.get(pos).code();
        parity[e.u] ^= c;
        parity[e.v] ^= c;
    }
    parity.iter().all(|&p| p == 0)
}

/// Every vertex has even degree in `set`, loops counted twice.
pub fn is_even_subgraph(g: &Multigraph, set: &EdgeSet) -> bool {
    let mut deg = vec![0usize; g.vertex_count()];
    for pos in set.iter() {
        let e = g.edge(pos);
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg.iter().all(|d| d % 2 == 0)
}

/// Weight of each value class on the circuit, summed edge by edge.
pub fn class_weights(c: &Circuit, w: &[u64], f: &Z2Z2Flow) -> [u64; 4] {
    let mut out = [0; 4];
    for &p in c.edge_positions() {
        out[f.get(p).code() as usize] += w[p];
    }
    out
}
