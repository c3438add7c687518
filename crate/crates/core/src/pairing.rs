//! Pairing subgraphs `P_{a,b}` and the anchor indices read off a segment frame.
//!
//! `P_{a,b}` is the subgraph spanned by the off-circuit edges valued `a` or
//! `b`. For a flow that is nonzero off the circuit, its odd-degree vertices
//! all lie on the circuit, and within a component they are paired up.

use crate::bits::EdgeSet;
use crate::error::{Error, Result};
use crate::flow::{permute_values, ValuePermutation, Z2Z2Flow, Z2Z2};
use crate::graph::{components_with_odd_vertices, Circuit, Direction, Segment, WeightMap};
use crate::search::Quadruple;

/// Default cap on simple paths enumerated when resolving `t''`.
pub const PATH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedComponent {
    pub vertices: Vec<usize>,
    /// Odd-degree vertices, in circuit order. Odd vertices off the circuit
    /// (possible only if the flow vanishes off the circuit) come last.
    pub odd_vertices: Vec<usize>,
    pub edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub a: Z2Z2,
    pub b: Z2Z2,
    pub components: Vec<PairedComponent>,
}

impl PairingReport {
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.binary_search(&v).is_ok())
    }

    /// The other odd vertices in `v`'s component.
    pub fn partners(&self, v: usize) -> Result<Vec<usize>> {
        let comp = self
            .components
            .iter()
            .find(|c| c.odd_vertices.contains(&v))
            .ok_or(Error::AnchorNotOdd { vertex: v })?;
        Ok(comp.odd_vertices.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn is_odd(&self, v: usize) -> bool {
        self.components.iter().any(|c| c.odd_vertices.contains(&v))
    }
}

/// Builds `P_{a,b}` for `g` and reports each component's odd vertices.
pub fn pairing(q: &Quadruple, g: &Z2Z2Flow, a: Z2Z2, b: Z2Z2) -> PairingReport {
    let graph = q.graph();
    let c = q.circuit();
    let mut subset = g.value_set(a);
    if b != a {
        subset.or_with(&g.value_set(b));
    }
    subset.difference_with(c.mask());
    let components = components_with_odd_vertices(graph, &subset)
        .into_iter()
        .map(|comp| {
            let mut odd = comp.odd_vertices;
            odd.sort_by_key(|&v| c.index_of_vertex(v).unwrap_or(usize::MAX));
            PairedComponent {
                vertices: comp.vertices,
                odd_vertices: odd,
                edges: comp.edges,
            }
        })
        .collect();
    PairingReport { a, b, components }
}

/// The vertex labelling `v_i` of a circuit seen from a segment.
///
/// Frame edge `i` joins `v_i` and `v_{i+1}`; the segment occupies frame
/// edges `1..=len` and frame edge 0 precedes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frame {
    pub segment: Segment,
    pub direction: Direction,
    n: usize,
    origin: usize,
}

impl Frame {
    pub fn new(c: &Circuit, segment: Segment, direction: Direction) -> Self {
        let n = c.len();
        let origin = match direction {
            Direction::Forward => (segment.start + n - 1) % n,
            Direction::Backward => (segment.start + segment.len + 1) % n,
        };
        Frame {
            segment,
            direction,
            n,
            origin,
        }
    }

    pub fn circuit_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.segment.len
    }

    pub fn is_empty(&self) -> bool {
        self.segment.len == 0
    }

    fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.n as isize) as usize
    }

    /// Circuit edge index of frame edge `i`.
    pub fn edge_index(&self, i: isize) -> usize {
        match self.direction {
            Direction::Forward => self.wrap(self.origin as isize + i),
            Direction::Backward => self.wrap(self.origin as isize - i - 1),
        }
    }

    /// Circuit vertex index of `v_i`.
    pub fn vertex_index(&self, i: isize) -> usize {
        match self.direction {
            Direction::Forward => self.wrap(self.origin as isize + i),
            Direction::Backward => self.wrap(self.origin as isize - i),
        }
    }

    /// Graph position of frame edge `i`.
    pub fn edge(&self, c: &Circuit, i: isize) -> usize {
        c.edge_at(self.edge_index(i) as isize)
    }

    /// Vertex `v_i`.
    pub fn vertex(&self, c: &Circuit, i: isize) -> usize {
        c.vertex_at(self.vertex_index(i) as isize)
    }

    /// Frame index in `0..n` of a circuit vertex.
    pub fn index_of(&self, c: &Circuit, v: usize) -> Option<usize> {
        let k = c.index_of_vertex(v)? as isize;
        Some(match self.direction {
            Direction::Forward => self.wrap(k - self.origin as isize),
            Direction::Backward => self.wrap(self.origin as isize - k),
        })
    }

    /// Weights of frame edges `0..n`.
    pub fn weights(&self, c: &Circuit, w: &WeightMap) -> Vec<u64> {
        (0..self.n as isize).map(|i| w.at(self.edge(c, i))).collect()
    }

    pub fn values(&self, c: &Circuit, g: &Z2Z2Flow) -> Vec<Z2Z2> {
        (0..self.n as isize).map(|i| g.get(self.edge(c, i))).collect()
    }

    /// Graph positions of frame edges `from..to`.
    pub fn edges_between(&self, c: &Circuit, from: usize, to: usize, edge_count: usize) -> EdgeSet {
        EdgeSet::from_positions(edge_count, (from..to).map(|i| self.edge(c, i as isize)))
    }

    /// The permutation taking `g(v0v1)` to `10` and `g(v_{-1}v0)` to `11`,
    /// or `None` when those values are zero or equal.
    pub fn normalizer(&self, c: &Circuit, g: &Z2Z2Flow) -> Option<ValuePermutation> {
        let x = g.get(self.edge(c, 0));
        let y = g.get(self.edge(c, -1));
        ValuePermutation::mapping(x, Z2Z2::A10, y, Z2Z2::A11)
    }
}

/// `t''` for one choice of path `P1` realising `t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondAnchor {
    pub t_prime: usize,
    /// Graph positions of `P1`.
    pub path: Vec<usize>,
    pub partners: Vec<usize>,
}

/// Anchor indices of a normalised frame, as frame vertex indices.
///
/// Every partner is kept; the caller decides which of them a statement
/// constrains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchors {
    /// Partners of `v0` in `P_{a,a+b}`.
    pub t: Vec<usize>,
    /// Partners of `v_{|S|+1}` in `P_{c,c+d}`; `None` when `c`, `d` are not
    /// distinct nonzero values.
    pub t_bar: Option<Vec<usize>>,
    /// Partners of `v1` in `P_{a,b}`.
    pub t_prime: Vec<usize>,
    pub t_double_prime: Vec<SecondAnchor>,
    /// Path enumeration stopped at the cap for some `t'`.
    pub truncated: bool,
}

/// Applies the frame's normaliser to `g`.
pub fn normalize(c: &Circuit, frame: &Frame, g: &Z2Z2Flow) -> Option<(ValuePermutation, Z2Z2Flow)> {
    let sigma = frame.normalizer(c, g)?;
    Some((sigma, permute_values(g, sigma)))
}

fn frame_partners(
    report: &PairingReport,
    c: &Circuit,
    frame: &Frame,
    v: usize,
) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = report
        .partners(v)?
        .into_iter()
        .filter_map(|u| frame.index_of(c, u))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Resolves `t`, `t̄`, `t'` and `t''` for a frame of `g`, which must already
/// be normalised (`g(v0v1) = 10`, `g(v_{-1}v0) = 11`).
pub fn anchors(q: &Quadruple, g: &Z2Z2Flow, frame: &Frame, path_cap: usize) -> Result<Anchors> {
    let c = q.circuit();
    let (a, b) = (Z2Z2::A10, Z2Z2::A11);
    debug_assert_eq!(g.get(frame.edge(c, 0)), a);
    debug_assert_eq!(g.get(frame.edge(c, -1)), b);
    let len = frame.len() as isize;
    let n = frame.circuit_len();

    let p_a_ab = pairing(q, g, a, a + b);
    let t = frame_partners(&p_a_ab, c, frame, frame.vertex(c, 0))?;

    let cv = g.get(frame.edge(c, len + 1));
    let dv = g.get(frame.edge(c, len + 2));
    let t_bar = if cv.is_zero() || dv.is_zero() || cv == dv {
        None
    } else {
        let p = pairing(q, g, cv, cv + dv);
        Some(frame_partners(&p, c, frame, frame.vertex(c, len + 1))?)
    };

    let p_ab = pairing(q, g, a, b);
    let v1 = frame.vertex(c, 1);
    let t_prime = frame_partners(&p_ab, c, frame, v1)?;

    let mut t_double_prime = Vec::new();
    let mut truncated = false;
    let edge_count = q.graph().edge_count();
    for &tp in t_prime.iter().filter(|&&tp| tp > frame.len()) {
        let target = frame.vertex(c, tp as isize);
        let comp = p_ab.component_of(v1).expect("v1 is odd");
        let (paths, cut) = simple_paths(q, &p_ab.components[comp].edges, v1, target, path_cap);
        truncated |= cut;
        for path in paths {
            // C1 = P1 + arc v_{t'} .. v_n = v_0 + v0v1
            let mut cycle = EdgeSet::from_positions(edge_count, path.iter().copied());
            cycle.or_with(&frame.edges_between(c, tp, n, edge_count));
            cycle.insert(frame.edge(c, 0));
            let mut g2 = g.clone();
            g2.add_on(&cycle, a + b);
            let report = pairing(q, &g2, b, a + b);
            let partners = frame_partners(&report, c, frame, frame.vertex(c, 0))?;
            t_double_prime.push(SecondAnchor {
                t_prime: tp,
                path,
                partners,
            });
        }
    }

    Ok(Anchors {
        t,
        t_bar,
        t_prime,
        t_double_prime,
        truncated,
    })
}

/// Simple paths from `from` to `to` inside `edges`, at most `cap` of them.
/// The flag reports whether the cap cut enumeration short.
fn simple_paths(q: &Quadruple, edges: &EdgeSet, from: usize, to: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let graph = q.graph();
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.vertex_count()];
    let mut stack: Vec<usize> = Vec::new();
    let mut truncated = false;

    #[allow(clippy::too_many_arguments)]
    fn walk(
        graph: &crate::graph::Multigraph,
        edges: &EdgeSet,
        v: usize,
        to: usize,
        cap: usize,
        on_path: &mut [bool],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        truncated: &mut bool,
    ) {
        if v == to {
            if out.len() == cap {
                *truncated = true;
            } else {
                out.push(stack.clone());
            }
            return;
        }
        on_path[v] = true;
        for &pos in graph.incident(v) {
            if *truncated {
                break;
            }
            let e = graph.edge(pos);
            if !edges.contains(pos) || e.is_loop() {
                continue;
            }
            let w = e.other(v);
            if on_path[w] {
                continue;
            }
            stack.push(pos);
            walk(graph, edges, w, to, cap, on_path, stack, out, truncated);
            stack.pop();
        }
        on_path[v] = false;
    }

    walk(graph, edges, from, to, cap, &mut on_path, &mut stack, &mut out, &mut truncated);
    (out, truncated)
}
