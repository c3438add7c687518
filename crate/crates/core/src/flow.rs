//! Z2×Z2 values and flows.
//!
//! Conservation is checked by endpoint parity: for each vertex and each of
//! the two coordinates, the number of incident edge-ends whose value has that
//! bit set must be even. Orientation plays no role for this group, so flows
//! carry none. A flow is stored as two [`EdgeSet`]s, one per coordinate.

use std::fmt;
use std::str::FromStr;

use crate::bits::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{spanning_forest, spanning_forest_preferring, EdgeId, Multigraph};

/// An element of the Klein four-group, written `b1 b2`.
///
/// The derived ordering is `00 < 10 < 01 < 11`, which is the tie-break order
/// used by the searches.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Z2Z2(u8);

impl Z2Z2 {
    pub const ZERO: Z2Z2 = Z2Z2(0);
    pub const A10: Z2Z2 = Z2Z2(1);
    pub const A01: Z2Z2 = Z2Z2(2);
    pub const A11: Z2Z2 = Z2Z2(3);
    pub const ALL: [Z2Z2; 4] = [Z2Z2::ZERO, Z2Z2::A10, Z2Z2::A01, Z2Z2::A11];
    pub const NONZERO: [Z2Z2; 3] = [Z2Z2::A10, Z2Z2::A01, Z2Z2::A11];

    pub const fn new(b1: bool, b2: bool) -> Self {
        Z2Z2(b1 as u8 | (b2 as u8) << 1)
    }

    pub const fn from_code(code: u8) -> Self {
        Z2Z2(code & 3)
    }

    /// `b1 + 2*b2`, in `0..4`.
    pub const fn code(self) -> u8 {
        self.0
    }

    pub const fn b1(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn b2(self) -> bool {
        self.0 & 2 == 2
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for Z2Z2 {
    type Output = Z2Z2;
    fn add(self, rhs: Z2Z2) -> Z2Z2 {
        Z2Z2(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Z2Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.b1() as u8, self.b2() as u8)
    }
}

impl fmt::Debug for Z2Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b1() as u8, self.b2() as u8)
    }
}

impl FromStr for Z2Z2 {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "00" => Ok(Z2Z2::ZERO),
            "10" => Ok(Z2Z2::A10),
            "01" => Ok(Z2Z2::A01),
            "11" => Ok(Z2Z2::A11),
            _ => Err(format!("flow value must be one of 00, 10, 01, 11, got {s:?}")),
        }
    }
}

/// An assignment of Z2×Z2 values to every edge position of a host graph.
///
/// Construction does not check conservation; see [`validate_flow`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z2Z2Flow {
    c1: EdgeSet,
    c2: EdgeSet,
}

impl Z2Z2Flow {
    pub fn zero(edge_count: usize) -> Self {
        Z2Z2Flow {
            c1: EdgeSet::new(edge_count),
            c2: EdgeSet::new(edge_count),
        }
    }

    pub fn from_coordinates(c1: EdgeSet, c2: EdgeSet) -> Self {
        assert_eq!(c1.len(), c2.len(), "coordinate lengths differ");
        Z2Z2Flow { c1, c2 }
    }

    pub fn from_values(values: &[Z2Z2]) -> Self {
        let mut f = Self::zero(values.len());
        for (i, &v) in values.iter().enumerate() {
            f.set(i, v);
        }
        f
    }

    /// Builds a flow from `(edge id, value)` pairs covering every edge of `g`.
    pub fn from_ids(g: &Multigraph, pairs: impl IntoIterator<Item = (EdgeId, Z2Z2)>) -> Result<Self> {
        let mut f = Self::zero(g.edge_count());
        let mut seen = g.empty_set();
        for (id, v) in pairs {
            let pos = g.require_position(id)?;
            seen.insert(pos);
            f.set(pos, v);
        }
        if let Some(missing) = seen.complement().first() {
            return Err(Error::MissingEdgeAssignment(g.id(missing)));
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.c1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c1.len() == 0
    }

    #[inline]
    pub fn get(&self, pos: usize) -> Z2Z2 {
        Z2Z2::new(self.c1.contains(pos), self.c2.contains(pos))
    }

    #[inline]
    pub fn set(&mut self, pos: usize, v: Z2Z2) {
        self.c1.set(pos, v.b1());
        self.c2.set(pos, v.b2());
    }

    pub fn value_of(&self, g: &Multigraph, id: EdgeId) -> Result<Z2Z2> {
        Ok(self.get(g.require_position(id)?))
    }

    pub fn values(&self) -> Vec<Z2Z2> {
        (0..self.len()).map(|p| self.get(p)).collect()
    }

    pub fn coordinate1(&self) -> &EdgeSet {
        &self.c1
    }

    pub fn coordinate2(&self) -> &EdgeSet {
        &self.c2
    }

    /// Adds `a` on every edge of `set`.
    pub fn add_on(&mut self, set: &EdgeSet, a: Z2Z2) {
        if a.b1() {
            self.c1.xor_with(set);
        }
        if a.b2() {
            self.c2.xor_with(set);
        }
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.support().count() == self.len()
    }

    pub fn support(&self) -> EdgeSet {
        self.c1.or(&self.c2)
    }

    /// Positions holding exactly `a`.
    pub fn value_set(&self, a: Z2Z2) -> EdgeSet {
        let x = if a.b1() { self.c1.clone() } else { self.c1.complement() };
        let y = if a.b2() { self.c2.clone() } else { self.c2.complement() };
        x.and(&y)
    }

    /// Lexicographic comparison of value vectors in position order under `00 < 10 < 01 < 11`.
    pub fn lex_cmp(&self, other: &Z2Z2Flow) -> std::cmp::Ordering {
        let diff = self.c1.xor(&other.c1).or(&self.c2.xor(&other.c2));
        match diff.first() {
            None => std::cmp::Ordering::Equal,
            Some(p) => self.get(p).cmp(&other.get(p)),
        }
    }
}

/// A parity violation at one vertex for one coordinate (1 or 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub coordinate: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowCheck {
    pub violations: Vec<Violation>,
}

impl FlowCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn odd_vertices(g: &Multigraph, set: &EdgeSet) -> Vec<usize> {
    let mut parity = vec![false; g.vertex_count()];
    for p in set.iter() {
        let e = g.edge(p);
        if !e.is_loop() {
            parity[e.u] ^= true;
            parity[e.v] ^= true;
        }
    }
    parity
        .iter()
        .enumerate()
        .filter(|(_, &odd)| odd)
        .map(|(v, _)| v)
        .collect()
}

/// True if every vertex has even degree in `set`.
pub fn is_cycle(g: &Multigraph, set: &EdgeSet) -> bool {
    odd_vertices(g, set).is_empty()
}

/// Checks both coordinate parity conditions at every vertex.
pub fn validate_flow(g: &Multigraph, f: &Z2Z2Flow) -> Result<FlowCheck> {
    if f.len() != g.edge_count() {
        return Err(Error::HostMismatch(f.len(), g.edge_count()));
    }
    let mut violations: Vec<Violation> = odd_vertices(g, &f.c1)
        .into_iter()
        .map(|vertex| Violation { vertex, coordinate: 1 })
        .chain(
            odd_vertices(g, &f.c2)
                .into_iter()
                .map(|vertex| Violation { vertex, coordinate: 2 }),
        )
        .collect();
    violations.sort_by_key(|v| (v.vertex, v.coordinate));
    Ok(FlowCheck { violations })
}

pub fn is_valid_flow(g: &Multigraph, f: &Z2Z2Flow) -> bool {
    validate_flow(g, f).map(|c| c.is_valid()).unwrap_or(false)
}

pub fn support(f: &Z2Z2Flow) -> EdgeSet {
    f.support()
}

/// Edges of `h` on which `f` takes value `a`.
pub fn class_edges(f: &Z2Z2Flow, h: &EdgeSet, a: Z2Z2) -> EdgeSet {
    f.value_set(a).and(h)
}

/// The flow that is `a` on the cycle `c` and zero elsewhere.
pub fn circuit_flow(g: &Multigraph, c: &EdgeSet, a: Z2Z2) -> Result<Z2Z2Flow> {
    if let Some(&v) = odd_vertices(g, c).first() {
        return Err(Error::NotACycle(v));
    }
    let mut f = Z2Z2Flow::zero(g.edge_count());
    f.add_on(c, a);
    Ok(f)
}

pub fn add_flows(f1: &Z2Z2Flow, f2: &Z2Z2Flow) -> Result<Z2Z2Flow> {
    if f1.len() != f2.len() {
        return Err(Error::HostMismatch(f1.len(), f2.len()));
    }
    Ok(Z2Z2Flow {
        c1: f1.c1.xor(&f2.c1),
        c2: f1.c2.xor(&f2.c2),
    })
}

/// A permutation of the three nonzero values, extended by fixing `00`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ValuePermutation([Z2Z2; 4]);

impl ValuePermutation {
    pub const IDENTITY: ValuePermutation =
        ValuePermutation([Z2Z2::ZERO, Z2Z2::A10, Z2Z2::A01, Z2Z2::A11]);

    /// Images of `10`, `01`, `11`, which must be the three nonzero values in some order.
    pub fn new(img10: Z2Z2, img01: Z2Z2, img11: Z2Z2) -> Option<Self> {
        let imgs = [img10, img01, img11];
        let mut seen = [false; 4];
        for v in imgs {
            if v.is_zero() || seen[v.code() as usize] {
                return None;
            }
            seen[v.code() as usize] = true;
        }
        Some(ValuePermutation([Z2Z2::ZERO, img10, img01, img11]))
    }

    /// All six permutations.
    pub fn all() -> [ValuePermutation; 6] {
        use Z2Z2 as V;
        [
            Self::new(V::A10, V::A01, V::A11).unwrap(),
            Self::new(V::A10, V::A11, V::A01).unwrap(),
            Self::new(V::A01, V::A10, V::A11).unwrap(),
            Self::new(V::A01, V::A11, V::A10).unwrap(),
            Self::new(V::A11, V::A10, V::A01).unwrap(),
            Self::new(V::A11, V::A01, V::A10).unwrap(),
        ]
    }

    /// The transposition exchanging two nonzero values (identity if equal).
    pub fn swapping(a: Z2Z2, b: Z2Z2) -> Self {
        assert!(!a.is_zero() && !b.is_zero(), "only nonzero values move");
        let mut map = Self::IDENTITY.0;
        map[a.code() as usize] = b;
        map[b.code() as usize] = a;
        ValuePermutation(map)
    }

    /// The permutation sending `x -> x'` and `y -> y'` for distinct nonzero `x, y`
    /// and distinct nonzero `x', y'`.
    pub fn mapping(x: Z2Z2, x_img: Z2Z2, y: Z2Z2, y_img: Z2Z2) -> Option<Self> {
        if x == y || x_img == y_img {
            return None;
        }
        Self::all()
            .into_iter()
            .find(|p| p.apply(x) == x_img && p.apply(y) == y_img)
    }

    #[inline]
    pub fn apply(&self, v: Z2Z2) -> Z2Z2 {
        self.0[v.code() as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [Z2Z2::ZERO; 4];
        for v in Z2Z2::ALL {
            inv[self.apply(v).code() as usize] = v;
        }
        ValuePermutation(inv)
    }
}

pub fn permute_values(f: &Z2Z2Flow, sigma: ValuePermutation) -> Z2Z2Flow {
    let mut out = Z2Z2Flow::zero(f.len());
    for a in Z2Z2::NONZERO {
        out.add_on(&f.value_set(a), sigma.apply(a));
    }
    out
}

/// Fundamental-cycle basis of the GF(2) cycle space.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub rows: Vec<EdgeSet>,
    /// The non-tree edge that generated each row.
    pub generators: Vec<usize>,
}

impl CycleBasis {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// XOR of the rows selected by `mask` (bit `j` selects row `j`).
    pub fn combination(&self, mask: u64, edge_count: usize) -> EdgeSet {
        let mut s = EdgeSet::new(edge_count);
        for (j, row) in self.rows.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s.xor_with(row);
            }
        }
        s
    }
}

pub fn cycle_basis(g: &Multigraph) -> CycleBasis {
    basis_from_forest(g, spanning_forest(g))
}

/// Cycle basis whose spanning forest prefers the given edge positions.
pub fn cycle_basis_preferring(g: &Multigraph, priority: impl IntoIterator<Item = usize>) -> CycleBasis {
    basis_from_forest(g, spanning_forest_preferring(g, priority))
}

fn basis_from_forest(g: &Multigraph, forest: crate::graph::SpanningForest) -> CycleBasis {
    let mut rows = Vec::new();
    let mut generators = Vec::new();
    for pos in 0..g.edge_count() {
        if forest.tree_edges.contains(pos) {
            continue;
        }
        let e = g.edge(pos);
        let mut row = forest.path(e.u, e.v, g.edge_count());
        row.insert(pos);
        rows.push(row);
        generators.push(pos);
    }
    CycleBasis { rows, generators }
}

/// The two cycles `S1 = E(10) ∪ E(11)` and `S2 = E(01) ∪ E(11)` of a nowhere-zero flow.
pub fn two_cycle_cover(g: &Multigraph, f: &Z2Z2Flow) -> Result<(EdgeSet, EdgeSet)> {
    if f.len() != g.edge_count() {
        return Err(Error::HostMismatch(f.len(), g.edge_count()));
    }
    if let Some(p) = f.support().complement().first() {
        return Err(Error::FlowHasZeroEdge(g.id(p)));
    }
    Ok((f.c1.clone(), f.c2.clone()))
}

/// One traversal step of an oriented circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
}

/// Splits an even edge set into edge-disjoint circuits, each given as a
/// closed walk with a consistent direction.
pub fn decompose_into_circuits(g: &Multigraph, cycle: &EdgeSet) -> Result<Vec<Vec<Step>>> {
    if let Some(&v) = odd_vertices(g, cycle).first() {
        return Err(Error::NotACycle(v));
    }
    let mut remaining = cycle.clone();
    let mut out = Vec::new();
    let mut cursor = vec![0usize; g.vertex_count()];

    let next_edge = |remaining: &EdgeSet, v: usize, cursor: &mut Vec<usize>| -> Option<usize> {
        let inc = g.incident(v);
        while cursor[v] < inc.len() {
            let p = inc[cursor[v]];
            if remaining.contains(p) {
                return Some(p);
            }
            cursor[v] += 1;
        }
        None
    };

    while let Some(start_edge) = remaining.first() {
        let base = g.edge(start_edge).u;
        let mut verts = vec![base];
        let mut steps: Vec<Step> = Vec::new();
        let mut on_walk = std::collections::HashMap::from([(base, 0usize)]);
        let mut cur = base;
        while let Some(p) = next_edge(&remaining, cur, &mut cursor) {
            remaining.remove(p);
            let e = g.edge(p);
            if e.is_loop() {
                out.push(vec![Step { edge: p, tail: cur, head: cur }]);
                continue;
            }
            let next = e.other(cur);
            steps.push(Step { edge: p, tail: cur, head: next });
            if let Some(&k) = on_walk.get(&next) {
                let circuit: Vec<Step> = steps.drain(k..).collect();
                for v in verts.drain(k + 1..) {
                    on_walk.remove(&v);
                }
                out.push(circuit);
            } else {
                on_walk.insert(next, verts.len());
                verts.push(next);
            }
            cur = next;
        }
        debug_assert!(steps.is_empty());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::from_triples(3, &[(0, 0, 1), (1, 1, 2), (2, 2, 0)]).unwrap()
    }

    fn k4() -> Multigraph {
        Multigraph::from_triples(
            4,
            &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 1, 3), (5, 2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn value_order_and_parse() {
        assert!(Z2Z2::ZERO < Z2Z2::A10 && Z2Z2::A10 < Z2Z2::A01 && Z2Z2::A01 < Z2Z2::A11);
        for v in Z2Z2::ALL {
            assert_eq!(v.to_string().parse::<Z2Z2>().unwrap(), v);
            assert_eq!(v + v, Z2Z2::ZERO);
        }
        assert_eq!(Z2Z2::A10 + Z2Z2::A01, Z2Z2::A11);
        assert!("02".parse::<Z2Z2>().is_err());
    }

    #[test]
    fn loop_flow_is_valid() {
        let g = Multigraph::from_triples(1, &[(0, 0, 0)]).unwrap();
        let f = Z2Z2Flow::from_values(&[Z2Z2::A10]);
        assert!(validate_flow(&g, &f).unwrap().is_valid());
    }

    #[test]
    fn triangle_all_11_is_valid() {
        let f = Z2Z2Flow::from_values(&[Z2Z2::A11; 3]);
        assert!(validate_flow(&triangle(), &f).unwrap().is_valid());
    }

    #[test]
    fn path_flow_fails_at_endpoints() {
        let g = Multigraph::from_triples(3, &[(0, 0, 1), (1, 1, 2)]).unwrap();
        let f = Z2Z2Flow::from_values(&[Z2Z2::A10, Z2Z2::A10]);
        let check = validate_flow(&g, &f).unwrap();
        assert_eq!(
            check.violations,
            vec![
                Violation { vertex: 0, coordinate: 1 },
                Violation { vertex: 2, coordinate: 1 }
            ]
        );
    }

    #[test]
    fn missing_assignment_is_reported() {
        let g = triangle();
        let err = Z2Z2Flow::from_ids(&g, [(0, Z2Z2::A10), (1, Z2Z2::A10)]).unwrap_err();
        assert!(matches!(err, Error::MissingEdgeAssignment(2)));
    }

    #[test]
    fn support_and_circuit_flow() {
        let g = k4();
        assert!(support(&Z2Z2Flow::zero(6)).is_empty());
        let c = g.set_of_ids([0, 1, 2]).unwrap();
        let fc = circuit_flow(&g, &c, Z2Z2::A11).unwrap();
        assert_eq!(support(&fc), c);
        assert!(support(&circuit_flow(&g, &c, Z2Z2::ZERO).unwrap()).is_empty());
        let path = g.set_of_ids([0, 1]).unwrap();
        assert!(matches!(circuit_flow(&g, &path, Z2Z2::A10), Err(Error::NotACycle(_))));
    }

    #[test]
    fn symmetric_difference_of_circuits_is_a_cycle() {
        let g = k4();
        // triangles 0-1-2 and 0-1-3 share edge 01
        let t1 = g.set_of_ids([0, 1, 2]).unwrap();
        let t2 = g.set_of_ids([0, 3, 4]).unwrap();
        let f = circuit_flow(&g, &t1.xor(&t2), Z2Z2::A10).unwrap();
        assert!(is_valid_flow(&g, &f));
    }

    #[test]
    fn add_is_self_inverse_and_checks_hosts() {
        let g = k4();
        let f = circuit_flow(&g, &g.set_of_ids([0, 1, 2]).unwrap(), Z2Z2::A01).unwrap();
        assert_eq!(add_flows(&f, &f).unwrap(), Z2Z2Flow::zero(6));
        assert_eq!(add_flows(&f, &Z2Z2Flow::zero(6)).unwrap(), f);
        assert!(matches!(
            add_flows(&f, &Z2Z2Flow::zero(3)),
            Err(Error::HostMismatch(6, 3))
        ));
    }

    #[test]
    fn permutations() {
        let g = triangle();
        let f = Z2Z2Flow::from_values(&[Z2Z2::A11; 3]);
        assert_eq!(permute_values(&f, ValuePermutation::IDENTITY), f);
        let s = ValuePermutation::swapping(Z2Z2::A11, Z2Z2::A10);
        let pf = permute_values(&f, s);
        assert_eq!(pf, Z2Z2Flow::from_values(&[Z2Z2::A10; 3]));
        assert!(is_valid_flow(&g, &pf));
        let all = ValuePermutation::all();
        for p in all {
            assert_eq!(p.inverse().inverse(), p);
            for v in Z2Z2::ALL {
                assert_eq!(p.inverse().apply(p.apply(v)), v);
            }
        }
        let m = ValuePermutation::mapping(Z2Z2::A01, Z2Z2::A10, Z2Z2::A10, Z2Z2::A11).unwrap();
        assert_eq!(m.apply(Z2Z2::A01), Z2Z2::A10);
        assert_eq!(m.apply(Z2Z2::A10), Z2Z2::A11);
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(cycle_basis(&k4()).dimension(), 3);
        let tree = Multigraph::from_triples(3, &[(0, 0, 1), (1, 1, 2)]).unwrap();
        assert_eq!(cycle_basis(&tree).dimension(), 0);
        let lp = Multigraph::from_triples(1, &[(0, 0, 0)]).unwrap();
        let b = cycle_basis(&lp);
        assert_eq!(b.dimension(), 1);
        assert_eq!(b.rows[0].iter().collect::<Vec<_>>(), vec![0]);
        for row in cycle_basis(&k4()).rows {
            assert!(is_cycle(&k4(), &row));
        }
    }

    #[test]
    fn cover_of_circuit_flows() {
        let g = triangle();
        let f = Z2Z2Flow::from_values(&[Z2Z2::A11; 3]);
        let (s1, s2) = two_cycle_cover(&g, &f).unwrap();
        assert_eq!(s1.count() + s2.count(), 6);
        let f = Z2Z2Flow::from_values(&[Z2Z2::A10; 3]);
        let (s1, s2) = two_cycle_cover(&g, &f).unwrap();
        assert_eq!((s1.count(), s2.count()), (3, 0));
        let z = Z2Z2Flow::zero(3);
        assert!(matches!(two_cycle_cover(&g, &z), Err(Error::FlowHasZeroEdge(0))));
    }

    #[test]
    fn decomposition_of_figure_eight_with_loop() {
        let g = Multigraph::from_triples(
            5,
            &[
                (0, 0, 1),
                (1, 1, 2),
                (2, 2, 0),
                (3, 0, 3),
                (4, 3, 4),
                (5, 4, 0),
                (6, 2, 2),
            ],
        )
        .unwrap();
        let all = EdgeSet::full(7);
        let circuits = decompose_into_circuits(&g, &all).unwrap();
        let total: usize = circuits.iter().map(|c| c.len()).sum();
        assert_eq!(total, 7);
        assert_eq!(circuits.len(), 3);
        for c in &circuits {
            for w in 0..c.len() {
                assert_eq!(c[w].head, c[(w + 1) % c.len()].tail);
            }
            let pos: Vec<usize> = c.iter().map(|s| s.edge).collect();
            assert!(crate::graph::Circuit::from_positions(&g, &pos).is_ok());
        }
    }
}
