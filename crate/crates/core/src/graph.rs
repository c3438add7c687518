//! Multigraphs with loops and parallel edges, circuits on them, and the
//! forest/component machinery the rest of the crate is built on.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::bits::EdgeSet;
use crate::error::{Error, Result};

pub type EdgeId = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `x`; for a loop this is `x` itself.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// Undirected multigraph on vertices `0..vertex_count`.
///
/// Edges are stored sorted by id; an edge's index in that order is its
/// *position*, which is what [`EdgeSet`] and flows are indexed by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    index: HashMap<EdgeId, usize>,
    incidence: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by_key(|e| e.id);
        let mut index = HashMap::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); vertex_count];
        for (pos, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} joins {}-{} but there are only {} vertices",
                    e.id, e.u, e.v, vertex_count
                )));
            }
            if index.insert(e.id, pos).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id {}", e.id)));
            }
            incidence[e.u].push(pos);
            incidence[e.v].push(pos);
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            index,
            incidence,
        })
    }

    /// Convenience constructor from `(id, u, v)` triples.
    pub fn from_triples(vertex_count: usize, triples: &[(EdgeId, usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            triples.iter().map(|&(id, u, v)| Edge { id, u, v }),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, pos: usize) -> &Edge {
        &self.edges[pos]
    }

    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn require_position(&self, id: EdgeId) -> Result<usize> {
        self.position(id).ok_or(Error::UnknownEdge(id))
    }

    pub fn id(&self, pos: usize) -> EdgeId {
        self.edges[pos].id
    }

    /// Edge positions incident to `v`; a loop appears twice.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::new(self.edges.len())
    }

    pub fn set_of_ids(&self, ids: impl IntoIterator<Item = EdgeId>) -> Result<EdgeSet> {
        let mut s = self.empty_set();
        for id in ids {
            s.insert(self.require_position(id)?);
        }
        Ok(s)
    }

    pub fn ids_of(&self, set: &EdgeSet) -> Vec<EdgeId> {
        set.iter().map(|p| self.id(p)).collect()
    }

    /// Degree of `v` in the subgraph spanned by `set` (loops count twice).
    pub fn degree_in(&self, v: usize, set: &EdgeSet) -> usize {
        self.incidence[v].iter().filter(|&&p| set.contains(p)).count()
    }

    /// Cycle-space dimension `|E| - |V| + c`.
    pub fn cycle_space_dimension(&self) -> usize {
        let forest = spanning_forest(self);
        self.edge_count() + forest.component_count - self.vertex_count
    }
}

/// A maximal acyclic edge set together with the rooted structure of each tree.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    pub tree_edges: EdgeSet,
    pub component_count: usize,
    /// For every non-root vertex, the tree edge towards its root and the parent vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub component: Vec<usize>,
}

impl SpanningForest {
    /// Tree edges on the unique forest path between two vertices of the same tree.
    pub fn path(&self, mut a: usize, mut b: usize, len: usize) -> EdgeSet {
        let mut set = EdgeSet::new(len);
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (e, p) = self.parent[a].expect("non-root has a parent");
                set.toggle(e);
                a = p;
            } else {
                let (e, p) = self.parent[b].expect("non-root has a parent");
                set.toggle(e);
                b = p;
            }
        }
        set
    }
}

/// Spanning forest preferring edges in ascending position order.
pub fn spanning_forest(g: &Multigraph) -> SpanningForest {
    spanning_forest_preferring(g, 0..g.edge_count())
}

/// Spanning forest built greedily from `priority` first, then every remaining edge.
pub fn spanning_forest_preferring(
    g: &Multigraph,
    priority: impl IntoIterator<Item = usize>,
) -> SpanningForest {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut tree = g.empty_set();
    let mut seen = g.empty_set();
    let order = priority.into_iter().chain(0..g.edge_count());
    for pos in order {
        if seen.contains(pos) {
            continue;
        }
        seen.insert(pos);
        let e = g.edge(pos);
        if !e.is_loop() && uf.union(e.u, e.v) {
            tree.insert(pos);
        }
    }

    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for root in 0..n {
        if component[root] != usize::MAX {
            continue;
        }
        component[root] = count;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &pos in g.incident(x) {
                if !tree.contains(pos) {
                    continue;
                }
                let y = g.edge(pos).other(x);
                if component[y] == usize::MAX {
                    component[y] = count;
                    parent[y] = Some((pos, x));
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }

    SpanningForest {
        tree_edges: tree,
        component_count: count,
        parent,
        depth,
        component,
    }
}

/// One connected component of an edge-induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddComponent {
    /// Vertices touched by the component's edges, ascending.
    pub vertices: Vec<usize>,
    /// Vertices of odd degree within the component, ascending.
    pub odd_vertices: Vec<usize>,
    pub edges: EdgeSet,
}

/// Splits the subgraph induced by `subset` into components and reports the
/// odd-degree vertices of each. Components are ordered by smallest vertex.
pub fn components_with_odd_vertices(g: &Multigraph, subset: &EdgeSet) -> Vec<OddComponent> {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut degree = vec![0usize; g.vertex_count()];
    for pos in subset.iter() {
        let e = g.edge(pos);
        uf.union(e.u, e.v);
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    let mut by_root: BTreeMap<usize, OddComponent> = BTreeMap::new();
    let mut root_key: HashMap<usize, usize> = HashMap::new();
    for v in 0..g.vertex_count() {
        if degree[v] == 0 {
            continue;
        }
        let r = uf.find(v);
        let key = *root_key.entry(r).or_insert(v);
        let comp = by_root.entry(key).or_insert_with(|| OddComponent {
            vertices: Vec::new(),
            odd_vertices: Vec::new(),
            edges: g.empty_set(),
        });
        comp.vertices.push(v);
        if degree[v] % 2 == 1 {
            comp.odd_vertices.push(v);
        }
    }
    for pos in subset.iter() {
        let r = uf.find(g.edge(pos).u);
        let key = root_key[&r];
        by_root.get_mut(&key).unwrap().edges.insert(pos);
    }
    by_root.into_values().collect()
}

/// Positive weights on every edge, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<u64>,
}

impl WeightMap {
    pub fn uniform(g: &Multigraph, w: u64) -> Self {
        WeightMap {
            weights: vec![w.max(1); g.edge_count()],
        }
    }

    /// Builds a weight map from `(edge id, weight)` pairs; every edge must be covered.
    pub fn from_ids(g: &Multigraph, pairs: impl IntoIterator<Item = (EdgeId, u64)>) -> Result<Self> {
        let mut weights = vec![0; g.edge_count()];
        for (id, w) in pairs {
            let pos = g.require_position(id)?;
            if w == 0 {
                return Err(Error::InvalidGraph(format!("edge {id} has weight 0")));
            }
            weights[pos] = w;
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGraph(format!(
                "edge {} has no weight",
                g.id(pos)
            )));
        }
        Ok(WeightMap { weights })
    }

    pub fn from_positions(weights: Vec<u64>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::InvalidGraph("weights must be positive".into()));
        }
        Ok(WeightMap { weights })
    }

    #[inline]
    pub fn at(&self, pos: usize) -> u64 {
        self.weights[pos]
    }

    pub fn set(&mut self, pos: usize, w: u64) {
        assert!(w > 0, "weights are positive");
        self.weights[pos] = w;
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    /// Total weight of an edge set.
    pub fn total(&self, set: &EdgeSet) -> u64 {
        set.iter().map(|p| self.weights[p]).sum()
    }
}

/// A circuit of a host graph, stored as positions in cyclic order.
///
/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`. Loops
/// (length 1) and digons (length 2) are accepted as degenerate circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    edges: Vec<usize>,
    vertices: Vec<usize>,
    mask: EdgeSet,
    vertex_index: HashMap<usize, usize>,
    edge_index: HashMap<usize, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Circuit {
    pub fn from_edge_ids(g: &Multigraph, ids: &[EdgeId]) -> Result<Self> {
        let positions = ids
            .iter()
            .map(|&id| g.require_position(id))
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(g, &positions)
    }

    /// Reconstructs and validates the vertex order of a cyclic edge sequence.
    pub fn from_positions(g: &Multigraph, positions: &[usize]) -> Result<Self> {
        let k = positions.len();
        let bad = |msg: String| Err(Error::InvalidCircuit(msg));
        let vertices = match k {
            0 => return bad("empty edge list".into()),
            1 => {
                let e = g.edge(positions[0]);
                if !e.is_loop() {
                    return bad(format!("single edge {} is not a loop", e.id));
                }
                vec![e.u]
            }
            2 => {
                let (a, b) = (g.edge(positions[0]), g.edge(positions[1]));
                if a.id == b.id || a.is_loop() || b.is_loop() {
                    return bad("a two-edge circuit needs two distinct non-loop edges".into());
                }
                let same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
                if !same {
                    return bad(format!("edges {} and {} are not parallel", a.id, b.id));
                }
                vec![a.u, a.v]
            }
            _ => {
                let (e0, e1) = (g.edge(positions[0]), g.edge(positions[1]));
                let shared: Vec<usize> = [e0.u, e0.v]
                    .into_iter()
                    .filter(|&x| e1.touches(x))
                    .collect();
                if e0.is_loop() || shared.len() != 1 {
                    return bad(format!(
                        "edges {} and {} do not share exactly one endpoint",
                        e0.id, e1.id
                    ));
                }
                let mut verts = vec![e0.other(shared[0])];
                let mut cur = verts[0];
                for (i, &pos) in positions.iter().enumerate() {
                    let e = g.edge(pos);
                    if e.is_loop() || !e.touches(cur) {
                        return bad(format!("edge {} does not continue the walk at {cur}", e.id));
                    }
                    cur = e.other(cur);
                    if i + 1 < k {
                        verts.push(cur);
                    }
                }
                if cur != verts[0] {
                    return bad("edge sequence does not close up".into());
                }
                verts
            }
        };

        let mut vertex_index = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            if vertex_index.insert(v, i).is_some() {
                return bad(format!("vertex {v} repeats"));
            }
        }
        let mut edge_index = HashMap::new();
        let mut mask = g.empty_set();
        for (i, &p) in positions.iter().enumerate() {
            if edge_index.insert(p, i).is_some() {
                return bad(format!("edge {} repeats", g.id(p)));
            }
            mask.insert(p);
        }
        Ok(Circuit {
            edges: positions.to_vec(),
            vertices,
            mask,
            vertex_index,
            edge_index,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.edges.len() <= 2
    }

    /// Graph position of the `i`-th circuit edge (cyclic).
    pub fn edge_at(&self, i: isize) -> usize {
        self.edges[i.rem_euclid(self.len() as isize) as usize]
    }

    pub fn vertex_at(&self, i: isize) -> usize {
        self.vertices[i.rem_euclid(self.len() as isize) as usize]
    }

    pub fn edge_positions(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertices
    }

    pub fn mask(&self) -> &EdgeSet {
        &self.mask
    }

    /// Index along the circuit of a vertex, if it lies on the circuit.
    pub fn index_of_vertex(&self, v: usize) -> Option<usize> {
        self.vertex_index.get(&v).copied()
    }

    /// Index along the circuit of a graph edge position.
    pub fn index_of_edge(&self, pos: usize) -> Option<usize> {
        self.edge_index.get(&pos).copied()
    }

    pub fn weight(&self, w: &WeightMap) -> u64 {
        self.edges.iter().map(|&p| w.at(p)).sum()
    }

    /// Maximum edge weight on the circuit.
    pub fn max_weight(&self, w: &WeightMap) -> u64 {
        self.edges.iter().map(|&p| w.at(p)).max().unwrap_or(0)
    }

    pub fn edge_ids(&self, g: &Multigraph) -> Vec<EdgeId> {
        self.edges.iter().map(|&p| g.id(p)).collect()
    }
}

/// A contiguous run of circuit edges `start, start+1, ..., start+len-1` (cyclic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
}

impl Segment {
    /// Circuit edge indices covered, in forward order.
    pub fn indices(&self, circuit_len: usize) -> impl Iterator<Item = usize> {
        let start = self.start;
        (0..self.len).map(move |i| (start + i) % circuit_len)
    }

    pub fn edge_set(&self, c: &Circuit, edge_count: usize) -> EdgeSet {
        EdgeSet::from_positions(
            edge_count,
            self.indices(c.len()).map(|i| c.edge_at(i as isize)),
        )
    }

    pub fn contains_index(&self, idx: usize, circuit_len: usize) -> bool {
        (idx + circuit_len - self.start) % circuit_len < self.len
    }
}

/// The arc of `c` from `from` to `to` in the given direction.
pub fn circuit_path(c: &Circuit, from: usize, to: usize, direction: Direction) -> Result<Segment> {
    let n = c.len();
    let i = c.index_of_vertex(from).ok_or(Error::VertexNotOnCircuit(from))?;
    let j = c.index_of_vertex(to).ok_or(Error::VertexNotOnCircuit(to))?;
    Ok(match direction {
        Direction::Forward => Segment {
            start: i,
            len: (j + n - i) % n,
        },
        Direction::Backward => Segment {
            start: j,
            len: (i + n - j) % n,
        },
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two elements were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::from_triples(3, &[(0, 0, 1), (1, 1, 2), (2, 2, 0)]).unwrap()
    }

    fn square() -> (Multigraph, Circuit) {
        let g = Multigraph::from_triples(4, &[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 0)]).unwrap();
        let c = Circuit::from_edge_ids(&g, &[0, 1, 2, 3]).unwrap();
        (g, c)
    }

    #[test]
    fn forest_of_triangle() {
        let f = spanning_forest(&triangle());
        assert_eq!(f.tree_edges.count(), 2);
        assert_eq!(f.component_count, 1);
    }

    #[test]
    fn forest_of_single_loop() {
        let g = Multigraph::from_triples(1, &[(7, 0, 0)]).unwrap();
        let f = spanning_forest(&g);
        assert_eq!(f.tree_edges.count(), 0);
        assert_eq!(f.component_count, 1);
    }

    #[test]
    fn forest_of_two_disjoint_edges() {
        let g = Multigraph::from_triples(4, &[(0, 0, 1), (1, 2, 3)]).unwrap();
        let f = spanning_forest(&g);
        assert_eq!(f.tree_edges.count(), 2);
        assert_eq!(f.component_count, 2);
    }

    #[test]
    fn loop_is_listed_twice_in_incidence() {
        let g = Multigraph::from_triples(1, &[(0, 0, 0)]).unwrap();
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert!(Multigraph::from_triples(2, &[(0, 0, 1), (0, 1, 0)]).is_err());
        assert!(Multigraph::from_triples(2, &[(0, 0, 2)]).is_err());
    }

    #[test]
    fn square_paths() {
        let (_, c) = square();
        let fwd = circuit_path(&c, 0, 2, Direction::Forward).unwrap();
        assert_eq!(fwd.indices(4).collect::<Vec<_>>(), vec![0, 1]);
        let back = circuit_path(&c, 0, 2, Direction::Backward).unwrap();
        let mut idx: Vec<_> = back.indices(4).collect();
        idx.sort();
        // v2v3 and v3v0
        assert_eq!(idx, vec![2, 3]);
        let empty = circuit_path(&c, 0, 0, Direction::Forward).unwrap();
        assert_eq!(empty.len, 0);
        assert!(matches!(
            circuit_path(&c, 0, 9, Direction::Forward),
            Err(Error::VertexNotOnCircuit(9))
        ));
    }

    #[test]
    fn components_of_path_circuit_and_empty() {
        let g = Multigraph::from_triples(
            5,
            &[(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 4, 2)],
        )
        .unwrap();
        let path = g.set_of_ids([0, 1]).unwrap();
        let comps = components_with_odd_vertices(&g, &path);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].odd_vertices, vec![0, 2]);

        let cyc = g.set_of_ids([2, 3, 4]).unwrap();
        let comps = components_with_odd_vertices(&g, &cyc);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].odd_vertices.is_empty());

        assert!(components_with_odd_vertices(&g, &g.empty_set()).is_empty());
    }

    #[test]
    fn circuit_reconstruction_and_rejection() {
        let (g, c) = square();
        assert_eq!(c.vertex_order(), &[0, 1, 2, 3]);
        // out of cyclic order
        assert!(Circuit::from_edge_ids(&g, &[0, 2, 1, 3]).is_err());
        // not closed
        assert!(Circuit::from_edge_ids(&g, &[0, 1, 2]).is_err());

        let digon = Multigraph::from_triples(2, &[(0, 0, 1), (1, 1, 0)]).unwrap();
        let d = Circuit::from_edge_ids(&digon, &[0, 1]).unwrap();
        assert!(d.is_degenerate());
        let lp = Multigraph::from_triples(1, &[(5, 0, 0)]).unwrap();
        assert_eq!(Circuit::from_edge_ids(&lp, &[5]).unwrap().len(), 1);
    }

    #[test]
    fn circuit_with_repeated_vertex_rejected() {
        // figure-eight: 0-1-2-0-3-4-0
        let g = Multigraph::from_triples(
            5,
            &[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 0, 3), (4, 3, 4), (5, 4, 0)],
        )
        .unwrap();
        assert!(Circuit::from_edge_ids(&g, &[0, 1, 2, 3, 4, 5]).is_err());
    }
}
