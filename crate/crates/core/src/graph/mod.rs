//! Weighted multigraphs and the surgery applied to them.
//!
//! A [`Multigraph`] may carry parallel edges and self-loops; every edge has a
//! positive rational length. Vertex and edge ids are opaque and stable: every
//! surgery returns a new graph, and operations that merge vertices also return
//! a [`Rename`] map from the parent's vertices to the derived graph's vertices.

pub mod families;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge {0} has non-positive length")]
    NonPositiveLength(EdgeId),
    #[error("vertex {0} appears in more than one identification group")]
    OverlappingGroups(VertexId),
    #[error("identification group is empty")]
    EmptyGroup,
}

/// Maps every vertex of a parent graph to its image in a derived graph.
pub type Rename = BTreeMap<VertexId, VertexId>;

/// Disjoint vertex groups; each group collapses to one vertex under
/// [`Multigraph::identify`]. Vertices not listed stay as they are.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexPartition {
    groups: Vec<Vec<VertexId>>,
}

impl VertexPartition {
    pub fn new(groups: Vec<Vec<VertexId>>) -> Self {
        Self { groups }
    }

    pub fn single(group: Vec<VertexId>) -> Self {
        Self { groups: vec![group] }
    }

    pub fn pair(a: VertexId, b: VertexId) -> Self {
        Self::single(vec![a, b])
    }

    pub fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), GraphError> {
        let mut seen = BTreeSet::new();
        for group in &self.groups {
            if group.is_empty() {
                return Err(GraphError::EmptyGroup);
            }
            for &v in group {
                g.check_vertex(v)?;
                if !seen.insert(v) {
                    return Err(GraphError::OverlappingGroups(v));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Multigraph {
    /// Sorted, unique.
    vertices: Vec<VertexId>,
    /// Sorted by id, unique ids.
    edges: Vec<Edge>,
    next_vertex: u32,
    next_edge: u32,
}

// Id counters are bookkeeping, not structure.
impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

impl Default for Multigraph {
    fn default() -> Self {
        Self::new()
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            edges: Vec::new(),
            next_vertex: 0,
            next_edge: 0,
        }
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph from explicit ids, validating every invariant.
    pub fn from_parts(vertices: Vec<VertexId>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for v in vertices {
            g.insert_vertex(v)?;
        }
        for e in edges {
            g.insert_edge(e)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.push(id);
        id
    }

    pub fn insert_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        match self.vertices.binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateVertex(v)),
            Err(pos) => {
                self.vertices.insert(pos, v);
                self.next_vertex = self.next_vertex.max(v.0 + 1);
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, length: Rational) -> Result<EdgeId, GraphError> {
        let id = EdgeId(self.next_edge);
        self.insert_edge(Edge { id, u, v, length })?;
        Ok(id)
    }

    /// Unit-length edge.
    pub fn add_unit_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.add_edge(u, v, Rational::one())
    }

    pub fn insert_edge(&mut self, edge: Edge) -> Result<(), GraphError> {
        self.check_vertex(edge.u)?;
        self.check_vertex(edge.v)?;
        if !edge.length.is_positive() {
            return Err(GraphError::NonPositiveLength(edge.id));
        }
        match self.edges.binary_search_by_key(&edge.id, |e| e.id) {
            Ok(_) => Err(GraphError::DuplicateEdge(edge.id)),
            Err(pos) => {
                self.next_edge = self.next_edge.max(edge.id.0 + 1);
                self.edges.insert(pos, edge);
                Ok(())
            }
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted vertex list (the Laplacian row index).
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<usize, GraphError> {
        self.index_of(v).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge, GraphError> {
        self.edges
            .binary_search_by_key(&e, |x| x.id)
            .map(|i| &self.edges[i])
            .map_err(|_| GraphError::UnknownEdge(e))
    }

    pub fn total_length(&self) -> Rational {
        self.edges.iter().map(|e| e.length.clone()).sum()
    }

    pub fn is_unit_length(&self) -> bool {
        self.edges.iter().all(|e| e.length.is_one())
    }

    pub fn with_unit_lengths(&self) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length = Rational::one();
        }
        g
    }

    /// Every edge length multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive(), "scale factor must be positive");
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length = &e.length * factor;
        }
        g
    }

    /// Copy with edge `e` given a new positive length.
    pub fn with_edge_length(&self, e: EdgeId, length: Rational) -> Result<Self, GraphError> {
        if !length.is_positive() {
            return Err(GraphError::NonPositiveLength(e));
        }
        let mut g = self.clone();
        let i = g
            .edges
            .binary_search_by_key(&e, |x| x.id)
            .map_err(|_| GraphError::UnknownEdge(e))?;
        g.edges[i].length = length;
        Ok(g)
    }

    /// `G - e`; vertices are kept even when this disconnects the graph.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Self, GraphError> {
        let i = self
            .edges
            .binary_search_by_key(&e, |x| x.id)
            .map_err(|_| GraphError::UnknownEdge(e))?;
        let mut g = self.clone();
        g.edges.remove(i);
        Ok(g)
    }

    /// Collapses `e` to a point. Other edges between the same endpoints become
    /// self-loops. Contracting a self-loop deletes it.
    pub fn contract_edge(&self, e: EdgeId) -> Result<(Self, Rename), GraphError> {
        let edge = self.edge(e)?.clone();
        let without = self.delete_edge(e)?;
        if edge.is_loop() {
            let rename = self.vertices.iter().map(|&v| (v, v)).collect();
            return Ok((without, rename));
        }
        without.identify(&VertexPartition::pair(edge.u, edge.v))
    }

    /// Collapses every group of `partition` to a single fresh vertex. Groups
    /// of one vertex are left untouched. Edges inside a group become loops.
    pub fn identify(&self, partition: &VertexPartition) -> Result<(Self, Rename), GraphError> {
        partition.validate(self)?;
        let mut rename: Rename = self.vertices.iter().map(|&v| (v, v)).collect();
        let mut g = Self {
            vertices: Vec::new(),
            edges: Vec::new(),
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
        };
        let mut merged = BTreeSet::new();
        for group in partition.groups() {
            let distinct: BTreeSet<VertexId> = group.iter().copied().collect();
            if distinct.len() < 2 {
                continue;
            }
            let fresh = VertexId(g.next_vertex);
            g.next_vertex += 1;
            for v in distinct {
                rename.insert(v, fresh);
                merged.insert(v);
            }
        }
        let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
        for &v in &self.vertices {
            vertices.insert(rename[&v]);
        }
        g.vertices = vertices.into_iter().collect();
        g.edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id,
                u: rename[&e.u],
                v: rename[&e.v],
                length: e.length.clone(),
            })
            .collect();
        Ok((g, rename))
    }

    /// Removes `u` and every edge incident to it.
    pub fn delete_vertex(&self, u: VertexId) -> Result<Self, GraphError> {
        let i = self.check_vertex(u)?;
        let mut g = self.clone();
        g.vertices.remove(i);
        g.edges.retain(|e| e.u != u && e.v != u);
        Ok(g)
    }

    /// True iff deleting `e` disconnects its endpoints. Loops are never bridges.
    pub fn is_bridge(&self, e: EdgeId) -> Result<bool, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(false);
        }
        Ok(!self.reachable_avoiding(edge.u, Some(e)).contains(&edge.v))
    }

    /// Vertices reachable from `start`, optionally ignoring one edge.
    pub fn reachable_avoiding(&self, start: VertexId, skip: Option<EdgeId>) -> BTreeSet<VertexId> {
        let adj = self.adjacency(skip);
        let mut seen = BTreeSet::new();
        let Some(s) = self.index_of(start) else {
            return seen;
        };
        let mut visited = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([s]);
        visited[s] = true;
        while let Some(x) = queue.pop_front() {
            seen.insert(self.vertices[x]);
            for &y in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Index-based adjacency lists (loops omitted, parallel edges repeated).
    fn adjacency(&self, skip: Option<EdgeId>) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            if Some(e.id) == skip || e.is_loop() {
                continue;
            }
            let a = self.index_of(e.u).expect("edge endpoint");
            let b = self.index_of(e.v).expect("edge endpoint");
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency(None);
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = Vec::new();
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(x) = stack.pop() {
                members.push(self.vertices[x]);
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Cyclomatic number `m - n + c` (`m - n + 1` for connected graphs).
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.connected_components().len() as i64
    }

    /// Distinct neighbours of `u` with edge multiplicities; loops excluded.
    pub fn neighbors_with_multiplicity(&self, u: VertexId) -> Result<Vec<(VertexId, usize)>, GraphError> {
        self.check_vertex(u)?;
        let mut counts: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in &self.edges {
            if e.is_loop() {
                continue;
            }
            if e.u == u {
                *counts.entry(e.v).or_default() += 1;
            } else if e.v == u {
                *counts.entry(e.u).or_default() += 1;
            }
        }
        Ok(counts.into_iter().collect())
    }

    /// Number of non-loop edge ends at `u`.
    pub fn degree(&self, u: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| usize::from(e.u == u) + usize::from(e.v == u))
            .sum()
    }

    /// True iff `u` is a cut vertex: deleting it leaves more components than
    /// the graph had, not counting `u` itself.
    pub fn is_cut_vertex(&self, u: VertexId) -> Result<bool, GraphError> {
        let before = self.connected_components();
        let alone = before.iter().any(|c| c.len() == 1 && c[0] == u);
        let after = self.delete_vertex(u)?.connected_components().len();
        let expected = before.len() - usize::from(alone);
        Ok(after > expected)
    }

    /// Adds a disjoint copy of `other`; its vertices and edges get fresh ids.
    /// Returns the rename map for `other`'s vertices.
    pub fn disjoint_union(&self, other: &Multigraph) -> (Self, Rename) {
        let mut g = self.clone();
        let mut rename = Rename::new();
        for &v in &other.vertices {
            rename.insert(v, g.add_vertex());
        }
        for e in &other.edges {
            g.add_edge(rename[&e.u], rename[&e.v], e.length.clone())
                .expect("fresh endpoints are valid");
        }
        (g, rename)
    }

    /// Glues `other` onto `self` by identifying each pair `(x in self, y in other)`.
    /// Returns the glued graph and the maps for `self` and `other`.
    pub fn glue(
        &self,
        other: &Multigraph,
        pairs: &[(VertexId, VertexId)],
    ) -> Result<(Self, Rename, Rename), GraphError> {
        for &(x, y) in pairs {
            self.check_vertex(x)?;
            other.check_vertex(y)?;
        }
        let (union, other_map) = self.disjoint_union(other);
        let groups = pairs.iter().map(|&(x, y)| vec![x, other_map[&y]]).collect();
        let (glued, rename) = union.identify(&VertexPartition::new(groups))?;
        let self_map = self.vertices.iter().map(|&v| (v, rename[&v])).collect();
        let other_final = other
            .vertices
            .iter()
            .map(|&v| (v, rename[&other_map[&v]]))
            .collect();
        Ok((glued, self_map, other_final))
    }
}

/// Composes two rename maps: `first` then `second`.
pub fn compose(first: &Rename, second: &Rename) -> Rename {
    first.iter().map(|(&k, v)| (k, second[v])).collect()
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn delete_edge_examples() {
        let c3 = cycle(3);
        let p3 = c3.delete_edge(EdgeId(2)).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert!(p3.is_connected());
        assert_eq!(p3.genus(), 0);

        let p2 = path(2);
        let split = p2.delete_edge(EdgeId(0)).unwrap();
        assert_eq!(split.vertex_count(), 2);
        assert_eq!(split.connected_components().len(), 2);

        let b2 = banana(3).delete_edge(EdgeId(0)).unwrap();
        assert_eq!(b2.edge_count(), 2);
        assert_eq!(b2.vertex_count(), 2);
        assert_eq!(
            c3.delete_edge(EdgeId(9)),
            Err(GraphError::UnknownEdge(EdgeId(9)))
        );
    }

    #[test]
    fn contract_edge_examples() {
        let (c2, rename) = cycle(3).contract_edge(EdgeId(0)).unwrap();
        assert_eq!(c2.vertex_count(), 2);
        assert_eq!(c2.edge_count(), 2);
        assert!(c2.edges().iter().all(|e| !e.is_loop()));
        assert_eq!(rename[&v(0)], rename[&v(1)]);

        let (one, _) = banana(2).contract_edge(EdgeId(0)).unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.edge_count(), 1);
        assert!(one.edges()[0].is_loop());
    }

    #[test]
    fn contracting_a_loop_deletes_it() {
        let mut g = path(2);
        let l = g.add_unit_edge(v(0), v(0)).unwrap();
        let (h, rename) = g.contract_edge(l).unwrap();
        assert_eq!(h, path(2));
        assert!(rename.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn identify_examples() {
        let (g, _) = path(2).identify(&VertexPartition::pair(v(0), v(1))).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges()[0].is_loop());

        // ends of P_5 close up into C_4
        let (c4, _) = path(5).identify(&VertexPartition::pair(v(0), v(4))).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().iter().all(|&x| c4.degree(x) == 2));

        let (pt, _) = cycle(3)
            .identify(&VertexPartition::single(vec![v(0), v(1), v(2)]))
            .unwrap();
        assert_eq!(pt.vertex_count(), 1);
        assert_eq!(pt.edge_count(), 3);
        assert!(pt.edges().iter().all(Edge::is_loop));
    }

    #[test]
    fn identify_rejects_bad_partitions() {
        let g = cycle(3);
        let overlap = VertexPartition::new(vec![vec![v(0), v(1)], vec![v(1), v(2)]]);
        assert_eq!(g.identify(&overlap).unwrap_err(), GraphError::OverlappingGroups(v(1)));
        let unknown = VertexPartition::pair(v(0), v(7));
        assert_eq!(g.identify(&unknown).unwrap_err(), GraphError::UnknownVertex(v(7)));
        let singleton = VertexPartition::single(vec![v(1)]);
        assert_eq!(g.identify(&singleton).unwrap().0, g);
    }

    #[test]
    fn delete_vertex_examples() {
        // apex of the fan/wheel is the last vertex
        let fan3 = fan(3, 1);
        let apex = *fan3.vertices().last().unwrap();
        let h = fan3.delete_vertex(apex).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.genus(), 0);

        let w3 = wheel(3, 1);
        let apex = *w3.vertices().last().unwrap();
        let h = w3.delete_vertex(apex).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.genus(), 1);

        let mut g = cycle(3);
        let iso = g.add_vertex();
        assert_eq!(g.delete_vertex(iso).unwrap().edges(), cycle(3).edges());
        assert!(g.delete_vertex(v(99)).is_err());
    }

    #[test]
    fn bridges() {
        let p3 = path(3);
        assert!(p3.is_bridge(EdgeId(0)).unwrap());
        assert!(p3.is_bridge(EdgeId(1)).unwrap());
        let c3 = cycle(3);
        for e in c3.edges() {
            assert!(!c3.is_bridge(e.id).unwrap());
        }
        let mut g = path(2);
        let l = g.add_unit_edge(v(1), v(1)).unwrap();
        assert!(!g.is_bridge(l).unwrap());
    }

    #[test]
    fn genus_and_neighbors() {
        assert_eq!(cycle(5).genus(), 1);
        assert_eq!(complete(4).genus(), 3);
        let fan3 = fan(3, 2);
        let apex = *fan3.vertices().last().unwrap();
        let nb = fan3.neighbors_with_multiplicity(apex).unwrap();
        assert_eq!(nb.len(), 3);
        assert!(nb.iter().all(|&(_, a)| a == 2));
    }

    #[test]
    fn cut_vertices() {
        let p3 = path(3);
        assert!(p3.is_cut_vertex(v(1)).unwrap());
        assert!(!p3.is_cut_vertex(v(0)).unwrap());
        assert!(!cycle(4).is_cut_vertex(v(2)).unwrap());
    }

    #[test]
    fn glue_two_paths_into_cycle() {
        let a = path(3);
        let b = path(2);
        let (g, _, _) = a.glue(&b, &[(v(0), v(0)), (v(2), v(1))]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.genus(), 1);
    }

    #[test]
    fn surgery_length_bookkeeping() {
        let mut g = cycle(4);
        g = g.with_edge_length(EdgeId(1), rat(5, 2)).unwrap();
        let total = g.total_length();
        assert_eq!(g.delete_edge(EdgeId(1)).unwrap().total_length(), &total - rat(5, 2));
        let (c, _) = g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(c.total_length(), &total - int(1));
        let (i, _) = g.identify(&VertexPartition::pair(v(0), v(2))).unwrap();
        assert_eq!(i.total_length(), total);
        assert!(g.with_edge_length(EdgeId(1), int(0)).is_err());
    }

    /// Small random multigraph: (n, edges as index pairs).
    pub(crate) fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (2usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 1i64..4), 1..10).prop_map(move |es| {
                let mut g = Multigraph::with_vertices(n);
                for (a, b, l) in es {
                    g.add_edge(VertexId(a as u32), VertexId(b as u32), int(l)).unwrap();
                }
                g
            })
        })
    }

    /// Equivalence classes induced on the parent's vertices plus the edge
    /// multiset expressed in those classes; compares derived graphs that use
    /// different fresh ids.
    fn shape(parent: &Multigraph, g: &Multigraph, rename: &Rename) -> Vec<(EdgeId, Vec<VertexId>, Vec<VertexId>)> {
        let class_of = |x: VertexId| -> Vec<VertexId> {
            parent.vertices().iter().copied().filter(|&p| rename[&p] == x).collect()
        };
        g.edges()
            .iter()
            .map(|e| {
                let mut a = class_of(e.u);
                let mut b = class_of(e.v);
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                (e.id, a, b)
            })
            .collect()
    }

    proptest! {
        #[test]
        fn contraction_is_identification_after_deletion(g in arb_graph()) {
            for e in g.edges().iter().filter(|e| !e.is_loop()) {
                let (c, rc) = g.contract_edge(e.id).unwrap();
                let (i, ri) = g
                    .delete_edge(e.id)
                    .unwrap()
                    .identify(&VertexPartition::pair(e.u, e.v))
                    .unwrap();
                prop_assert_eq!(shape(&g, &c, &rc), shape(&g, &i, &ri));
            }
        }

        #[test]
        fn identify_composes(g in arb_graph(), split in 1usize..5) {
            let vs = g.vertices().to_vec();
            let n = vs.len();
            let k = split.min(n - 1);
            // first identify a prefix, then a suffix group touching it
            let p1 = VertexPartition::single(vs[..k].to_vec());
            let (g1, r1) = g.identify(&p1).unwrap();
            let second: Vec<VertexId> = vec![r1[&vs[0]], r1[&vs[n - 1]]];
            let (g2, r2) = g1.identify(&VertexPartition::single(second)).unwrap();
            let mut merged = vs[..k].to_vec();
            merged.push(vs[n - 1]);
            let (g3, r3) = g.identify(&VertexPartition::single(merged)).unwrap();
            prop_assert_eq!(shape(&g, &g2, &compose(&r1, &r2)), shape(&g, &g3, &r3));
        }

        #[test]
        fn identify_preserves_length(g in arb_graph()) {
            let vs = g.vertices().to_vec();
            let (h, _) = g.identify(&VertexPartition::pair(vs[0], vs[1])).unwrap();
            prop_assert_eq!(h.total_length(), g.total_length());
        }
    }
}
