//! Fixed-capacity simple graphs with one `u64` neighbor set per vertex.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::GraphError;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex labels in `0..64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All labels `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `k` smallest elements (or all of them if there are fewer).
    pub fn smallest(self, k: usize) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in self.iter().take(k) {
            out.insert(v);
        }
        out
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge, always stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}` in normalized order. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    /// Rank of this edge in lexicographic `(u, v)` order among the edges of
    /// an `n`-vertex complete graph.
    pub fn index(self, n: usize) -> usize {
        self.u * (2 * n - self.u - 1) / 2 + (self.v - self.u - 1)
    }

    /// Inverse of [`Edge::index`].
    pub fn from_index(mut index: usize, n: usize) -> Edge {
        let mut u = 0;
        while index >= n - u - 1 {
            index -= n - u - 1;
            u += 1;
        }
        Edge {
            u,
            v: u + 1 + index,
        }
    }

    pub fn other(self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Undirected simple graph on at most 64 labeled vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n == 0 || n > MAX_VERTICES {
        Err(GraphError::Capacity(n))
    } else {
        Ok(())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        check_order(n)?;
        let mut g = Graph::empty(n)?;
        let all = VertexSet::full(n);
        for v in 0..n {
            g.adj[v] = (all - VertexSet::singleton(v)).0;
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for i in 1..n {
            g.link(i - 1, i);
        }
        Ok(g)
    }

    /// Builds a graph from an edge list; endpoint order is irrelevant.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            let e = Edge::new(a, b)?;
            g.check_edge(e)?;
            g.link(e.u, e.v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks. The masks must describe a
    /// symmetric loop-free relation on `0..n`.
    pub fn from_adjacency(n: usize, masks: &[u64]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        if masks.len() != n {
            return Err(GraphError::Malformed(format!(
                "expected {n} neighbor masks, got {}",
                masks.len()
            )));
        }
        g.adj[..n].copy_from_slice(masks);
        g.validate()?;
        Ok(g)
    }

    /// Checks symmetry, loop-freeness and that every bit is below `n`.
    pub fn validate(&self) -> Result<(), GraphError> {
        let all = VertexSet::full(self.n);
        for u in 0..MAX_VERTICES {
            let nu = VertexSet(self.adj[u]);
            if u >= self.n {
                if !nu.is_empty() {
                    return Err(GraphError::Malformed(format!("vertex {u} beyond order")));
                }
                continue;
            }
            if nu.contains(u) {
                return Err(GraphError::Loop(u));
            }
            if !nu.is_subset(all) {
                return Err(GraphError::Malformed(format!(
                    "neighbor of {u} out of range"
                )));
            }
            for v in nu.iter() {
                if !self.neighbors(v).contains(u) {
                    return Err(GraphError::Malformed(format!("asymmetric pair {u},{v}")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighborhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1u64 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `N(u) ∩ N(v)`; never contains `u` or `v`.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        VertexSet(self.adj[u] & self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of vertex pairs, `n(n-1)/2`.
    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.pair_count()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    fn check_edge(&self, e: Edge) -> Result<(), GraphError> {
        if e.v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: e.v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub(crate) fn link(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1u64 << b;
        self.adj[b] |= 1u64 << a;
    }

    #[inline]
    pub(crate) fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1u64 << b);
        self.adj[b] &= !(1u64 << a);
    }

    /// Inserts `e`; a no-op if it is already present.
    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check_edge(e)?;
        self.link(e.u, e.v);
        Ok(())
    }

    /// Deletes `e`; a no-op if it is absent.
    pub fn remove_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        self.check_edge(e)?;
        self.unlink(e.u, e.v);
        Ok(())
    }

    /// `G + e`.
    pub fn with_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(e)?;
        Ok(g)
    }

    /// `G - e`.
    pub fn without_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(e)?;
        Ok(g)
    }

    /// Edges in ascending index order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.neighbors(u) - VertexSet::full(u + 1))
                .iter()
                .map(move |v| Edge { u, v })
        })
    }

    /// Non-adjacent pairs in ascending index order.
    pub fn missing_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let all = self.vertices();
        (0..self.n).flat_map(move |u| {
            (all - self.closed_neighbors(u) - VertexSet::full(u + 1))
                .iter()
                .map(move |v| Edge { u, v })
        })
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v] = (all - self.closed_neighbors(v)).0;
        }
        g
    }

    /// `G1 ⊔ G2`, with the vertices of `other` relabeled to `n1..n1+n2`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n1 = self.n;
        let n = n1 + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mut g = Graph::empty(n)?;
        g.adj[..n1].copy_from_slice(&self.adj[..n1]);
        for v in 0..other.n {
            g.adj[n1 + v] = other.adj[v] << n1;
        }
        Ok(g)
    }

    /// `G1 ∨ G2`: the disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n);
        let right = g.vertices() - left;
        for v in left.iter() {
            g.adj[v] |= right.0;
        }
        for v in right.iter() {
            g.adj[v] |= left.0;
        }
        Ok(g)
    }

    /// `G - v`, with the labels above `v` shifted down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let mut g = Graph::empty(self.n - 1)?;
        let low = (1u64 << v) - 1;
        for u in (0..self.n).filter(|&u| u != v) {
            let m = self.adj[u];
            let shifted = (m & low) | ((m >> 1) & !low);
            let nu = if u < v { u } else { u - 1 };
            g.adj[nu] = shifted & VertexSet::full(self.n - 1).0;
        }
        Ok(g)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n {
            let mut m = 0u64;
            for w in self.neighbors(u).iter() {
                m |= 1u64 << perm[w];
            }
            g.adj[perm[u]] = m;
        }
        g
    }

    /// Whether every edge of `self` is an edge of `other` (same order).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v] & !other.adj[v] == 0)
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut comps = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next | self.neighbors(v);
                }
                frontier = next - comp;
                comp = comp | next;
            }
            left = left - comp;
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.connected_components().len() == self.n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(Graph::empty(3).unwrap().edge_count(), 0);
        assert_eq!(Graph::empty(1).unwrap().order(), 1);
        assert!(matches!(Graph::empty(65), Err(GraphError::Capacity(65))));
        assert!(Graph::empty(0).is_err());
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        assert_eq!(Graph::complete(2).unwrap().edge_count(), 1);
        let k5 = Graph::complete(5).unwrap();
        assert!((0..5).all(|u| (0..5).all(|v| u == v || k5.has_edge(u, v))));
        assert_eq!(Graph::complete(64).unwrap().edge_count(), 64 * 63 / 2);

        let p5 = Graph::path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert_eq!((p5.degree(0), p5.degree(4)), (1, 1));
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
        assert_eq!(
            Graph::path(2).unwrap().edges().collect::<Vec<_>>(),
            vec![e(0, 1)]
        );
    }

    #[test]
    fn edge_mutation() {
        let mut g = Graph::empty(3).unwrap();
        g.add_edge(e(1, 0)).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        let once = g.clone();
        g.add_edge(e(0, 1)).unwrap();
        assert_eq!(g, once);
        g.remove_edge(e(0, 2)).unwrap();
        assert_eq!(g, once);

        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.without_edge(e(0, 1)).unwrap().edge_count(), 2);
        assert!(Edge::new(2, 2).is_err());
        assert!(g.add_edge(e(0, 3)).is_err());
    }

    #[test]
    fn edge_index_roundtrip() {
        for n in 2..10 {
            let all: Vec<Edge> = Graph::complete(n).unwrap().edges().collect();
            for (i, ed) in all.iter().enumerate() {
                assert_eq!(ed.index(n), i);
                assert_eq!(Edge::from_index(i, n), *ed);
            }
        }
    }

    #[test]
    fn complement_counts() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        assert_eq!(Graph::path(5).unwrap().complement().edge_count(), 6);
        assert_eq!(
            Graph::empty(4).unwrap().complement(),
            Graph::complete(4).unwrap()
        );
    }

    #[test]
    fn union_and_join() {
        let k2 = Graph::complete(2).unwrap();
        let e2 = Graph::empty(2).unwrap();
        let e3 = Graph::empty(3).unwrap();
        let j = k2.join(&e3).unwrap();
        assert_eq!(j.edge_count(), 7);
        let k23 = e2.join(&e3).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(!k23.has_edge(0, 1) && k23.has_edge(1, 4) && !k23.has_edge(2, 3));

        let u = Graph::path(4)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        assert_eq!((u.order(), u.edge_count()), (5, 3));
        assert!(Graph::empty(40)
            .unwrap()
            .join(&Graph::empty(30).unwrap())
            .is_err());
    }

    #[test]
    fn neighborhoods() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.common_neighbors(0, 1).to_vec(), vec![2, 3]);
        let p5 = Graph::path(5).unwrap();
        assert_eq!(p5.common_neighbors(0, 2).to_vec(), vec![1]);
        assert!(Graph::empty(5).unwrap().common_neighbors(1, 3).is_empty());
    }

    #[test]
    fn forests_and_components() {
        let p5 = Graph::path(5).unwrap();
        assert!(p5.is_forest());
        assert_eq!(p5.connected_components().len(), 1);
        assert!(!Graph::complete(3).unwrap().is_forest());
        let g = Graph::path(3)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        assert!(g.is_forest());
        assert_eq!(g.connected_components().len(), 2);
    }

    #[test]
    fn vertex_removal_relabels() {
        // star centered at 2 plus edge 3-4
        let g = Graph::from_edges(5, &[(2, 0), (2, 1), (2, 3), (3, 4)]).unwrap();
        let h = g.remove_vertex(2).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![e(2, 3)]);
        let h0 = g.remove_vertex(0).unwrap();
        assert_eq!(h0.edge_count(), 3);
        assert!(h0.has_edge(1, 0) && h0.has_edge(1, 2) && h0.has_edge(2, 3));
    }

    #[test]
    fn missing_edges_complement_each_other() {
        let g = Graph::path(5).unwrap();
        let missing: Vec<Edge> = g.missing_edges().collect();
        let comp: Vec<Edge> = g.complement().edges().collect();
        assert_eq!(missing, comp);
    }

    #[test]
    fn from_adjacency_validates() {
        assert!(Graph::from_adjacency(3, &[0b010, 0b001, 0]).is_ok());
        assert!(Graph::from_adjacency(3, &[0b010, 0, 0]).is_err());
        assert!(Graph::from_adjacency(2, &[0b001, 0]).is_err());
    }
}
