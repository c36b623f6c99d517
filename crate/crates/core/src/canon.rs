//! Canonical labeling by partition refinement and individualization.
//!
//! The ordered partition of the vertices is refined until equitable (cells
//! split by neighbor counts into earlier cells, in ascending count order).
//! Non-discrete partitions branch on every vertex of the first non-singleton
//! cell. Among all leaves the relabeled graph with the lexicographically
//! smallest upper-triangle bit string wins. Branches are pruned by the orbits
//! of automorphisms discovered so far (twin transpositions up front, and
//! leaf-to-leaf coincidences as they appear).

use std::cmp::Ordering;

use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Canonical relabeling of a graph.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub graph: Graph,
    /// `labeling[v]` is the canonical label of vertex `v`.
    pub labeling: Vec<usize>,
}

/// Byte key that is equal for two graphs exactly when they are isomorphic:
/// the graph6 text of the canonical form.
pub fn canonical_key(g: &Graph) -> String {
    graph6::encode(&canonical_form(g).graph)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: twin_transpositions(g),
    };
    let mut prefix = Vec::new();
    search.descend(vec![g.vertices()], &mut prefix);
    let (labeling, graph) = search.best.expect("search visits at least one leaf");
    debug_assert_eq!(labeling.len(), n);
    CanonicalForm { graph, labeling }
}

/// Compares upper-triangle bit strings in graph6 order: column by column,
/// and within column `j` rows `0..j` ascending, with a set bit ranking above
/// a clear one.
pub fn compare_bitstrings(a: &Graph, b: &Graph) -> Ordering {
    debug_assert_eq!(a.order(), b.order());
    for j in 1..a.order() {
        let mask = (1u64 << j) - 1;
        let ca = a.neighbors(j).0 & mask;
        let cb = b.neighbors(j).0 & mask;
        let diff = ca ^ cb;
        if diff != 0 {
            let low = diff.trailing_zeros();
            return if ca >> low & 1 == 1 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<usize>, Graph)>,
    best: Option<(Vec<usize>, Graph)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<VertexSet>, prefix: &mut Vec<usize>) {
        let cells = refine(self.g, cells);
        if cells.len() == self.g.order() {
            self.leaf(&cells);
            return;
        }
        let k = cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[k];
        let mut explored: Vec<usize> = Vec::new();
        for w in target.iter() {
            if !explored.is_empty() {
                let mut orbits = self.stabilizer_orbits(prefix);
                let rw = orbits.find(w);
                if explored.iter().any(|&x| orbits.find(x) == rw) {
                    continue;
                }
            }
            explored.push(w);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..k]);
            next.push(VertexSet::singleton(w));
            next.push(target - VertexSet::singleton(w));
            next.extend_from_slice(&cells[k + 1..]);
            prefix.push(w);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[VertexSet]) {
        let mut labeling = vec![0; self.g.order()];
        for (i, c) in cells.iter().enumerate() {
            labeling[c.first().unwrap()] = i;
        }
        let h = self.g.permute(&labeling);
        match &self.first {
            None => {
                self.first = Some((labeling.clone(), h.clone()));
                self.best = Some((labeling, h));
                return;
            }
            Some((p, fg)) if *fg == h => {
                let gamma = automorphism(p, &labeling);
                self.autos.push(gamma);
            }
            _ => {}
        }
        let (bp, bg) = self.best.as_ref().unwrap();
        match compare_bitstrings(&h, bg) {
            Ordering::Less => self.best = Some((labeling, h)),
            Ordering::Equal => {
                let gamma = automorphism(bp, &labeling);
                self.autos.push(gamma);
            }
            Ordering::Greater => {}
        }
    }

    fn stabilizer_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.order());
        for gamma in &self.autos {
            if prefix.iter().all(|&v| gamma[v] == v) {
                for (v, &w) in gamma.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }
}

/// Given labelings with `p1(G) == p2(G)`, returns `p1⁻¹ ∘ p2`, an
/// automorphism of `G`.
fn automorphism(p1: &[usize], p2: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p1.len()];
    for (v, &l) in p1.iter().enumerate() {
        inv[l] = v;
    }
    p2.iter().map(|&l| inv[l]).collect()
}

/// Transpositions of vertices with identical neighborhoods outside the pair.
fn twin_transpositions(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut assigned = VertexSet::EMPTY;
    for u in 0..n {
        if assigned.contains(u) {
            continue;
        }
        let mut prev = u;
        for v in u + 1..n {
            if assigned.contains(v) {
                continue;
            }
            let pair = VertexSet::singleton(u) | VertexSet::singleton(v);
            if g.neighbors(u) - pair == g.neighbors(v) - pair {
                assigned.insert(v);
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(prev, v);
                out.push(t);
                prev = v;
            }
        }
    }
    out
}

/// Refines an ordered partition until it is equitable.
pub(crate) fn refine(g: &Graph, mut cells: Vec<VertexSet>) -> Vec<VertexSet> {
    let n = g.order();
    let mut buf: Vec<(u32, usize)> = Vec::with_capacity(n);
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cells.len() && cells.len() < n {
            let splitter = cells[i].0;
            let mut next = Vec::with_capacity(n);
            for &cell in &cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                buf.clear();
                buf.extend(
                    cell.iter()
                        .map(|v| ((g.neighbors(v).0 & splitter).count_ones(), v)),
                );
                buf.sort_unstable();
                let mut cur = VertexSet::EMPTY;
                let mut cur_count = buf[0].0;
                for &(c, v) in buf.iter() {
                    if c != cur_count {
                        next.push(cur);
                        cur = VertexSet::EMPTY;
                        cur_count = c;
                    }
                    cur.insert(v);
                }
                next.push(cur);
            }
            if next.len() != cells.len() {
                changed = true;
                cells = next;
            }
            i += 1;
        }
        if !changed || cells.len() == n {
            return cells;
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    g.link(u, v);
                }
                k += 1;
            }
        }
        g
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                let x = left.remove(i);
                cur.push(x);
                rec(cur, left, out);
                cur.pop();
                left.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    /// Brute-force canonical representative: minimum bit string over all
    /// relabelings.
    fn brute_canon(g: &Graph, perms: &[Vec<usize>]) -> String {
        perms
            .iter()
            .map(|p| graph6::encode(&g.permute(p)))
            .min()
            .unwrap()
    }

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(
            canonical_key(&a),
            canonical_key(&Graph::complete(3).unwrap())
        );
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        let perms = permutations(4);
        let mut keys = HashSet::new();
        let mut brute = HashSet::new();
        for mask in 0..64u64 {
            let g = graph_from_mask(4, mask);
            keys.insert(canonical_key(&g));
            brute.insert(brute_canon(&g, &perms));
        }
        assert_eq!(brute.len(), 11);
        assert_eq!(keys.len(), 11);
    }

    #[test]
    fn matches_brute_force_minimum_up_to_six_vertices() {
        // the canonical form is the lexicographic minimum over leaves of the
        // refinement tree, not over all n! labelings, so only the induced
        // partitions are compared here
        for (n, classes) in [(2usize, 2usize), (3, 4), (5, 34), (6, 156)] {
            let perms = permutations(n);
            let mut pairs: std::collections::HashMap<String, String> = Default::default();
            let mut back: std::collections::HashMap<String, String> = Default::default();
            for mask in 0..(1u64 << (n * (n - 1) / 2)) {
                let g = graph_from_mask(n, mask);
                let k = canonical_key(&g);
                let b = brute_canon(&g, &perms);
                assert_eq!(pairs.entry(k.clone()).or_insert(b.clone()), &b);
                assert_eq!(back.entry(b).or_insert(k.clone()), &k);
            }
            assert_eq!(pairs.len(), classes, "n = {n}");
        }
    }

    #[test]
    fn highly_symmetric_graphs_are_fast() {
        for n in [12, 20, 40, 64] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e).graph, e);
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k).graph, k);
        }
        // cycle C_12 and the Petersen graph
        let c12 =
            Graph::from_edges(12, &(0..12).map(|i| (i, (i + 1) % 12)).collect::<Vec<_>>()).unwrap();
        let shifted: Vec<usize> = (0..12).map(|i| (i * 5) % 12).collect();
        assert_eq!(canonical_key(&c12), canonical_key(&c12.permute(&shifted)));
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let p: Vec<usize> = vec![3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(
            canonical_key(&petersen),
            canonical_key(&petersen.permute(&p))
        );
    }

    #[test]
    fn labeling_maps_to_canonical_graph() {
        let g = Graph::from_edges(6, &[(0, 3), (3, 5), (5, 1), (2, 4)]).unwrap();
        let cf = canonical_form(&g);
        assert_eq!(g.permute(&cf.labeling), cf.graph);
    }
}
