//! Detection of complete bipartite patterns `K_{s,t}` (and cliques `K_r`,
//! used for the classical cross-checks), including the test "does adding
//! `e` create a copy through `e`" that drives percolation.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet, MAX_VERTICES};

/// The pair `(s, t)` naming `K_{s,t}`, with `1 <= s <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternSpec {
    pub s: usize,
    pub t: usize,
}

impl PatternSpec {
    /// `K_{s,t}`; the sides are reordered so that `s <= t`.
    pub fn new(s: usize, t: usize) -> Result<PatternSpec> {
        let (s, t) = (s.min(t), s.max(t));
        if s == 0 {
            return Err(Error::InvalidPattern("both sides must be non-empty".into()));
        }
        if s + t > MAX_VERTICES {
            return Err(Error::InvalidPattern(format!(
                "K_{{{s},{t}}} exceeds 64 vertices"
            )));
        }
        Ok(PatternSpec { s, t })
    }

    pub fn order(self) -> usize {
        self.s + self.t
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}}", self.s, self.t)
    }
}

/// A target graph for weak saturation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Biclique(PatternSpec),
    /// `K_r`, `r >= 2`.
    Clique(usize),
}

impl Pattern {
    pub fn kst(s: usize, t: usize) -> Result<Pattern> {
        PatternSpec::new(s, t).map(Pattern::Biclique)
    }

    pub fn clique(r: usize) -> Result<Pattern> {
        if !(2..=MAX_VERTICES).contains(&r) {
            return Err(Error::InvalidPattern(format!("K_{r} needs 2 <= r <= 64")));
        }
        Ok(Pattern::Clique(r))
    }

    /// Number of vertices of the pattern graph.
    pub fn order(self) -> usize {
        match self {
            Pattern::Biclique(p) => p.order(),
            Pattern::Clique(r) => r,
        }
    }

    /// Minimum degree of the pattern graph.
    pub fn min_degree(self) -> usize {
        match self {
            Pattern::Biclique(p) => p.s,
            Pattern::Clique(r) => r - 1,
        }
    }

    pub fn as_biclique(self) -> Option<PatternSpec> {
        match self {
            Pattern::Biclique(p) => Some(p),
            Pattern::Clique(_) => None,
        }
    }

    pub(crate) fn check_fits(self, g: &Graph) -> Result<()> {
        if self.order() > g.order() {
            Err(Error::PatternTooLarge {
                pattern: self.order(),
                order: g.order(),
            })
        } else {
            Ok(())
        }
    }
}

impl From<PatternSpec> for Pattern {
    fn from(p: PatternSpec) -> Pattern {
        Pattern::Biclique(p)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Biclique(p) => p.fmt(f),
            Pattern::Clique(r) => write!(f, "K_{r}"),
        }
    }
}

/// A concrete copy of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Disjoint sides with every cross pair adjacent; `|side_s| = s`,
    /// `|side_t| = t`.
    Biclique {
        side_s: VertexSet,
        side_t: VertexSet,
    },
    Clique {
        vertices: VertexSet,
    },
}

impl Witness {
    /// Whether the copy is present in `g`, checked pair by pair.
    pub fn holds_in(&self, g: &Graph) -> bool {
        match *self {
            Witness::Biclique { side_s, side_t } => {
                (side_s & side_t).is_empty()
                    && side_s.iter().all(|a| side_t.is_subset(g.neighbors(a)))
            }
            Witness::Clique { vertices } => vertices
                .iter()
                .all(|a| (vertices - VertexSet::singleton(a)).is_subset(g.neighbors(a))),
        }
    }

    /// Whether `e` is one of the pattern's edges in this copy.
    pub fn uses_edge(&self, e: Edge) -> bool {
        match *self {
            Witness::Biclique { side_s, side_t } => {
                (side_s.contains(e.u) && side_t.contains(e.v))
                    || (side_s.contains(e.v) && side_t.contains(e.u))
            }
            Witness::Clique { vertices } => vertices.contains(e.u) && vertices.contains(e.v),
        }
    }

    /// Whether the side sizes match `p`.
    pub fn matches(&self, p: Pattern) -> bool {
        match (*self, p) {
            (Witness::Biclique { side_s, side_t }, Pattern::Biclique(q)) => {
                side_s.len() == q.s && side_t.len() == q.t
            }
            (Witness::Clique { vertices }, Pattern::Clique(r)) => vertices.len() == r,
            _ => false,
        }
    }

    pub fn vertices(&self) -> VertexSet {
        match *self {
            Witness::Biclique { side_s, side_t } => side_s | side_t,
            Witness::Clique { vertices } => vertices,
        }
    }
}

/// Orders witnesses by their sorted vertex lists, side `s` first.
fn witness_key(w: &Witness) -> (Vec<usize>, Vec<usize>) {
    match *w {
        Witness::Biclique { side_s, side_t } => (side_s.to_vec(), side_t.to_vec()),
        Witness::Clique { vertices } => (vertices.to_vec(), Vec::new()),
    }
}

fn min_witness(a: Option<Witness>, b: Option<Witness>) -> Option<Witness> {
    match (a, b) {
        (Some(x), Some(y)) => match witness_key(&x).cmp(&witness_key(&y)) {
            Ordering::Greater => Some(y),
            _ => Some(x),
        },
        (x, None) => x,
        (None, y) => y,
    }
}

/// Finds a copy of `K_{s,t}` in `g`, returning the lexicographically
/// smallest one.
pub fn contains_kst(g: &Graph, p: PatternSpec) -> Result<Option<Witness>> {
    contains(g, p.into())
}

pub fn is_kst_free(g: &Graph, p: PatternSpec) -> Result<bool> {
    Ok(contains_kst(g, p)?.is_none())
}

/// Finds a copy of `p` in `g` (smallest under sorted-vertex-list order).
pub fn contains(g: &Graph, p: Pattern) -> Result<Option<Witness>> {
    p.check_fits(g)?;
    Ok(match p {
        Pattern::Biclique(q) => find_biclique(g, q, g.vertices(), VertexSet::EMPTY, None),
        Pattern::Clique(r) => find_clique(g, g.vertices(), VertexSet::EMPTY, r)
            .map(|vertices| Witness::Clique { vertices }),
    })
}

pub fn is_free(g: &Graph, p: Pattern) -> Result<bool> {
    Ok(contains(g, p)?.is_none())
}

/// Whether `g` contains `p`, without building a witness. Hot path of the
/// exhaustive search.
pub(crate) fn has_copy(g: &Graph, p: Pattern) -> bool {
    match p {
        Pattern::Biclique(q) if q.s == 1 => (0..g.order()).any(|v| g.degree(v) >= q.t),
        Pattern::Biclique(q) if q.s == 2 => {
            let n = g.order();
            (0..n).any(|a| (a + 1..n).any(|b| g.common_neighbors(a, b).len() >= q.t))
        }
        Pattern::Biclique(q) => find_biclique(g, q, g.vertices(), VertexSet::EMPTY, None).is_some(),
        Pattern::Clique(r) => find_clique(g, g.vertices(), VertexSet::EMPTY, r).is_some(),
    }
}

/// Backtracks over side `S` in lexicographic order of sorted lists.
///
/// `candidates` are the vertices still allowed in `S` (all larger than the
/// ones chosen), `chosen` is the current partial `S`. With `through = Some(
/// (x, y))` the side must contain `x` and the common neighborhood must
/// contain `y` (used to force the new edge `xy` across the copy).
fn find_biclique(
    g: &Graph,
    p: PatternSpec,
    candidates: VertexSet,
    chosen: VertexSet,
    through: Option<(usize, usize)>,
) -> Option<Witness> {
    let common = chosen
        .iter()
        .fold(g.vertices(), |acc, z| acc & g.neighbors(z));
    if let Some((_, y)) = through {
        if !chosen.is_empty() && !common.contains(y) {
            return None;
        }
    }
    if chosen.len() == p.s {
        if let Some((x, _)) = through {
            if !chosen.contains(x) {
                return None;
            }
        }
        if common.len() < p.t {
            return None;
        }
        let side_t = match through {
            Some((_, y)) => {
                VertexSet::singleton(y) | (common - VertexSet::singleton(y)).smallest(p.t - 1)
            }
            None => common.smallest(p.t),
        };
        return Some(Witness::Biclique {
            side_s: chosen,
            side_t,
        });
    }
    if !chosen.is_empty() && common.len() < p.t {
        return None;
    }
    for v in candidates.iter() {
        if let Some((x, _)) = through {
            // x must still be reachable in ascending order
            if v > x && !chosen.contains(x) {
                break;
            }
        }
        let rest = VertexSet(candidates.0 & !((2u64 << v) - 1));
        if let Some(w) = find_biclique(g, p, rest, chosen | VertexSet::singleton(v), through) {
            return Some(w);
        }
    }
    None
}

/// Lexicographically smallest `k`-clique inside `candidates` extending
/// `chosen` (every candidate is adjacent to all of `chosen`).
fn find_clique(g: &Graph, candidates: VertexSet, chosen: VertexSet, k: usize) -> Option<VertexSet> {
    if chosen.len() == k {
        return Some(chosen);
    }
    if chosen.len() + candidates.len() < k {
        return None;
    }
    for v in candidates.iter() {
        let rest = VertexSet(candidates.0 & !((2u64 << v) - 1)) & g.neighbors(v);
        if let Some(c) = find_clique(g, rest, chosen | VertexSet::singleton(v), k) {
            return Some(c);
        }
    }
    None
}

fn check_missing(g: &Graph, e: Edge) -> Result<()> {
    if e.v >= g.order() {
        return Err(crate::error::GraphError::VertexOutOfRange {
            vertex: e.v,
            order: g.order(),
        }
        .into());
    }
    if g.contains_edge(e) {
        return Err(Error::EdgePresent(e));
    }
    Ok(())
}

/// If adding the missing edge `e` to `g` creates a copy of `K_{s,t}` that
/// uses `e`, returns the smallest such copy (valid in `g + e`).
pub fn edge_completes_kst(g: &Graph, e: Edge, p: PatternSpec) -> Result<Option<Witness>> {
    edge_completes(g, e, p.into())
}

/// Pattern-generic form of [`edge_completes_kst`]; dispatches to the `s = 1`
/// and `s = 2` fast paths.
pub fn edge_completes(g: &Graph, e: Edge, p: Pattern) -> Result<Option<Witness>> {
    p.check_fits(g)?;
    check_missing(g, e)?;
    Ok(match p {
        Pattern::Biclique(q) if q.s == 1 => star_completion(g, e, q.t),
        Pattern::Biclique(q) if q.s == 2 => k2t_completion(g, e, q.t),
        Pattern::Biclique(q) => generic_completion(g, e, q),
        Pattern::Clique(r) => clique_completion(g, e, r),
    })
}

/// Subset-search implementation of [`edge_completes_kst`], valid for every
/// `s`; the fast paths must agree with it.
pub fn edge_completes_kst_generic(g: &Graph, e: Edge, p: PatternSpec) -> Result<Option<Witness>> {
    Pattern::Biclique(p).check_fits(g)?;
    check_missing(g, e)?;
    Ok(generic_completion(g, e, p))
}

fn generic_completion(g: &Graph, e: Edge, p: PatternSpec) -> Option<Witness> {
    let h = g.with_edge(e).expect("edge endpoints checked");
    let mut best = None;
    for (x, y) in [(e.u, e.v), (e.v, e.u)] {
        // S \ {x} must lie in N(y) of the original graph
        let cands = g.neighbors(y) | VertexSet::singleton(x);
        best = min_witness(
            best,
            find_biclique(&h, p, cands, VertexSet::EMPTY, Some((x, y))),
        );
    }
    best
}

/// `K_{1,t}` through `uv` exists iff `deg(u) >= t-1` or `deg(v) >= t-1`.
fn star_completion(g: &Graph, e: Edge, t: usize) -> Option<Witness> {
    for (x, y) in [(e.u, e.v), (e.v, e.u)] {
        if g.degree(x) + 1 >= t {
            return Some(Witness::Biclique {
                side_s: VertexSet::singleton(x),
                side_t: VertexSet::singleton(y) | g.neighbors(x).smallest(t - 1),
            });
        }
    }
    None
}

/// `K_{2,t}` through `xy`: some `b ∈ N(y)` with `|N(x) ∩ N(b)| >= t-1`
/// (here `y ∉ N(x)`), with `S = {x, b}`.
fn k2t_completion(g: &Graph, e: Edge, t: usize) -> Option<Witness> {
    let mut best = None;
    for (x, y) in [(e.u, e.v), (e.v, e.u)] {
        for b in g.neighbors(y).iter() {
            let common = g.common_neighbors(x, b);
            if common.len() + 1 >= t {
                let w = Witness::Biclique {
                    side_s: VertexSet::singleton(x) | VertexSet::singleton(b),
                    side_t: VertexSet::singleton(y) | common.smallest(t - 1),
                };
                best = min_witness(best, Some(w));
            }
        }
    }
    best
}

fn clique_completion(g: &Graph, e: Edge, r: usize) -> Option<Witness> {
    let pair = VertexSet::singleton(e.u) | VertexSet::singleton(e.v);
    find_clique(g, g.common_neighbors(e.u, e.v), VertexSet::EMPTY, r - 2).map(|rest| {
        Witness::Clique {
            vertices: rest | pair,
        }
    })
}

/// Whether adding the missing edge `e` creates a copy through it, without
/// building a witness.
pub(crate) fn completes(g: &Graph, e: Edge, p: Pattern) -> bool {
    match p {
        Pattern::Biclique(q) if q.s == 1 => g.degree(e.u) + 1 >= q.t || g.degree(e.v) + 1 >= q.t,
        Pattern::Biclique(q) if q.s == 2 => {
            let t1 = q.t as u32 - 1;
            [(e.u, e.v), (e.v, e.u)].into_iter().any(|(x, y)| {
                let nx = g.neighbors(x).0;
                g.neighbors(y)
                    .iter()
                    .any(|b| (nx & g.neighbors(b).0).count_ones() >= t1)
            })
        }
        Pattern::Biclique(q) => generic_completion(g, e, q).is_some(),
        Pattern::Clique(r) => {
            find_clique(g, g.common_neighbors(e.u, e.v), VertexSet::EMPTY, r - 2).is_some()
        }
    }
}

/// Pair test for `K_{2,t}`: if `|N(a,b)| >= t-1` and the neighborhoods of
/// `a` and `b` differ outside the pair, returns a missing edge `bc` or `ac`
/// whose addition creates `K_{2,t}` through it (`c` minimal).
pub fn addability_pair_criterion(g: &Graph, a: usize, b: usize, t: usize) -> Option<Edge> {
    if a == b || t == 0 || g.common_neighbors(a, b).len() + 1 < t {
        return None;
    }
    let only_a = g.neighbors(a) - g.closed_neighbors(b);
    let only_b = g.neighbors(b) - g.closed_neighbors(a);
    let c = (only_a | only_b).first()?;
    let other = if only_a.contains(c) { b } else { a };
    Edge::new(other, c).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn p(s: usize, t: usize) -> PatternSpec {
        PatternSpec::new(s, t).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn k23() -> Graph {
        Graph::empty(2)
            .unwrap()
            .join(&Graph::empty(3).unwrap())
            .unwrap()
    }

    #[test]
    fn sides_normalize() {
        assert_eq!(PatternSpec::new(3, 2).unwrap(), p(2, 3));
        assert!(PatternSpec::new(0, 3).is_err());
        assert!(PatternSpec::new(30, 40).is_err());
    }

    #[test]
    fn containment() {
        let k4 = Graph::complete(4).unwrap();
        let w = contains_kst(&k4, p(2, 2)).unwrap().unwrap();
        assert!(w.holds_in(&k4));
        assert_eq!(
            w,
            Witness::Biclique {
                side_s: set(&[0, 1]),
                side_t: set(&[2, 3])
            }
        );
        assert!(contains_kst(&Graph::path(5).unwrap(), p(2, 2))
            .unwrap()
            .is_none());
        assert_eq!(
            contains_kst(&k23(), p(2, 3)).unwrap(),
            Some(Witness::Biclique {
                side_s: set(&[0, 1]),
                side_t: set(&[2, 3, 4])
            })
        );
        assert!(matches!(
            contains_kst(&Graph::complete(4).unwrap(), p(2, 3)),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn freeness() {
        let cp5 = Graph::path(5).unwrap().complement();
        assert!(is_kst_free(&cp5, p(2, 3)).unwrap());
        assert!(!is_kst_free(&Graph::complete(5).unwrap(), p(2, 3)).unwrap());
        assert!(is_kst_free(&Graph::empty(6).unwrap(), p(1, 1)).unwrap());
    }

    #[test]
    fn completion_examples() {
        let cp5 = Graph::path(5).unwrap().complement();
        assert_eq!(
            edge_completes_kst(&cp5, e(1, 2), p(2, 3)).unwrap(),
            Some(Witness::Biclique {
                side_s: set(&[0, 1]),
                side_t: set(&[2, 3, 4])
            })
        );
        let empty = Graph::empty(5).unwrap();
        for ed in empty.missing_edges() {
            assert!(edge_completes_kst(&empty, ed, p(2, 3)).unwrap().is_none());
        }
        let g = Graph::complete(5).unwrap().without_edge(e(0, 1)).unwrap();
        assert_eq!(
            edge_completes_kst(&g, e(0, 1), p(1, 4)).unwrap(),
            Some(Witness::Biclique {
                side_s: set(&[0]),
                side_t: set(&[1, 2, 3, 4])
            })
        );
        assert!(matches!(
            edge_completes_kst(&cp5, e(0, 2), p(2, 3)),
            Err(Error::EdgePresent(_))
        ));
    }

    #[test]
    fn pair_criterion_examples() {
        assert_eq!(addability_pair_criterion(&k23(), 0, 1, 3), None);
        let mut g = Graph::empty(6).unwrap();
        for ed in k23().edges() {
            g.add_edge(ed).unwrap();
        }
        g.add_edge(e(2, 5)).unwrap();
        assert_eq!(g.common_neighbors(0, 5).to_vec(), vec![2]);
        assert_eq!(addability_pair_criterion(&g, 0, 5, 3), None);
    }

    #[test]
    fn clique_detection() {
        let k4 = Graph::complete(4).unwrap();
        let w = contains(&k4, Pattern::Clique(3)).unwrap().unwrap();
        assert_eq!(
            w,
            Witness::Clique {
                vertices: set(&[0, 1, 2])
            }
        );
        assert!(is_free(&Graph::path(5).unwrap(), Pattern::Clique(3)).unwrap());
        let p4 = Graph::path(4).unwrap();
        let w = edge_completes(&p4, e(0, 2), Pattern::Clique(3))
            .unwrap()
            .unwrap();
        assert!(w.holds_in(&p4.with_edge(e(0, 2)).unwrap()));
        assert!(edge_completes(&p4, e(0, 3), Pattern::Clique(3))
            .unwrap()
            .is_none());
    }
}
