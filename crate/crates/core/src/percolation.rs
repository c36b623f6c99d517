//! Bootstrap closure, weak saturation and saturation certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::pattern::{self, Pattern, Witness};

/// One edge addition together with the copy it completes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: Edge,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    pub final_graph: Graph,
    pub added: Vec<Step>,
    /// `final_graph` is complete.
    pub complete: bool,
}

/// Runs the bootstrap process to its fixed point.
///
/// Sweeps the missing edges in ascending index order, adding every edge
/// that completes a copy against the current graph, until a sweep adds
/// nothing. The result does not depend on the order (monotonicity), only
/// `added` does.
pub fn closure(g: &Graph, p: Pattern) -> Result<ClosureOutcome> {
    p.check_fits(g)?;
    let mut cur = g.clone();
    let mut added = Vec::new();
    loop {
        let before = added.len();
        let missing: Vec<Edge> = cur.missing_edges().collect();
        for e in missing {
            if let Some(w) = pattern::edge_completes(&cur, e, p)? {
                cur.link(e.u, e.v);
                added.push(Step {
                    edge: e,
                    witness: w,
                });
            }
        }
        if added.len() == before {
            break;
        }
    }
    let complete = cur.is_complete();
    Ok(ClosureOutcome {
        final_graph: cur,
        added,
        complete,
    })
}

/// Final graph of the closure, without witnesses.
pub fn closure_graph(g: &Graph, p: Pattern) -> Result<Graph> {
    p.check_fits(g)?;
    let mut cur = g.clone();
    close_in_place(&mut cur, p);
    Ok(cur)
}

pub(crate) fn close_in_place(cur: &mut Graph, p: Pattern) {
    loop {
        let mut progressed = false;
        let n = cur.order();
        let all = cur.vertices();
        for u in 0..n {
            let mut cand = all - cur.closed_neighbors(u) - VertexSet::full(u + 1);
            while let Some(v) = cand.first() {
                cand.remove(v);
                let e = Edge { u, v };
                if !cur.has_edge(u, v) && pattern::completes(cur, e, p) {
                    cur.link(u, v);
                    progressed = true;
                }
            }
        }
        if !progressed {
            return;
        }
    }
}

/// Pattern-free and closing to the complete graph.
pub fn is_weakly_saturated(g: &Graph, p: Pattern) -> Result<bool> {
    p.check_fits(g)?;
    Ok(saturates(g, p))
}

/// [`is_weakly_saturated`] without the size check.
pub(crate) fn saturates(g: &Graph, p: Pattern) -> bool {
    if pattern::has_copy(g, p) {
        return false;
    }
    let mut cur = g.clone();
    close_in_place(&mut cur, p);
    cur.is_complete()
}

/// Missing edges whose addition completes a copy right now, in edge-index
/// order.
pub fn addable_edges(g: &Graph, p: Pattern) -> Result<Vec<Step>> {
    p.check_fits(g)?;
    let mut out = Vec::new();
    for e in g.missing_edges() {
        if let Some(w) = pattern::edge_completes(g, e, p)? {
            out.push(Step {
                edge: e,
                witness: w,
            });
        }
    }
    Ok(out)
}

/// Base graph plus a witness-annotated addition order ending at `K_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub pattern: Pattern,
    pub base: Graph,
    pub steps: Vec<Step>,
}

/// Builds a certificate for a weakly saturated graph; the order is the
/// deterministic closure order.
pub fn extract_certificate(g: &Graph, p: Pattern) -> Result<Certificate> {
    p.check_fits(g)?;
    if pattern::contains(g, p)?.is_some() {
        return Err(Error::NotPatternFree);
    }
    let out = closure(g, p)?;
    if !out.complete {
        return Err(Error::ClosureIncomplete {
            final_edges: out.final_graph.edge_count(),
            pairs: g.pair_count(),
        });
    }
    Ok(Certificate {
        pattern: p,
        base: g.clone(),
        steps: out.added,
    })
}

/// First certificate invariant that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PatternTooLarge,
    BaseNotPatternFree,
    EdgeOutOfRange { step: usize },
    EdgeAlreadyPresent { step: usize },
    WitnessShape { step: usize },
    WitnessMissingEdge { step: usize },
    EdgeNotInWitness { step: usize },
    ClosureIncomplete { missing: usize },
}

impl Violation {
    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::PatternTooLarge => "pattern-too-large",
            Violation::BaseNotPatternFree => "base-not-pattern-free",
            Violation::EdgeOutOfRange { .. } => "edge-out-of-range",
            Violation::EdgeAlreadyPresent { .. } => "edge-already-present",
            Violation::WitnessShape { .. } => "witness-shape",
            Violation::WitnessMissingEdge { .. } => "witness-missing-edge",
            Violation::EdgeNotInWitness { .. } => "edge-not-in-witness",
            Violation::ClosureIncomplete { .. } => "closure-incomplete",
        }
    }

    pub fn step(&self) -> Option<usize> {
        match *self {
            Violation::EdgeOutOfRange { step }
            | Violation::EdgeAlreadyPresent { step }
            | Violation::WitnessShape { step }
            | Violation::WitnessMissingEdge { step }
            | Violation::EdgeNotInWitness { step } => Some(step),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BaseNotPatternFree => write!(f, "base not pattern-free"),
            Violation::ClosureIncomplete { missing } => {
                write!(f, "closure incomplete: {missing} pairs never added")
            }
            Violation::PatternTooLarge => write!(f, "pattern larger than base graph"),
            v => write!(f, "{} at step {}", v.code(), v.step().unwrap()),
        }
    }
}

/// Checks every certificate invariant directly: freeness of the base by
/// exhaustive subset enumeration, then each witness pair by pair against the
/// graph built so far. Does not call into the pattern finder or the closure.
pub fn verify_certificate(c: &Certificate) -> std::result::Result<(), Violation> {
    let n = c.base.order();
    if c.pattern.order() > n {
        return Err(Violation::PatternTooLarge);
    }
    if brute_contains(&c.base, c.pattern) {
        return Err(Violation::BaseNotPatternFree);
    }
    let mut cur = c.base.clone();
    for (i, step) in c.steps.iter().enumerate() {
        let e = step.edge;
        if e.u >= e.v || e.v >= n {
            return Err(Violation::EdgeOutOfRange { step: i });
        }
        if cur.has_edge(e.u, e.v) {
            return Err(Violation::EdgeAlreadyPresent { step: i });
        }
        if !step.witness.matches(c.pattern) || !step.witness.vertices().is_subset(cur.vertices()) {
            return Err(Violation::WitnessShape { step: i });
        }
        if !step.witness.uses_edge(e) {
            return Err(Violation::EdgeNotInWitness { step: i });
        }
        cur.link(e.u, e.v);
        if !witness_present(&cur, &step.witness) {
            return Err(Violation::WitnessMissingEdge { step: i });
        }
    }
    let missing = cur.pair_count() - cur.edge_count();
    if missing > 0 {
        return Err(Violation::ClosureIncomplete { missing });
    }
    Ok(())
}

fn witness_present(g: &Graph, w: &Witness) -> bool {
    match *w {
        Witness::Biclique { side_s, side_t } => {
            if !(side_s & side_t).is_empty() {
                return false;
            }
            for a in side_s.iter() {
                for b in side_t.iter() {
                    if !g.has_edge(a, b) {
                        return false;
                    }
                }
            }
            true
        }
        Witness::Clique { vertices } => {
            let vs = vertices.to_vec();
            vs.iter()
                .enumerate()
                .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        }
    }
}

/// Calls `f` on every `k`-subset of `items` (ascending) until it returns
/// true.
fn any_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Pattern containment by plain subset enumeration.
fn brute_contains(g: &Graph, p: Pattern) -> bool {
    let all: Vec<usize> = (0..g.order()).collect();
    match p {
        Pattern::Biclique(q) => any_subset(&all, q.s, &mut |s| {
            let rest: Vec<usize> = all.iter().copied().filter(|v| !s.contains(v)).collect();
            any_subset(&rest, q.t, &mut |t| {
                s.iter().all(|&a| t.iter().all(|&b| g.has_edge(a, b)))
            })
        }),
        Pattern::Clique(r) => any_subset(&all, r, &mut |c| {
            c.iter()
                .enumerate()
                .all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        }),
    }
}

/// Pattern copy through the missing edge `e` by plain subset enumeration.
fn brute_completes(g: &Graph, e: Edge, p: Pattern) -> bool {
    let mut h = g.clone();
    h.link(e.u, e.v);
    let all: Vec<usize> = (0..g.order()).collect();
    match p {
        Pattern::Biclique(q) => any_subset(&all, q.s, &mut |s| {
            let rest: Vec<usize> = all.iter().copied().filter(|v| !s.contains(v)).collect();
            any_subset(&rest, q.t, &mut |t| {
                let across = (s.contains(&e.u) && t.contains(&e.v))
                    || (s.contains(&e.v) && t.contains(&e.u));
                across && s.iter().all(|&a| t.iter().all(|&b| h.has_edge(a, b)))
            })
        }),
        Pattern::Clique(r) => any_subset(&all, r, &mut |c| {
            c.contains(&e.u)
                && c.contains(&e.v)
                && c.iter()
                    .enumerate()
                    .all(|(i, &a)| c[i + 1..].iter().all(|&b| h.has_edge(a, b)))
        }),
    }
}

/// Limit on missing edges for [`brute_force_is_weakly_saturated`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Weak saturation straight from the definition: the graph is pattern-free
/// and some ordering of all missing edges adds each one through a new copy.
///
/// Backtracks over orderings (memoizing dead sets of added edges); shares
/// no code with the closure engine or the pattern finder.
pub fn brute_force_is_weakly_saturated(g: &Graph, p: Pattern) -> Result<bool> {
    p.check_fits(g)?;
    let missing: Vec<Edge> = g.missing_edges().collect();
    if missing.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyMissingEdges {
            missing: missing.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if brute_contains(g, p) {
        return Ok(false);
    }
    let mut dead = vec![false; 1 << missing.len()];
    Ok(orderings(g, p, &missing, 0, &mut dead))
}

fn orderings(g: &Graph, p: Pattern, missing: &[Edge], used: usize, dead: &mut [bool]) -> bool {
    if used == (1 << missing.len()) - 1 {
        return true;
    }
    if dead[used] {
        return false;
    }
    let mut cur = g.clone();
    for (i, e) in missing.iter().enumerate() {
        if used >> i & 1 == 1 {
            cur.link(e.u, e.v);
        }
    }
    for (i, &e) in missing.iter().enumerate() {
        if used >> i & 1 == 0
            && brute_completes(&cur, e, p)
            && orderings(g, p, missing, used | 1 << i, dead)
        {
            return true;
        }
    }
    dead[used] = true;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn kst(s: usize, t: usize) -> Pattern {
        Pattern::kst(s, t).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn cp5() -> Graph {
        Graph::path(5).unwrap().complement()
    }

    #[test]
    fn closure_examples() {
        let out = closure(&cp5(), kst(2, 3)).unwrap();
        assert!(out.complete);
        assert_eq!(out.final_graph, Graph::complete(5).unwrap());
        assert_eq!(out.added.len(), 4);

        let k7 = Graph::complete(7).unwrap();
        let out = closure(&k7, kst(2, 4)).unwrap();
        assert!(out.added.is_empty() && out.complete);

        let e5 = Graph::empty(5).unwrap();
        let out = closure(&e5, kst(2, 3)).unwrap();
        assert_eq!(out.final_graph, e5);
        assert!(!out.complete);

        assert!(matches!(
            closure(&Graph::empty(3).unwrap(), kst(2, 2)),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn saturation_examples() {
        assert!(is_weakly_saturated(&cp5(), kst(2, 3)).unwrap());
        let g = Graph::path(3)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap()
            .complement();
        assert_eq!(g.edge_count(), 4);
        assert!(is_weakly_saturated(&g, kst(2, 2)).unwrap());
        assert!(!is_weakly_saturated(&Graph::complete(5).unwrap(), kst(2, 3)).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let c = extract_certificate(&cp5(), kst(2, 3)).unwrap();
        assert_eq!(c.steps.len(), 4);
        assert_eq!(c.steps[0].edge, e(1, 2));
        assert_eq!(
            c.steps[0].witness,
            Witness::Biclique {
                side_s: set(&[0, 1]),
                side_t: set(&[2, 3, 4])
            }
        );
        assert_eq!(verify_certificate(&c), Ok(()));

        assert_eq!(
            extract_certificate(&Graph::complete(5).unwrap(), kst(2, 3)),
            Err(Error::NotPatternFree)
        );
        assert!(matches!(
            extract_certificate(&Graph::empty(5).unwrap(), kst(2, 3)),
            Err(Error::ClosureIncomplete { .. })
        ));
    }

    #[test]
    fn verifier_catches_corruption() {
        let c = extract_certificate(&cp5(), kst(2, 3)).unwrap();
        // (0,1) is only addable once (1,2) and (2,3) are present
        let mut bad = c.clone();
        bad.steps.rotate_right(1);
        assert_eq!(bad.steps[0].edge, Edge::new(0, 1).unwrap());
        let v = verify_certificate(&bad).unwrap_err();
        assert_eq!(v.step(), Some(0));

        let mut bad = c.clone();
        bad.base = Graph::complete(5).unwrap();
        assert_eq!(verify_certificate(&bad), Err(Violation::BaseNotPatternFree));

        let mut bad = c.clone();
        bad.steps.clear();
        assert_eq!(
            verify_certificate(&bad),
            Err(Violation::ClosureIncomplete { missing: 4 })
        );

        let mut bad = c.clone();
        bad.steps.push(bad.steps[0]);
        assert_eq!(
            verify_certificate(&bad),
            Err(Violation::EdgeAlreadyPresent { step: 4 })
        );

        let mut bad = c;
        bad.steps[1].edge = bad.steps[2].edge;
        assert!(verify_certificate(&bad).is_err());
    }

    #[test]
    fn addable_examples() {
        let a = addable_edges(&cp5(), kst(2, 3)).unwrap();
        assert_eq!(a[0].edge, e(1, 2));
        assert!(addable_edges(&Graph::empty(4).unwrap(), kst(2, 2))
            .unwrap()
            .is_empty());
        let g = Graph::complete(4).unwrap().without_edge(e(1, 3)).unwrap();
        let a = addable_edges(&g, kst(1, 3)).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].edge, e(1, 3));
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_is_weakly_saturated(&cp5(), kst(2, 3)).unwrap());
        assert!(!brute_force_is_weakly_saturated(&Graph::empty(4).unwrap(), kst(2, 2)).unwrap());
        let p4 = Graph::path(4).unwrap();
        assert_eq!(
            brute_force_is_weakly_saturated(&p4, kst(1, 2)).unwrap(),
            is_weakly_saturated(&p4, kst(1, 2)).unwrap()
        );
        assert!(matches!(
            brute_force_is_weakly_saturated(&Graph::empty(6).unwrap(), kst(2, 2)),
            Err(Error::TooManyMissingEdges { .. })
        ));
    }

    #[test]
    fn cliques_follow_the_same_engine() {
        let p5 = Graph::path(5).unwrap();
        assert!(is_weakly_saturated(&p5, Pattern::Clique(3)).unwrap());
        let c = extract_certificate(&p5, Pattern::Clique(3)).unwrap();
        assert_eq!(verify_certificate(&c), Ok(()));
        assert!(!is_weakly_saturated(&Graph::empty(4).unwrap(), Pattern::Clique(3)).unwrap());
    }

    #[test]
    fn closure_graph_agrees_with_closure() {
        for g in [cp5(), Graph::path(6).unwrap(), Graph::empty(5).unwrap()] {
            for p in [kst(1, 2), kst(2, 2), kst(2, 3), Pattern::Clique(3)] {
                assert_eq!(
                    closure_graph(&g, p).unwrap(),
                    closure(&g, p).unwrap().final_graph
                );
            }
        }
    }
}
