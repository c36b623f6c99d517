//! Generators for the graph families behind the upper bounds, with fixed
//! vertex labelings and, where one is known, an explicit saturation order.

use crate::error::{Error, GraphError, Result};
use crate::graph::{Edge, Graph, VertexSet, MAX_VERTICES};
use crate::pattern::{Pattern, Witness};
use crate::percolation::{Certificate, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Complement of the path `P_{s+t}`.
    ComplementPath,
    /// Complement of `P_{s+t-1} ⊔ K_1`.
    ComplementPathUnionK1,
    /// Clique `K_{t-1}`, two hubs on the clique, a pendant on one hub and
    /// `n-t-2` leaves on one clique vertex.
    Gnt,
    /// Clique `X`, complete to `Y`, and `Y` complete to `Z`.
    Xyz,
    /// Clique `X` complete to `Y1 ∪ Y2`, and `Z` complete to `Y1`.
    H,
    /// `K_{r-2} ∨ \bar K_{n-r+2}`.
    CliqueJoin,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ComplementPath => "complement-path",
            Family::ComplementPathUnionK1 => "complement-path-union-k1",
            Family::Gnt => "gnt",
            Family::Xyz => "xyz",
            Family::H => "h",
            Family::CliqueJoin => "clique-join",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        [
            Family::ComplementPath,
            Family::ComplementPathUnionK1,
            Family::Gnt,
            Family::Xyz,
            Family::H,
            Family::CliqueJoin,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub family: Family,
    pub params: Vec<(&'static str, usize)>,
    /// Pattern the suggested order saturates, if any.
    pub pattern: Option<Pattern>,
    /// Addition order of the missing edges taken from the constructive
    /// argument for the family.
    pub suggested_order: Option<Vec<Step>>,
}

impl FamilyInstance {
    /// The suggested order packaged as a certificate.
    pub fn certificate(&self) -> Option<Certificate> {
        Some(Certificate {
            pattern: self.pattern?,
            base: self.graph.clone(),
            steps: self.suggested_order.clone()?,
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn edge(a: usize, b: usize) -> Edge {
    Edge::new(a, b).expect("distinct labels")
}

fn check_sizes(s: usize, t: usize) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParameters("s and t must be positive".into()));
    }
    if s + t > MAX_VERTICES {
        return Err(GraphError::Capacity(s + t).into());
    }
    Ok(())
}

/// Builds `K_{s,t}` witness steps, swapping sides when `s > t` so the
/// step matches the normalized pattern.
fn biclique_step(e: Edge, side_s: VertexSet, side_t: VertexSet) -> Step {
    let (side_s, side_t) = if side_s.len() <= side_t.len() {
        (side_s, side_t)
    } else {
        (side_t, side_s)
    };
    Step {
        edge: e,
        witness: Witness::Biclique { side_s, side_t },
    }
}

/// Complement of the path `0 - 1 - ... - (s+t-1)`.
///
/// For coprime `s, t` the suggested order starts with the only missing edge
/// `(s-1, s)` across `A = {0..s}`, `B = {s..s+t}`, then saturates `B` by the
/// same construction for `(s, t-s)` (each step lifted by adding `A` to the
/// larger side), then adds the remaining path edges inside `A`.
pub fn complement_path(s: usize, t: usize) -> Result<FamilyInstance> {
    check_sizes(s, t)?;
    let graph = Graph::path(s + t)?.complement();
    let (pattern, suggested_order) = if gcd(s, t) == 1 {
        let labels: Vec<usize> = (0..s + t).collect();
        let mut raw = Vec::new();
        coprime_order(&labels, s, t, &mut raw);
        let steps = raw
            .into_iter()
            .map(|(e, a, b)| biclique_step(e, a, b))
            .collect();
        (Some(Pattern::kst(s, t)?), Some(steps))
    } else {
        (None, None)
    };
    Ok(FamilyInstance {
        graph,
        family: Family::ComplementPath,
        params: vec![("s", s), ("t", t)],
        pattern,
        suggested_order,
    })
}

/// Saturation order for the complement of the path through `labels`
/// (in path order), with sides of sizes `a` and `b`. Emits
/// `(edge, side of size a, side of size b)`.
fn coprime_order(
    labels: &[usize],
    a: usize,
    b: usize,
    out: &mut Vec<(Edge, VertexSet, VertexSet)>,
) {
    debug_assert_eq!(labels.len(), a + b);
    if a > b {
        let rev: Vec<usize> = labels.iter().rev().copied().collect();
        let mut sub = Vec::new();
        coprime_order(&rev, b, a, &mut sub);
        out.extend(sub.into_iter().map(|(e, x, y)| (e, y, x)));
        return;
    }
    let side = |r: &[usize]| r.iter().copied().collect::<VertexSet>();
    let a_set = side(&labels[..a]);
    out.push((edge(labels[a - 1], labels[a]), a_set, side(&labels[a..])));
    if b > a {
        let mut sub = Vec::new();
        coprime_order(&labels[a..], a, b - a, &mut sub);
        out.extend(sub.into_iter().map(|(e, c, d)| (e, c, a_set | d)));
    }
    for i in 1..a {
        let left = side(&labels[..i]) | side(&labels[a..2 * a - i]);
        let right = side(&labels[i..a]) | side(&labels[2 * a - i..]);
        out.push((edge(labels[i - 1], labels[i]), left, right));
    }
}

/// Complement of `P_{s+t-1} ⊔ K_1`: path on `0..s+t-1`, vertex `s+t-1`
/// adjacent to everything.
///
/// Suggested order (1-based `e_i` on path vertices `v_i = i-1`):
/// `e_1 = v_s v_{s+1}`, `e_i = v_{i-1} v_i` for `2 <= i <= s`,
/// `e_i = v_i v_{i+1}` for `s+1 <= i <= s+t-2`; the step for `e_{i+1}` uses
/// side `A_i` with `A = {v_1..v_s}`, `A_0 = A`,
/// `A_i = A - v_i + v_{s+t}` for `i < s` and `A_i = A - v_1 + v_{i+1}` after.
pub fn complement_path_union_k1(s: usize, t: usize) -> Result<FamilyInstance> {
    check_sizes(s, t)?;
    let n = s + t;
    let graph = Graph::path(n - 1)?
        .disjoint_union(&Graph::empty(1)?)?
        .complement();
    let v = |i: usize| i - 1;
    let all = VertexSet::full(n);
    let a: VertexSet = (1..=s).map(v).collect();
    let with = |base: VertexSet, out: usize, inn: usize| {
        (base - VertexSet::singleton(v(out))) | VertexSet::singleton(v(inn))
    };
    let mut steps = Vec::new();
    if n >= 3 {
        let side = |ai: VertexSet, e: Edge| biclique_step(e, ai, all - ai);
        steps.push(side(a, edge(v(s), v(s + 1))));
        for i in 2..=s {
            steps.push(side(with(a, i - 1, n), edge(v(i - 1), v(i))));
        }
        for i in s + 1..=n - 2 {
            steps.push(side(with(a, 1, i), edge(v(i), v(i + 1))));
        }
    }
    Ok(FamilyInstance {
        graph,
        family: Family::ComplementPathUnionK1,
        params: vec![("s", s), ("t", t)],
        pattern: Some(Pattern::kst(s, t)?),
        suggested_order: Some(steps),
    })
}

/// The family `G_{n,t}`, labeled as: clique `0..t-1` with distinguished
/// vertex `c = t-2`; hubs `t-1` and `t` joined to the whole clique; pendant
/// `t+1` on hub `t-1`; leaves `t+2..n` on `c`. Has `n - 2 + C(t,2)` edges.
pub fn gnt(n: usize, t: usize) -> Result<FamilyInstance> {
    if t < 3 || n < t + 2 {
        return Err(Error::InvalidParameters(format!(
            "gnt needs t >= 3 and n >= t + 2, got n = {n}, t = {t}"
        )));
    }
    let mut g = Graph::empty(n)?;
    let c = t - 2;
    for a in 0..t - 1 {
        for b in a + 1..t - 1 {
            g.link(a, b);
        }
        g.link(a, t - 1);
        g.link(a, t);
    }
    g.link(t - 1, t + 1);
    for leaf in t + 2..n {
        g.link(c, leaf);
    }
    Ok(FamilyInstance {
        graph: g,
        family: Family::Gnt,
        params: vec![("n", n), ("t", t)],
        pattern: None,
        suggested_order: None,
    })
}

/// Adds vertex `n` adjacent exactly to `targets`.
pub fn pendant_extend(g: &Graph, targets: &[usize]) -> Result<Graph> {
    let n = g.order();
    let mut h = g.disjoint_union(&Graph::empty(1)?)?;
    for &x in targets {
        if x >= n {
            return Err(GraphError::VertexOutOfRange {
                vertex: x,
                order: n,
            }
            .into());
        }
        h.link(x, n);
    }
    Ok(h)
}

/// `X = 0..x` a clique, `Y = x..x+y`, `Z = x+y..x+y+z`; edges `X–X`, `X–Y`,
/// `Y–Z`.
pub fn xyz_graph(x: usize, y: usize, z: usize) -> Result<FamilyInstance> {
    if x < 2 || y < 1 {
        return Err(Error::InvalidParameters(format!(
            "xyz needs x >= 2 and y >= 1, got ({x}, {y}, {z})"
        )));
    }
    let mut inst = h_graph(x, y, 0, z)?;
    inst.family = Family::Xyz;
    inst.params = vec![("x", x), ("y", y), ("z", z)];
    Ok(inst)
}

/// Blocks labeled in order `X, Y1, Y2, Z`: `X` a clique complete to
/// `Y1 ∪ Y2`, `Z` complete to `Y1`, nothing else.
pub fn h_graph(x: usize, y1: usize, y2: usize, z: usize) -> Result<FamilyInstance> {
    if x < 1 {
        return Err(Error::InvalidParameters("h needs x >= 1".into()));
    }
    let n = x + y1 + y2 + z;
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n).into());
    }
    let mut g = Graph::empty(n)?;
    let xs = 0..x;
    let y1s = x..x + y1;
    let y2s = x + y1..x + y1 + y2;
    let zs = x + y1 + y2..n;
    for a in xs.clone() {
        for b in a + 1..x {
            g.link(a, b);
        }
        for b in y1s.clone().chain(y2s.clone()) {
            g.link(a, b);
        }
    }
    for a in zs {
        for b in y1s.clone() {
            g.link(a, b);
        }
    }
    Ok(FamilyInstance {
        graph: g,
        family: Family::H,
        params: vec![("x", x), ("y1", y1), ("y2", y2), ("z", z)],
        pattern: None,
        suggested_order: None,
    })
}

/// `K_{r-2} ∨ \bar K_{n-r+2}`, with `(r-2)n - C(r-1, 2)` edges.
pub fn clique_join(n: usize, r: usize) -> Result<FamilyInstance> {
    if r < 2 || n < r {
        return Err(Error::InvalidParameters(format!(
            "clique-join needs 2 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    let graph = if r == 2 {
        Graph::empty(n)?
    } else {
        Graph::complete(r - 2)?.join(&Graph::empty(n - r + 2)?)?
    };
    Ok(FamilyInstance {
        graph,
        family: Family::CliqueJoin,
        params: vec![("n", n), ("r", r)],
        pattern: Some(Pattern::clique(r)?),
        suggested_order: None,
    })
}
