//! Exact weak saturation numbers by exhaustive enumeration, and the closed
//! forms they are checked against.
//!
//! Level `m` enumerates every `m`-subset of the `C(n,2)` vertex pairs in
//! lexicographic order of pair indices. The space is cut into work units by
//! the first two chosen indices; units run on a rayon pool and their
//! findings (canonical keys of saturated graphs) are merged as sets, so the
//! outcome does not depend on scheduling or on the dedup flag. Isomorphism
//! rejection is local to a unit, which keeps the `tested` counts independent
//! of the worker count too.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6;
use crate::pattern::{self, Pattern};
use crate::percolation::{self, Certificate};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub pattern: Pattern,
    pub m_lo: usize,
    pub m_hi: usize,
    /// Skip isomorphic copies of already tested graphs (per work unit).
    pub dedup: bool,
    /// Skip disconnected graphs. Only honored for `K_{2,t}`.
    pub prune_connected: bool,
    pub workers: usize,
}

impl SearchConfig {
    /// Full edge range, dedup on, pruning off, one worker per core.
    pub fn new(n: usize, pattern: Pattern) -> SearchConfig {
        SearchConfig {
            n,
            pattern,
            m_lo: 0,
            m_hi: n * n.saturating_sub(1) / 2,
            dedup: true,
            prune_connected: false,
            workers: std::thread::available_parallelism().map_or(1, |c| c.get()),
        }
    }

    pub fn with_range(mut self, m_lo: usize, m_hi: usize) -> Self {
        self.m_lo = m_lo;
        self.m_hi = m_hi;
        self
    }

    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_prune_connected(mut self, prune: bool) -> Self {
        self.prune_connected = prune;
        self
    }

    pub fn pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn validate(&self) -> Result<()> {
        Graph::empty(self.n)?;
        if self.pattern.order() > self.n {
            return Err(Error::PatternTooLarge {
                pattern: self.pattern.order(),
                order: self.n,
            });
        }
        if self.m_lo > self.m_hi || self.m_hi > self.pairs() {
            return Err(Error::InvalidParameters(format!(
                "edge range {}..={} invalid for n = {}",
                self.m_lo, self.m_hi, self.n
            )));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameters("need at least one worker".into()));
        }
        Ok(())
    }

    fn prunes_disconnected(&self) -> bool {
        self.prune_connected && matches!(self.pattern, Pattern::Biclique(p) if p.s == 2)
    }
}

/// Everything found at one edge count.
#[derive(Debug, Clone, Default)]
pub struct LevelOutcome {
    pub m: usize,
    /// Canonical keys of the weakly saturated graphs with `m` edges.
    pub found: BTreeSet<String>,
    /// Graphs that reached the closure test.
    pub tested: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct WsatResult {
    /// Minimum edge count, or `None` if nothing in the range qualifies.
    pub value: Option<usize>,
    /// Minimum witness with the smallest canonical key (canonical form).
    pub witness: Option<Graph>,
    /// Every minimum witness up to isomorphism, in canonical form, sorted by
    /// key.
    pub all_witnesses: Vec<Graph>,
    pub graphs_tested: u64,
    pub certificate: Option<Certificate>,
    pub levels: Vec<LevelOutcome>,
}

/// Scans level `m` completely.
pub fn scan_level(cfg: &SearchConfig, m: usize) -> Result<LevelOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let n = cfg.n;
    let pairs: Vec<Edge> = (0..cfg.pairs()).map(|i| Edge::from_index(i, n)).collect();
    let total = pairs.len();
    let mut out = LevelOutcome {
        m,
        ..Default::default()
    };
    if m > total {
        out.elapsed = start.elapsed();
        return Ok(out);
    }
    let prefix_len = m.min(2);
    let mut units: Vec<Vec<usize>> = Vec::new();
    match prefix_len {
        0 => units.push(vec![]),
        1 => units.extend((0..total).map(|i| vec![i])),
        _ => {
            for i in 0..total {
                for j in i + 1..total {
                    if total - j > m - 2 {
                        units.push(vec![i, j]);
                    }
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let (found, tested) = pool.install(|| {
        units
            .par_iter()
            .map(|prefix| {
                let mut seen = HashSet::new();
                let mut scan = UnitScan {
                    cfg,
                    pairs: &pairs,
                    seen: &mut seen,
                    found: BTreeSet::new(),
                    tested: 0,
                };
                let mut g = Graph::empty(n).expect("order validated");
                for &i in prefix {
                    g.link(pairs[i].u, pairs[i].v);
                }
                let next = prefix.last().map_or(0, |&i| i + 1);
                scan.extend(&mut g, next, m - prefix.len());
                (scan.found, scan.tested)
            })
            .reduce(
                || (BTreeSet::new(), 0u64),
                |(mut fa, ta), (fb, tb)| {
                    fa.extend(fb);
                    (fa, ta + tb)
                },
            )
    });
    out.found = found;
    out.tested = tested;
    out.elapsed = start.elapsed();
    Ok(out)
}

struct UnitScan<'a> {
    cfg: &'a SearchConfig,
    pairs: &'a [Edge],
    seen: &'a mut HashSet<String>,
    found: BTreeSet<String>,
    tested: u64,
}

impl UnitScan<'_> {
    fn extend(&mut self, g: &mut Graph, next: usize, left: usize) {
        if left == 0 {
            self.visit(g);
            return;
        }
        for i in next..=self.pairs.len() - left {
            let e = self.pairs[i];
            g.link(e.u, e.v);
            self.extend(g, i + 1, left - 1);
            g.unlink(e.u, e.v);
        }
    }

    fn visit(&mut self, g: &Graph) {
        let p = self.cfg.pattern;
        if pattern::has_copy(g, p) {
            return;
        }
        if self.cfg.prunes_disconnected() && !g.is_connected() {
            return;
        }
        let key = if self.cfg.dedup {
            let key = canonical_key(g);
            if !self.seen.insert(key.clone()) {
                return;
            }
            Some(key)
        } else {
            None
        };
        self.tested += 1;
        let mut cur = g.clone();
        percolation::close_in_place(&mut cur, p);
        if cur.is_complete() {
            self.found.insert(key.unwrap_or_else(|| canonical_key(g)));
        }
    }
}

/// Smallest `m` in the configured range admitting a weakly saturated graph.
pub fn wsat_exact(cfg: &SearchConfig) -> Result<WsatResult> {
    wsat_exact_with(cfg, |_| {})
}

/// [`wsat_exact`] with a callback after every completed level.
pub fn wsat_exact_with(
    cfg: &SearchConfig,
    mut on_level: impl FnMut(&LevelOutcome),
) -> Result<WsatResult> {
    cfg.validate()?;
    let mut levels = Vec::new();
    let mut tested = 0;
    for m in cfg.m_lo..=cfg.m_hi {
        let level = scan_level(cfg, m)?;
        on_level(&level);
        tested += level.tested;
        let done = !level.found.is_empty();
        levels.push(level);
        if done {
            let keys = &levels.last().unwrap().found;
            let all_witnesses = keys
                .iter()
                .map(|k| graph6::decode(k).map_err(Error::from))
                .collect::<Result<Vec<_>>>()?;
            let witness = all_witnesses[0].clone();
            let certificate = Some(percolation::extract_certificate(&witness, cfg.pattern)?);
            return Ok(WsatResult {
                value: Some(m),
                witness: Some(witness),
                all_witnesses,
                graphs_tested: tested,
                certificate,
                levels,
            });
        }
    }
    Ok(WsatResult {
        value: None,
        witness: None,
        all_witnesses: Vec::new(),
        graphs_tested: tested,
        certificate: None,
        levels,
    })
}

/// True iff no graph with exactly `m` edges on `cfg.n` vertices is weakly
/// saturated.
pub fn verify_no_smaller(cfg: &SearchConfig, m: usize) -> Result<bool> {
    Ok(scan_level(cfg, m)?.found.is_empty())
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closed form for `wsat(n, K_{2,t})`, `t >= 3`, `n >= t + 2`.
pub fn predicted_wsat_k2t(n: usize, t: usize) -> Result<usize> {
    if t < 3 || n < t + 2 {
        return Err(Error::InvalidParameters(format!(
            "closed form for K_{{2,t}} needs t >= 3 and n >= t + 2, got n = {n}, t = {t}"
        )));
    }
    let base = n + binom2(t);
    Ok(if t.is_multiple_of(2) && n <= 2 * t - 2 {
        base - 1
    } else {
        base - 2
    })
}

/// Closed form for `wsat(s + t, K_{s,t})`.
pub fn predicted_wsat_diag(s: usize, t: usize) -> Result<usize> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParameters("s and t must be positive".into()));
    }
    let base = binom2(s + t - 1);
    Ok(if gcd(s, t) == 1 { base } else { base + 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    /// `wsat(n, K_r) = (r-2)n - C(r-1, 2)`, `n >= r >= 2`.
    Clique,
    /// `wsat(n, K_{1,t}) = C(t, 2)`, `n >= t + 1`.
    Star,
    /// `wsat(n, K_{2,2}) = n`, `n >= 4`.
    K22,
    /// `wsat(n, K_{2,3}) = n + 1`, `n >= 5`.
    K23,
}

/// Previously known values. `param` is `r` for cliques and `t` for stars;
/// it is ignored for the two fixed patterns.
pub fn predicted_classical(kind: Classical, n: usize, param: usize) -> Result<usize> {
    let bad = |what: &str| Err(Error::InvalidParameters(what.to_string()));
    match kind {
        Classical::Clique if param >= 2 && n >= param => Ok((param - 2) * n - binom2(param - 1)),
        Classical::Clique => bad("clique formula needs n >= r >= 2"),
        Classical::Star if param >= 1 && n > param => Ok(binom2(param)),
        Classical::Star => bad("star formula needs n >= t + 1"),
        Classical::K22 if n >= 4 => Ok(n),
        Classical::K22 => bad("K_{2,2} formula needs n >= 4"),
        Classical::K23 if n >= 5 => Ok(n + 1),
        Classical::K23 => bad("K_{2,3} formula needs n >= 5"),
    }
}

/// Closed-form value for `(n, p)` where one is known.
pub fn predicted(n: usize, p: Pattern) -> Option<usize> {
    match p {
        Pattern::Clique(r) => predicted_classical(Classical::Clique, n, r).ok(),
        Pattern::Biclique(q) => {
            if q.s == 1 {
                predicted_classical(Classical::Star, n, q.t).ok()
            } else if q.s == 2 && q.t == 2 {
                predicted_classical(Classical::K22, n, 2).ok()
            } else if q.s == 2 && n >= q.t + 2 && q.t >= 3 {
                predicted_wsat_k2t(n, q.t).ok()
            } else if n == q.s + q.t {
                predicted_wsat_diag(q.s, q.t).ok()
            } else {
                None
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of the reproduction table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub predicted: usize,
    pub exact: Option<usize>,
    pub status: Status,
    pub graphs_tested: u64,
    /// Seconds.
    pub wall_time: f64,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub workers: usize,
    pub dedup: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            workers: std::thread::available_parallelism().map_or(1, |c| c.get()),
            dedup: true,
        }
    }
}

/// Exact `wsat(n, K_{2,t})` against the closed form for every `(t, n)` in
/// range, by independent search from `m = 0`. Every `n` must satisfy
/// `n >= t + 2`.
pub fn reproduce_table(
    ts: impl IntoIterator<Item = usize> + Clone,
    ns: impl IntoIterator<Item = usize> + Clone,
    opts: &TableOptions,
) -> Result<Vec<TableRow>> {
    let mut jobs = Vec::new();
    for t in ts {
        for n in ns.clone() {
            let predicted = predicted_wsat_k2t(n, t)?;
            jobs.push((t, n, predicted));
        }
    }
    let mut rows = Vec::new();
    for (t, n, predicted) in jobs {
        rows.push(table_row(Pattern::kst(2, t)?, n, predicted, opts)?);
    }
    Ok(rows)
}

/// Searches `wsat(n, p)` from zero and compares with `predicted`.
pub fn table_row(p: Pattern, n: usize, predicted: usize, opts: &TableOptions) -> Result<TableRow> {
    let (s, t) = match p {
        Pattern::Biclique(q) => (q.s, q.t),
        Pattern::Clique(r) => (0, r),
    };
    let start = Instant::now();
    let cfg = SearchConfig::new(n, p)
        .with_workers(opts.workers)
        .with_dedup(opts.dedup);
    let res = wsat_exact(&cfg)?;
    let status = if res.value == Some(predicted) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(TableRow {
        s,
        t,
        n,
        predicted,
        exact: res.value,
        status,
        graphs_tested: res.graphs_tested,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Space-aligned plain-text table.
pub fn format_table(rows: &[TableRow]) -> String {
    let header = [
        "s",
        "t",
        "n",
        "predicted",
        "exact",
        "status",
        "graphs_tested",
        "wall_time",
    ];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.s.to_string(),
                r.t.to_string(),
                r.n.to_string(),
                r.predicted.to_string(),
                r.exact.map_or("-".into(), |v| v.to_string()),
                match r.status {
                    Status::Pass => "PASS".into(),
                    Status::Fail => "FAIL".into(),
                },
                r.graphs_tested.to_string(),
                format!("{:.3}", r.wall_time),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, items: &[&str]| {
        let parts: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  "));
    };
    line(&mut out, &header);
    for row in &cells {
        let refs: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &refs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::is_weakly_saturated;

    fn kst(s: usize, t: usize) -> Pattern {
        Pattern::kst(s, t).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(predicted_wsat_k2t(7, 3).unwrap(), 8);
        assert_eq!(predicted_wsat_k2t(6, 4).unwrap(), 11);
        assert_eq!(predicted_wsat_k2t(7, 4).unwrap(), 11);
        assert!(predicted_wsat_k2t(5, 4).is_err());
        assert!(predicted_wsat_k2t(6, 2).is_err());
        assert_eq!(predicted_wsat_diag(2, 3).unwrap(), 6);
        assert_eq!(predicted_wsat_diag(2, 4).unwrap(), 11);
        assert_eq!(predicted_wsat_diag(3, 3).unwrap(), 11);
        assert_eq!(predicted_classical(Classical::Clique, 5, 3).unwrap(), 4);
        assert_eq!(predicted_classical(Classical::Star, 5, 3).unwrap(), 3);
        assert_eq!(predicted_classical(Classical::K23, 6, 3).unwrap(), 7);
        assert_eq!(predicted_classical(Classical::K22, 4, 2).unwrap(), 4);
        assert!(predicted_classical(Classical::K23, 4, 3).is_err());
    }

    #[test]
    fn small_exact_values() {
        let r = wsat_exact(&SearchConfig::new(5, kst(2, 3)).with_range(0, 10)).unwrap();
        assert_eq!(r.value, Some(6));
        let w = r.witness.unwrap();
        assert_eq!(w.edge_count(), 6);
        assert!(is_weakly_saturated(&w, kst(2, 3)).unwrap());

        let r = wsat_exact(&SearchConfig::new(4, kst(2, 2))).unwrap();
        assert_eq!(r.value, Some(4));

        let r = wsat_exact(&SearchConfig::new(5, kst(1, 3))).unwrap();
        assert_eq!(r.value, Some(3));
        let k3_plus = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::empty(2).unwrap())
            .unwrap();
        assert!(is_weakly_saturated(&k3_plus, kst(1, 3)).unwrap());
        assert!(r
            .all_witnesses
            .iter()
            .any(|g| canonical_key(g) == canonical_key(&k3_plus)));
    }

    #[test]
    fn no_smaller_examples() {
        assert!(verify_no_smaller(&SearchConfig::new(5, kst(2, 3)), 5).unwrap());
        assert!(!verify_no_smaller(&SearchConfig::new(5, kst(2, 3)), 6).unwrap());
        assert!(verify_no_smaller(&SearchConfig::new(4, kst(2, 2)), 6).unwrap());
    }

    #[test]
    fn range_without_solution() {
        let r = wsat_exact(&SearchConfig::new(5, kst(2, 3)).with_range(0, 5)).unwrap();
        assert_eq!(r.value, None);
        assert!(r.witness.is_none());
        assert_eq!(r.levels.len(), 6);
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(4, kst(2, 3)).validate().is_err());
        assert!(SearchConfig::new(5, kst(2, 3))
            .with_range(3, 2)
            .validate()
            .is_err());
        assert!(SearchConfig::new(5, kst(2, 3))
            .with_range(0, 11)
            .validate()
            .is_err());
        assert!(SearchConfig::new(5, kst(2, 3))
            .with_workers(0)
            .validate()
            .is_err());
    }

    #[test]
    fn table_rows_and_format() {
        let rows = reproduce_table([3], [5, 6], &TableOptions::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.status == Status::Pass));
        assert_eq!(rows[0].exact, Some(6));
        assert_eq!(rows[1].exact, Some(7));
        let text = format_table(&rows);
        assert!(text.lines().next().unwrap().contains("predicted"));
        assert_eq!(text.lines().count(), 3);
        assert!(reproduce_table([4], [5], &TableOptions::default()).is_err());
    }

    #[test]
    fn predicted_dispatch() {
        assert_eq!(predicted(6, kst(2, 3)), Some(7));
        assert_eq!(predicted(6, kst(2, 4)), Some(11));
        assert_eq!(predicted(6, kst(3, 3)), Some(11));
        assert_eq!(predicted(5, Pattern::Clique(4)), Some(7));
        assert_eq!(predicted(5, kst(1, 3)), Some(3));
        assert_eq!(predicted(7, kst(3, 3)), None);
    }
}
