use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use wsat_core::constructions::{self, Family, FamilyInstance};
use wsat_core::percolation::{self, Certificate};
use wsat_core::records::{self, RunRecord};
use wsat_core::search::{self, LevelOutcome, SearchConfig, Status, TableOptions};
use wsat_core::{certfile, graph6, Pattern, Step, Witness};

use crate::input::{parse_range, read_graph};
use crate::{ClosureArgs, ConstructArgs, SearchArgs, TableArgs, VerifyArgs};

fn pattern_json(p: Pattern) -> Value {
    match p {
        Pattern::Biclique(q) => json!({ "s": q.s, "t": q.t }),
        Pattern::Clique(r) => json!({ "r": r }),
    }
}

fn step_line(i: usize, st: &Step) -> String {
    let e = st.edge;
    match st.witness {
        Witness::Biclique { side_s, side_t } => format!(
            "{:>4}  {}-{}  S={:?} T={:?}",
            i + 1,
            e.u,
            e.v,
            side_s.to_vec(),
            side_t.to_vec()
        ),
        Witness::Clique { vertices } => {
            format!("{:>4}  {}-{}  K={:?}", i + 1, e.u, e.v, vertices.to_vec())
        }
    }
}

fn write_certificate(path: &Path, c: &Certificate) -> Result<()> {
    std::fs::write(path, certfile::to_json(c) + "\n")
        .with_context(|| format!("writing {}", path.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn build_family(a: &ConstructArgs) -> Result<FamilyInstance> {
    let family = Family::from_name(&a.family).with_context(|| {
        format!(
            "unknown family {:?} (expected complement-path, complement-path-union-k1, gnt, \
             xyz, h or clique-join)",
            a.family
        )
    })?;
    let need = |v: Option<usize>, flag: &str| {
        v.with_context(|| format!("family {} needs --{flag}", family.name()))
    };
    let inst = match family {
        Family::ComplementPath => constructions::complement_path(need(a.s, "s")?, need(a.t, "t")?)?,
        Family::ComplementPathUnionK1 => {
            constructions::complement_path_union_k1(need(a.s, "s")?, need(a.t, "t")?)?
        }
        Family::Gnt => constructions::gnt(need(a.n, "n")?, need(a.t, "t")?)?,
        Family::Xyz => {
            constructions::xyz_graph(need(a.x, "x")?, need(a.y, "y")?, a.z.unwrap_or(0))?
        }
        Family::H => constructions::h_graph(
            need(a.x, "x")?,
            need(a.y1, "y1")?,
            need(a.y2, "y2")?,
            a.z.unwrap_or(0),
        )?,
        Family::CliqueJoin => constructions::clique_join(need(a.n, "n")?, need(a.r, "r")?)?,
    };
    Ok(inst)
}

pub fn construct(a: &ConstructArgs) -> Result<ExitCode> {
    let inst = build_family(a)?;
    let g6 = graph6::encode(&inst.graph);
    let emit = a.emit_order || a.cert.is_some();
    let cert = if emit { inst.certificate() } else { None };
    if emit && cert.is_none() {
        eprintln!(
            "note: family {} carries no addition order",
            inst.family.name()
        );
    }
    if let (Some(path), Some(c)) = (&a.cert, &cert) {
        write_certificate(path, c)?;
    }
    if a.json {
        let params: BTreeMap<&str, usize> = inst.params.iter().copied().collect();
        let mut out = json!({
            "family": inst.family.name(),
            "params": params,
            "n": inst.graph.order(),
            "edges": inst.graph.edge_count(),
            "graph6": g6,
        });
        if let (Some(c), None) = (&cert, &a.cert) {
            out["certificate"] = serde_json::from_str(&certfile::to_json(c))?;
        }
        print_json(&out);
    } else {
        println!("{g6}");
        if let (Some(c), None) = (&cert, &a.cert) {
            println!("{}", certfile::to_json(c));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn closure(a: &ClosureArgs) -> Result<ExitCode> {
    let g = read_graph(a.input.as_deref())?;
    let p = a.pattern.pattern()?;
    let out = percolation::closure(&g, p)?;
    let free = wsat_core::pattern::is_free(&g, p)?;
    if let Some(path) = &a.cert {
        let c = Certificate {
            pattern: p,
            base: g.clone(),
            steps: out.added.clone(),
        };
        write_certificate(path, &c)?;
        if !(free && out.complete) {
            eprintln!(
                "note: the graph is not weakly {p}-saturated; the certificate will not verify"
            );
        }
    }
    if a.json {
        let steps: Vec<Value> = out.added.iter().map(step_json).collect();
        print_json(&json!({
            "n": g.order(),
            "pattern": pattern_json(p),
            "edges": g.edge_count(),
            "final_edges": out.final_graph.edge_count(),
            "complete": out.complete,
            "pattern_free": free,
            "weakly_saturated": free && out.complete,
            "steps": steps,
        }));
    } else {
        println!("n: {}, pattern: {p}", g.order());
        println!(
            "edges: {} -> {} of {}",
            g.edge_count(),
            out.final_graph.edge_count(),
            g.pair_count()
        );
        println!("complete: {}, steps: {}", out.complete, out.added.len());
        println!(
            "pattern-free: {free}, weakly saturated: {}",
            free && out.complete
        );
        for (i, st) in out.added.iter().enumerate() {
            println!("{}", step_line(i, st));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One step in the certificate's JSON shape.
fn step_json(st: &Step) -> Value {
    let edge = [st.edge.u, st.edge.v];
    match st.witness {
        Witness::Biclique { side_s, side_t } => {
            json!({ "edge": edge, "side_s": side_s.to_vec(), "side_t": side_t.to_vec() })
        }
        Witness::Clique { vertices } => json!({ "edge": edge, "clique": vertices.to_vec() }),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&a.certificate)
        .with_context(|| format!("reading {}", a.certificate.display()))?;
    let verdict = match certfile::from_json(&text) {
        Ok(c) => percolation::verify_certificate(&c)
            .map_err(|v| (v.code().to_string(), v.step(), v.to_string())),
        Err(e) => Err(("malformed".to_string(), None, e.to_string())),
    };
    if a.json {
        let v = match &verdict {
            Ok(()) => json!({ "valid": true }),
            Err((code, step, msg)) => {
                json!({ "valid": false, "violation": code, "step": step, "message": msg })
            }
        };
        print_json(&v);
    } else {
        match &verdict {
            Ok(()) => println!("VALID"),
            Err((_, _, msg)) => println!("INVALID: {msg}"),
        }
    }
    Ok(if verdict.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Parameters that identify a search for resumption. Dedup and worker
/// count do not change which levels are empty.
fn search_key(n: usize, p: Pattern, prune: bool) -> BTreeMap<String, String> {
    let mut key = BTreeMap::new();
    key.insert("n".to_string(), n.to_string());
    key.insert("pattern".to_string(), p.to_string());
    key.insert("prune_connected".to_string(), prune.to_string());
    key
}

fn level_json(l: &LevelOutcome) -> Value {
    json!({
        "m": l.m,
        "found": l.found.len(),
        "tested": l.tested,
        "seconds": l.elapsed.as_secs_f64(),
    })
}

pub fn search(a: &SearchArgs) -> Result<ExitCode> {
    let start = Instant::now();
    let p = a.pattern.pattern()?;
    let predicted = search::predicted(a.n, p);
    let mut cfg = SearchConfig::new(a.n, p)
        .with_workers(a.workers)
        .with_dedup(!a.no_dedup)
        .with_prune_connected(a.prune_connected);
    cfg.validate()?;
    let mode = if a.independent { "independent" } else { "fast" };
    if !a.independent {
        if let Some(v) = predicted {
            cfg.m_lo = v;
        }
    }
    let key = search_key(a.n, p, a.prune_connected);
    if a.resume {
        let done = records::completed_empty_levels(&records::read_all(&a.log)?, &key);
        while cfg.m_lo < cfg.m_hi && done.binary_search(&cfg.m_lo).is_ok() {
            cfg.m_lo += 1;
        }
    }
    let m_lo = cfg.m_lo;

    let mut log_error = None;
    let res = search::wsat_exact_with(&cfg, |level| {
        if !a.json {
            println!(
                "m = {:>3}: {} saturated ({} tested, {:.3}s)",
                level.m,
                level.found.len(),
                level.tested,
                level.elapsed.as_secs_f64()
            );
        }
        let mut rec = RunRecord::new("search-level");
        rec.params = key.clone();
        rec = rec
            .param("m", level.m)
            .param("found", level.found.len())
            .param("tested", level.tested);
        rec.timing = level.elapsed.as_secs_f64();
        if let Err(e) = records::append(&a.log, &rec) {
            log_error.get_or_insert(e);
        }
    })?;
    if let Some(e) = log_error {
        return Err(e).context(format!("appending to {}", a.log.display()));
    }

    let mut outputs = Vec::new();
    if let (Some(path), Some(c)) = (&a.cert, &res.certificate) {
        write_certificate(path, c)?;
        outputs.push(path.display().to_string());
    }
    let witness = res.witness.as_ref().map(graph6::encode);
    let elapsed = start.elapsed().as_secs_f64();

    let mut rec = RunRecord::new("search");
    rec.params = key;
    rec = rec
        .param("mode", mode)
        .param("m_lo", m_lo)
        .param("workers", a.workers)
        .param("dedup", !a.no_dedup)
        .param("wsat", res.value.map_or("none".into(), |v| v.to_string()))
        .param("witness", witness.clone().unwrap_or_default());
    rec.outputs = outputs;
    rec.timing = elapsed;
    records::append(&a.log, &rec).with_context(|| format!("appending to {}", a.log.display()))?;

    if a.json {
        print_json(&json!({
            "n": a.n,
            "pattern": pattern_json(p),
            "mode": mode,
            "m_lo": m_lo,
            "wsat": res.value,
            "witness": witness,
            "witnesses": res.all_witnesses.iter().map(graph6::encode).collect::<Vec<_>>(),
            "graphs_tested": res.graphs_tested,
            "predicted": predicted,
            "levels": res.levels.iter().map(level_json).collect::<Vec<_>>(),
            "seconds": elapsed,
        }));
    } else {
        if m_lo > 0 {
            println!("(levels below m = {m_lo} not scanned in this run)");
        }
        match res.value {
            Some(v) => {
                println!("wsat = {v}");
                println!("witness: {}", witness.as_deref().unwrap_or(""));
                println!("witnesses up to isomorphism: {}", res.all_witnesses.len());
            }
            None => println!(
                "no weakly saturated graph with {}..={} edges",
                m_lo, cfg.m_hi
            ),
        }
        if let Some(pv) = predicted {
            println!("closed form: {pv}");
        }
        println!("graphs tested: {}", res.graphs_tested);
        println!("time: {elapsed:.3}s");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn table(a: &TableArgs) -> Result<ExitCode> {
    let start = Instant::now();
    let ts = parse_range(&a.t)?;
    let ns = parse_range(&a.n)?;
    let opts = TableOptions {
        workers: a.workers,
        dedup: !a.no_dedup,
    };
    if opts.workers == 0 {
        bail!("need at least one worker");
    }
    let rows = search::reproduce_table(ts, ns, &opts)?;
    for row in &rows {
        let mut rec = RunRecord::new("table-row")
            .param("s", row.s)
            .param("t", row.t)
            .param("n", row.n)
            .param("predicted", row.predicted)
            .param("exact", row.exact.map_or("none".into(), |v| v.to_string()))
            .param(
                "status",
                serde_json::to_value(row.status)?.as_str().unwrap_or(""),
            )
            .param("graphs_tested", row.graphs_tested);
        rec.timing = row.wall_time;
        records::append(&a.log, &rec)
            .with_context(|| format!("appending to {}", a.log.display()))?;
    }
    let mut rec = RunRecord::new("table").param("t", &a.t).param("n", &a.n);
    rec.timing = start.elapsed().as_secs_f64();
    records::append(&a.log, &rec).with_context(|| format!("appending to {}", a.log.display()))?;

    if a.json {
        print_json(&serde_json::to_value(&rows)?);
    } else {
        print!("{}", search::format_table(&rows));
    }
    Ok(if rows.iter().all(|r| r.status == Status::Pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
