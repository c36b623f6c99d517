use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use wsat_core::{graph6, Graph, Pattern};

use crate::PatternArgs;

impl PatternArgs {
    pub fn pattern(&self) -> Result<Pattern> {
        match (self.r, self.s, self.t) {
            (Some(r), _, _) => Ok(Pattern::clique(r)?),
            (None, Some(s), Some(t)) => Ok(Pattern::kst(s, t)?),
            _ => bail!("give a pattern as --s and --t, or as --r"),
        }
    }
}

/// First non-blank line of the file (or standard input), decoded as graph6.
pub fn read_graph(path: Option<&Path>) -> Result<Graph> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
        }
    }
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| anyhow!("no graph6 line in input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    graph6::decode(line).with_context(|| format!("decoding graph6 {line:?}"))
}

/// `7` or `5..7` (inclusive).
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .with_context(|| format!("bad number {s:?} in range {text:?}"))
    };
    let range = match text.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let v = parse(text)?;
            v..=v
        }
    };
    if range.is_empty() {
        bail!("empty range {text:?}");
    }
    Ok(range)
}
