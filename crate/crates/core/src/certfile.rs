//! JSON interchange for certificates: one object per certificate,
//! `{n, pattern: {s, t}, base: <graph6>, steps: [{edge: [u, v], side_s, side_t}]}`
//! with ascending vertex lists. Clique patterns use `pattern: {r}` and
//! `steps: [{edge, clique}]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexSet, MAX_VERTICES};
use crate::graph6;
use crate::pattern::{Pattern, PatternSpec, Witness};
use crate::percolation::{Certificate, Step};

#[derive(Debug, Serialize, Deserialize)]
struct CertificateRecord {
    n: usize,
    pattern: PatternRecord,
    base: String,
    steps: Vec<StepRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PatternRecord {
    Biclique { s: usize, t: usize },
    Clique { r: usize },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum StepRecord {
    Biclique {
        edge: [usize; 2],
        side_s: Vec<usize>,
        side_t: Vec<usize>,
    },
    Clique {
        edge: [usize; 2],
        clique: Vec<usize>,
    },
}

pub fn to_json(c: &Certificate) -> String {
    let pattern = match c.pattern {
        Pattern::Biclique(PatternSpec { s, t }) => PatternRecord::Biclique { s, t },
        Pattern::Clique(r) => PatternRecord::Clique { r },
    };
    let steps = c
        .steps
        .iter()
        .map(|st| {
            let edge = [st.edge.u, st.edge.v];
            match st.witness {
                Witness::Biclique { side_s, side_t } => StepRecord::Biclique {
                    edge,
                    side_s: side_s.to_vec(),
                    side_t: side_t.to_vec(),
                },
                Witness::Clique { vertices } => StepRecord::Clique {
                    edge,
                    clique: vertices.to_vec(),
                },
            }
        })
        .collect();
    let rec = CertificateRecord {
        n: c.base.order(),
        pattern,
        base: graph6::encode(&c.base),
        steps,
    };
    serde_json::to_string(&rec).expect("certificate record serializes")
}

fn vertex_set(vs: &[usize]) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    for &v in vs {
        if v >= MAX_VERTICES {
            return Err(Error::Format(format!("vertex {v} out of range")));
        }
        if out.contains(v) {
            return Err(Error::Format(format!("vertex {v} listed twice")));
        }
        out.insert(v);
    }
    Ok(out)
}

/// Parses one certificate object. Structural problems (bad JSON, bad
/// graph6, loops, vertex labels past 63) are errors; semantic validity is
/// left to the verifier.
pub fn from_json(text: &str) -> Result<Certificate> {
    let rec: CertificateRecord =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let base = graph6::decode(&rec.base)?;
    if base.order() != rec.n {
        return Err(Error::Format(format!(
            "n = {} but base graph has {} vertices",
            rec.n,
            base.order()
        )));
    }
    let pattern = match rec.pattern {
        PatternRecord::Biclique { s, t } => {
            if s > t {
                return Err(Error::Format(format!(
                    "pattern sides out of order: s={s} > t={t}"
                )));
            }
            Pattern::kst(s, t)?
        }
        PatternRecord::Clique { r } => Pattern::clique(r)?,
    };
    let steps = rec
        .steps
        .iter()
        .map(|st| {
            let (edge, witness) = match st {
                StepRecord::Biclique {
                    edge,
                    side_s,
                    side_t,
                } => (
                    edge,
                    Witness::Biclique {
                        side_s: vertex_set(side_s)?,
                        side_t: vertex_set(side_t)?,
                    },
                ),
                StepRecord::Clique { edge, clique } => (
                    edge,
                    Witness::Clique {
                        vertices: vertex_set(clique)?,
                    },
                ),
            };
            Ok(Step {
                edge: Edge::new(edge[0], edge[1])?,
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        pattern,
        base,
        steps,
    })
}
