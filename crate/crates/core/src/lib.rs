//! Weak saturation toolkit for complete bipartite patterns.
//!
//! A graph `H` is weakly `F`-saturated if it contains no copy of `F` and
//! its missing edges can be added one at a time so that every addition
//! creates a new copy of `F` through the added edge. This crate provides
//!
//! - [`graph`]: a 64-vertex bitset graph kernel, with [`graph6`] and
//!   [`canon`] for interchange and isomorphism rejection;
//! - [`pattern`]: `K_{s,t}` (and `K_r`) detection;
//! - [`percolation`]: bootstrap closure, saturation tests and checkable
//!   certificates ([`certfile`] for their JSON form);
//! - [`constructions`]: the extremal families with explicit addition orders;
//! - [`search`]: exact `wsat(n, F)` by exhaustive enumeration;
//! - [`records`]: the append-only run log.

pub mod canon;
pub mod certfile;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod pattern;
pub mod percolation;
pub mod records;
pub mod search;

pub use canon::{canonical_form, canonical_key};
pub use error::{Error, Graph6Error, GraphError, Result};
pub use graph::{Edge, Graph, VertexSet, MAX_VERTICES};
pub use pattern::{Pattern, PatternSpec, Witness};
pub use percolation::{Certificate, ClosureOutcome, Step, Violation};
pub use search::{SearchConfig, WsatResult};
