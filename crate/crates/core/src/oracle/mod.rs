//! Ground truth by exhaustion: optimum isolating sets, disjoint isolating
//! families, non-isomorphic tree enumeration, canonical forms and random
//! trees.
//!
//! Every search here is exponential and guarded by a size cap. The defaults
//! can be raised through `ISO_TREES_CAPS` (e.g. `oracle=20,search=13`), at the
//! caller's own risk.

mod canon;
mod enumerate;
pub(crate) mod mask;
mod search;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::VertexSet;

pub use canon::{canonical_form, rooted_canonical_form, rooted_isomorphism, tree_from_code};
pub use enumerate::{enumerate_trees, enumerate_up_to, prufer_decode, prufer_encode, random_tree};
pub use search::{max_disjoint_isolating_sets, min_isolating_set};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance of order {n} exceeds the cap of {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("invalid specification: {0}")]
    BadSpec(String),
}

/// Size limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// `min_isolating_set` with all-k or star specifications.
    pub oracle: usize,
    /// `min_isolating_set` with a pattern tree.
    pub oracle_pattern: usize,
    pub disjoint: usize,
    pub enumerate: usize,
    /// Exhaustive coloring search.
    pub search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            oracle: 18,
            oracle_pattern: 14,
            disjoint: 13,
            enumerate: 10,
            search: 12,
        }
    }
}

impl Caps {
    /// Parses `key=value` pairs separated by commas over the defaults. Values
    /// above 64 are rejected because the searches use word-sized sets.
    pub fn parse(spec: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad cap value in {item:?}"))?;
            if value > 64 {
                return Err(format!("cap {value} exceeds the hard limit of 64"));
            }
            let slot = match key.trim() {
                "oracle" => &mut caps.oracle,
                "oracle_pattern" | "pattern" => &mut caps.oracle_pattern,
                "disjoint" => &mut caps.disjoint,
                "enumerate" | "enum" => &mut caps.enumerate,
                "search" => &mut caps.search,
                other => return Err(format!("unknown cap {other:?}")),
            };
            *slot = value;
        }
        Ok(caps)
    }

    /// Caps in effect for this process: defaults, overridden by `ISO_TREES_CAPS`.
    pub fn current() -> &'static Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        CAPS.get_or_init(|| match std::env::var("ISO_TREES_CAPS") {
            Ok(spec) => Caps::parse(&spec).unwrap_or_else(|err| {
                eprintln!("ignoring ISO_TREES_CAPS: {err}");
                Caps::default()
            }),
            Err(_) => Caps::default(),
        })
    }
}

/// An optimum value with a set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointFamilyResult {
    pub count: usize,
    pub family: Vec<VertexSet>,
}
