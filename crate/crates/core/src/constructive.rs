//! Independent all-k-isolating sets of size at most `floor(n / (k + 1))`,
//! built by the inductive case analysis on k-branches and large edges.
//!
//! Every step picks an independent set `J` with
//! `|N[J] ∪ S_k(J)| >= (k + 1)|J|` whose remnant has no component of order
//! exactly `k`, then recurses on the remnant components of order above `k`.
//! Each of these conditions is checked at runtime; a failure is reported as
//! [`ConstructiveError::Assertion`], never patched over.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::predicates::{is_independent, is_isolating, IsolationSpec};
use crate::set::VertexSet;
use crate::tree::{
    centroid, closed_neighborhood, core_subtree_bipartition, k_branches, large_edges, remnant,
    Component, Tree,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructiveError {
    #[error("no bound holds when the order equals k (n = k = {0})")]
    OrderEqualsK(usize),
    #[error("k = {0} is handled by the exact solver; the construction needs k >= 2")]
    KTooSmall(usize),
    #[error("construction invariant failed: {0}")]
    Assertion(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    BaseSmall,
    #[serde(rename = "CASE_1A")]
    Case1a,
    #[serde(rename = "CASE_1B")]
    Case1b,
    #[serde(rename = "CASE_2A")]
    Case2a,
    #[serde(rename = "CASE_2B")]
    Case2b,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 5] = [
        CaseLabel::BaseSmall,
        CaseLabel::Case1a,
        CaseLabel::Case1b,
        CaseLabel::Case2a,
        CaseLabel::Case2b,
    ];
}

/// One step of the recursion, in original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepTrace {
    pub case: CaseLabel,
    /// Order of the component the step worked on.
    pub order: usize,
    pub j: VertexSet,
    pub t_j: usize,
    /// Only for Case 2b.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub set: VertexSet,
    pub size: usize,
    pub bound: usize,
    pub trace: Vec<StepTrace>,
}

/// Vertices of `T - N[J]` lying in components of order less than `k`.
pub fn small_components(t: &Tree, j: &VertexSet, k: usize) -> VertexSet {
    let mut out = VertexSet::new(t.n());
    for comp in remnant(t, j).components {
        if comp.order() < k {
            out.union_with(&comp.vertex_set(t.n()));
        }
    }
    out
}

fn fail<T>(msg: String) -> Result<T, ConstructiveError> {
    Err(ConstructiveError::Assertion(msg))
}

struct Choice {
    case: CaseLabel,
    j: VertexSet,
    psi: Option<i64>,
}

/// Picks `J` for a tree of order `n > k` (local ids).
fn choose(t: &Tree, k: usize) -> Result<Choice, ConstructiveError> {
    let n = t.n();
    let single = |v: usize| VertexSet::from_iter(n, [v]);
    if n <= 2 * k + 1 {
        return Ok(Choice {
            case: CaseLabel::BaseSmall,
            j: single(centroid(t)),
            psi: None,
        });
    }
    let report = k_branches(t, k);
    if report.branches.is_empty() {
        let large = large_edges(t, k);
        if large.is_empty() {
            return Ok(Choice {
                case: CaseLabel::Case1a,
                j: single(centroid(t)),
                psi: None,
            });
        }
        let v = large_path_end(n, &large);
        let incident = large.iter().filter(|&&(a, b)| a == v || b == v).count();
        if incident != 1 {
            return fail(format!(
                "end of a longest large-edge path {v} meets {incident} large edges"
            ));
        }
        return Ok(Choice {
            case: CaseLabel::Case1b,
            j: single(v),
            psi: None,
        });
    }
    if let Some(core) = report
        .core_vertices
        .iter()
        .find(|&c| report.branches_at(c) == 1)
    {
        let x = report
            .branches
            .iter()
            .find(|b| b.core_vertex == core)
            .map(|b| b.branch_vertex)
            .expect("core vertex has its branch");
        return Ok(Choice {
            case: CaseLabel::Case2a,
            j: single(x),
            psi: None,
        });
    }
    let subtrees =
        core_subtree_bipartition(t, k).map_err(|e| ConstructiveError::Assertion(e.to_string()))?;
    let chosen = subtrees
        .into_iter()
        .min_by_key(|c| c.vertices.min())
        .expect("a k-branch implies a core vertex");
    let mut j = chosen.b_side.clone();
    for b in &report.branches {
        if chosen.r_side.contains(b.core_vertex) {
            j.insert(b.branch_vertex);
        }
    }
    if j.len() != chosen.b_side.len() + chosen.r_k {
        return fail(format!(
            "|J| = {} but |B| + r_k = {}",
            j.len(),
            chosen.b_side.len() + chosen.r_k
        ));
    }
    let (kk, b, r) = (
        k as i64,
        chosen.b_side.len() as i64,
        chosen.r_side.len() as i64,
    );
    let psi = -kk * b + r + kk * chosen.b_k as i64 - chosen.r_k as i64;
    if psi < 0 {
        return fail(format!("psi = {psi} < 0"));
    }
    Ok(Choice {
        case: CaseLabel::Case2b,
        j,
        psi: Some(psi),
    })
}

/// An end of a longest path in the forest of large edges: two sweeps from the
/// smallest large-edge endpoint, farthest ties to the smaller id, and the
/// smaller of the two path ends.
fn large_path_end(n: usize, large: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in large {
        adj[a].push(b);
        adj[b].push(a);
    }
    let farthest = |from: usize| {
        let mut dist = vec![usize::MAX; n];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        let mut best = from;
        while let Some(v) = queue.pop_front() {
            if (dist[v], std::cmp::Reverse(v)) > (dist[best], std::cmp::Reverse(best)) {
                best = v;
            }
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        best
    };
    let start = large
        .iter()
        .map(|&(a, b)| a.min(b))
        .min()
        .expect("a large edge");
    let a = farthest(start);
    let b = farthest(a);
    a.min(b)
}

/// Independent all-k-isolating set of size at most `floor(n / (k + 1))`,
/// with the case taken at every step.
pub fn independent_allk_set(t: &Tree, k: usize) -> Result<BoundResult, ConstructiveError> {
    let n = t.n();
    if k < 2 {
        return Err(ConstructiveError::KTooSmall(k));
    }
    if n == k {
        return Err(ConstructiveError::OrderEqualsK(n));
    }
    let bound = n / (k + 1);
    let mut set = VertexSet::new(n);
    let mut trace = Vec::new();
    if n < k {
        trace.push(StepTrace {
            case: CaseLabel::BaseSmall,
            order: n,
            j: VertexSet::new(n),
            t_j: 0,
            psi: None,
        });
        return Ok(BoundResult {
            set,
            size: 0,
            bound,
            trace,
        });
    }
    let whole = Component {
        tree: t.clone(),
        ids: (0..n).collect(),
    };
    let mut work = VecDeque::from([whole]);
    while let Some(piece) = work.pop_front() {
        let local = &piece.tree;
        let m = local.n();
        if m == k {
            return fail(format!("recursion reached a component of order k = {k}"));
        }
        let choice = choose(local, k)?;
        let j = &choice.j;
        if !is_independent(local, j) {
            return fail(format!("{:?} chose a dependent set", choice.case));
        }
        let covered = closed_neighborhood(local, j).union(&small_components(local, j, k));
        let t_j = covered.len();
        let needs_count = !matches!(choice.case, CaseLabel::BaseSmall | CaseLabel::Case1a);
        if needs_count && t_j < (k + 1) * j.len() {
            return fail(format!(
                "{:?}: t_J = {t_j} < (k+1)|J| = {}",
                choice.case,
                (k + 1) * j.len()
            ));
        }
        let rest = remnant(local, j);
        for comp in rest.components {
            match comp.order() {
                o if o == k => {
                    return fail(format!("{:?} left a component of order k", choice.case));
                }
                o if o > k => {
                    let ids = comp.ids.iter().map(|&v| piece.ids[v]).collect();
                    work.push_back(Component {
                        tree: comp.tree,
                        ids,
                    });
                }
                _ => {}
            }
        }
        let j_orig = piece.to_original(n, j);
        set.union_with(&j_orig);
        trace.push(StepTrace {
            case: choice.case,
            order: m,
            j: j_orig,
            t_j,
            psi: choice.psi,
        });
    }
    if !is_independent(t, &set) {
        return fail("assembled set is not independent".into());
    }
    if !is_isolating(t, &set, &IsolationSpec::AllK(k)).valid {
        return fail("assembled set does not isolate".into());
    }
    if set.len() > bound {
        return fail(format!(
            "size {} exceeds floor(n/(k+1)) = {bound}",
            set.len()
        ));
    }
    Ok(BoundResult {
        size: set.len(),
        set,
        bound,
        trace,
    })
}
