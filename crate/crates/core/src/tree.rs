//! Tree representation, edge-list I/O and the structural primitives the
//! solvers share: closed neighborhoods, remnants, centroids, edge splits,
//! k-branches, large edges and core subtrees.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("input contains no vertices")]
    Empty,
    #[error("line {line}: malformed input {text:?}")]
    Malformed { line: usize, text: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} {1} closes a cycle")]
    Cycle(usize, usize),
    #[error("graph is disconnected: vertex {0} is not reachable from vertex 0")]
    Disconnected(usize),
    #[error("edge endpoint {vertex} outside 0..{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("no {0}-branch exists")]
    NoKBranch(usize),
}

/// A tree on vertices `0..n` stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<TreeJson> for Tree {
    type Error = TreeError;
    fn try_from(j: TreeJson) -> Result<Self, Self::Error> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Tree::from_edges(j.n, &edges)
    }
}

impl From<Tree> for TreeJson {
    fn from(t: Tree) -> Self {
        TreeJson {
            n: t.n(),
            edges: t.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Tree {
    /// Validates an edge list over `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut dsu = Dsu::new(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
            if !dsu.union(u, v) {
                return Err(TreeError::Cycle(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if let Some(v) = (1..n).find(|&v| dsu.find(v) != dsu.find(0)) {
            return Err(TreeError::Disconnected(v));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    pub fn single() -> Tree {
        Tree {
            adj: vec![Vec::new()],
        }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Tree {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::from_edges(leaves + 1, &edges).expect("star is a tree")
    }

    /// Center 0 with one pendant path per entry of `legs`; legs are numbered
    /// consecutively, each starting next to the center.
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::from_edges(next, &edges).expect("spider is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_path(&self) -> bool {
        self.max_degree() <= 2
    }

    /// True for `K_{1,m}` with `m >= 1` (so `P_2` and `P_3` count).
    pub fn is_star(&self) -> bool {
        self.n() >= 2 && self.max_degree() == self.n() - 1
    }

    /// BFS from `root`: returns parents and the visiting order.
    pub fn bfs(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let n = self.n();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        (parent, order)
    }

    /// Subtree sizes when rooted at `root`, alongside the BFS parents.
    pub fn subtree_sizes(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let (parent, order) = self.bfs(root);
        let mut size = vec![1; self.n()];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        (parent, size)
    }

    /// Distances from `source` in edges.
    pub fn distances(&self, source: usize) -> Vec<usize> {
        let (parent, order) = self.bfs(source);
        let mut dist = vec![0; self.n()];
        for &v in &order {
            if let Some(p) = parent[v] {
                dist[v] = dist[p] + 1;
            }
        }
        dist
    }

    /// Vertices on the side of `start` after deleting the edge `start - blocked`.
    pub fn side_of(&self, start: usize, blocked: usize) -> VertexSet {
        let mut side = VertexSet::new(self.n());
        side.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if w != blocked && !side.contains(w) {
                    side.insert(w);
                    stack.push(w);
                }
            }
        }
        side
    }

    /// Induced subgraph on a connected vertex set, relabelled in increasing
    /// original-id order.
    pub fn subtree(&self, vertices: &VertexSet) -> Component {
        let ids = vertices.to_vec();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in ids.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let tree = Tree::from_edges(ids.len(), &edges).expect("vertex set induces a subtree");
        Component { tree, ids }
    }

    /// Components of the subgraph induced by `keep`, ordered by smallest vertex.
    pub fn induced_components(&self, keep: &VertexSet) -> Forest {
        let mut seen = VertexSet::new(self.n());
        let mut components = Vec::new();
        for start in keep.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n());
            comp.insert(start);
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if keep.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            components.push(self.subtree(&comp));
        }
        Forest { components }
    }

    /// Canonical edge-list text: one `u v` per line with `u < v`, sorted; `K_1`
    /// is written as the single line `1`.
    pub fn to_edge_list(&self) -> String {
        if self.n() == 1 {
            return "1\n".to_string();
        }
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Graphviz text; when `colors` is given, vertices are filled by class.
    pub fn to_dot(&self, colors: Option<&[usize]>) -> String {
        const PALETTE: [&str; 8] = [
            "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
        ];
        let mut out = String::from("graph T {\n  node [shape=circle];\n");
        for v in 0..self.n() {
            match colors {
                Some(c) if c[v] > 0 => {
                    let fill = PALETTE[(c[v] - 1) % PALETTE.len()];
                    let _ = writeln!(
                        out,
                        "  {v} [label=\"{v}:{}\", style=filled, fillcolor=\"{fill}\"];",
                        c[v]
                    );
                }
                _ => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn split(&self, x: usize, y: usize) -> Option<EdgeSplit> {
        if !self.has_edge(x, y) {
            return None;
        }
        let side_x = self.side_of(x, y);
        let side_y = side_x.complement();
        Some(EdgeSplit {
            x,
            y,
            side_x,
            side_y,
        })
    }
}

/// Parses whitespace-separated `u v` pairs, one per line. `#` starts a comment.
/// A line holding a single integer declares the vertex count, which is how
/// `K_1` is written.
pub fn parse_edge_list(text: &str) -> Result<Tree, TreeError> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || TreeError::Malformed {
            line: i + 1,
            text: raw.to_string(),
        };
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| malformed()))
            .collect::<Result<_, _>>()?;
        match nums.as_slice() {
            [n] if declared.is_none() => declared = Some(*n),
            [u, v] => edges.push((*u, *v)),
            _ => return Err(malformed()),
        }
    }
    let from_edges = edges.iter().map(|&(u, v)| u.max(v) + 1).max();
    let n = match (declared, from_edges) {
        (None, None) => return Err(TreeError::Empty),
        (Some(d), None) => d,
        (None, Some(m)) => m,
        (Some(d), Some(m)) => {
            if m > d {
                return Err(TreeError::OutOfRange {
                    vertex: m - 1,
                    n: d,
                });
            }
            d
        }
    };
    Tree::from_edges(n, &edges)
}

/// A connected piece of some larger tree, with its local-to-original id map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub tree: Tree,
    /// `ids[local] = original`, increasing.
    pub ids: Vec<usize>,
}

impl Component {
    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn to_original(&self, universe: usize, local: &VertexSet) -> VertexSet {
        VertexSet::from_iter(universe, local.iter().map(|v| self.ids[v]))
    }

    pub fn vertex_set(&self, universe: usize) -> VertexSet {
        VertexSet::from_iter(universe, self.ids.iter().copied())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Forest {
    pub components: Vec<Component>,
}

impl Forest {
    pub fn orders(&self) -> Vec<usize> {
        self.components.iter().map(Component::order).collect()
    }

    pub fn total_order(&self) -> usize {
        self.components.iter().map(Component::order).sum()
    }
}

pub fn closed_neighborhood(t: &Tree, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for v in s.iter() {
        for &w in t.neighbors(v) {
            out.insert(w);
        }
    }
    out
}

/// Components of `T - N[S]`.
pub fn remnant(t: &Tree, s: &VertexSet) -> Forest {
    t.induced_components(&closed_neighborhood(t, s).complement())
}

/// A vertex minimising the largest component of `T - v`; ties go to the lowest id.
pub fn centroid(t: &Tree) -> usize {
    let weights = branch_weights(t);
    (0..t.n())
        .min_by_key(|&v| (weights[v], v))
        .expect("non-empty tree")
}

/// All vertices attaining the centroid weight (one or two of them).
pub fn centroids(t: &Tree) -> Vec<usize> {
    let weights = branch_weights(t);
    let best = weights.iter().copied().min().unwrap_or(0);
    (0..t.n()).filter(|&v| weights[v] == best).collect()
}

/// For each vertex, the largest component order of `T - v`.
pub fn branch_weights(t: &Tree) -> Vec<usize> {
    let n = t.n();
    let (parent, size) = t.subtree_sizes(0);
    (0..n)
        .map(|v| {
            let up = n - size[v];
            t.neighbors(v)
                .iter()
                .filter(|&&w| parent[w] == Some(v))
                .map(|&w| size[w])
                .max()
                .unwrap_or(0)
                .max(up)
        })
        .collect()
}

/// The two sides of `T - xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSplit {
    pub x: usize,
    pub y: usize,
    pub side_x: VertexSet,
    pub side_y: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub branch_vertex: usize,
    pub core_vertex: usize,
    pub component: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    pub branches: Vec<Branch>,
    pub core_vertices: VertexSet,
}

impl BranchReport {
    /// Number of k-branches hanging off `core`.
    pub fn branches_at(&self, core: usize) -> usize {
        self.branches
            .iter()
            .filter(|b| b.core_vertex == core)
            .count()
    }
}

/// Every edge split that leaves a component of order exactly `k`, per edge
/// (both sides are reported when both have order `k`).
pub fn k_branches(t: &Tree, k: usize) -> BranchReport {
    let n = t.n();
    let mut branches = Vec::new();
    let mut core_vertices = VertexSet::new(n);
    if k == 0 || k >= n {
        return BranchReport {
            branches,
            core_vertices,
        };
    }
    let (parent, size) = t.subtree_sizes(0);
    for (u, v) in t.edges() {
        let (child, par) = if parent[v] == Some(u) { (v, u) } else { (u, v) };
        // Report the lower-id endpoint's side first.
        let mut found = Vec::new();
        if size[child] == k {
            found.push((child, par));
        }
        if n - size[child] == k {
            found.push((par, child));
        }
        found.sort_unstable();
        for (b, c) in found {
            core_vertices.insert(c);
            branches.push(Branch {
                branch_vertex: b,
                core_vertex: c,
                component: t.side_of(b, c),
            });
        }
    }
    BranchReport {
        branches,
        core_vertices,
    }
}

/// Edges whose removal leaves two components of order at least `k + 1`.
pub fn large_edges(t: &Tree, k: usize) -> Vec<(usize, usize)> {
    let n = t.n();
    let (parent, size) = t.subtree_sizes(0);
    t.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let child = if parent[v] == Some(u) { v } else { u };
            let a = size[child];
            a > k && n - a > k
        })
        .collect()
}

/// A maximal connected set of core vertices with its bipartition, labelled so
/// that `b_k >= r_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSubtree {
    pub vertices: VertexSet,
    pub b_side: VertexSet,
    pub r_side: VertexSet,
    pub b_k: usize,
    pub r_k: usize,
}

/// Maximal core subtrees in order of their smallest vertex. When the branch
/// counts tie, `B` is the side holding the subtree's smallest vertex.
pub fn core_subtree_bipartition(t: &Tree, k: usize) -> Result<Vec<CoreSubtree>, TreeError> {
    let report = k_branches(t, k);
    if report.branches.is_empty() {
        return Err(TreeError::NoKBranch(k));
    }
    let n = t.n();
    let forest = t.induced_components(&report.core_vertices);
    let mut out = Vec::new();
    for comp in &forest.components {
        let (parent, order) = comp.tree.bfs(0);
        let mut depth = vec![0usize; comp.order()];
        for &v in &order {
            if let Some(p) = parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        let mut even = VertexSet::new(n);
        let mut odd = VertexSet::new(n);
        for (local, &orig) in comp.ids.iter().enumerate() {
            if depth[local] % 2 == 0 {
                even.insert(orig);
            } else {
                odd.insert(orig);
            }
        }
        let count = |side: &VertexSet| side.iter().map(|c| report.branches_at(c)).sum::<usize>();
        let (ce, co) = (count(&even), count(&odd));
        let (b_side, r_side, b_k, r_k) = if ce >= co {
            (even, odd, ce, co)
        } else {
            (odd, even, co, ce)
        };
        out.push(CoreSubtree {
            vertices: comp.vertex_set(n),
            b_side,
            r_side,
            b_k,
            r_k,
        });
    }
    Ok(out)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
