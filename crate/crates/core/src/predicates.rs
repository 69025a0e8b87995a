//! Isolation specifications and the certifiers that check sets and colorings
//! against them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::VertexSet;
use crate::tree::{remnant, Tree};

/// What a remnant component must not contain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolationSpec {
    /// No component of order `k` or more.
    AllK(usize),
    /// No copy of `K_{1,k-1}`, i.e. no vertex of degree `k - 1` or more.
    Star(usize),
    /// No (not necessarily induced) copy of the pattern tree.
    Pattern(Tree),
}

impl IsolationSpec {
    /// `P_k` isolation, which differs from `AllK(k)`.
    pub fn path(k: usize) -> IsolationSpec {
        IsolationSpec::Pattern(Tree::path(k))
    }

    /// Order of the smallest forbidden structure.
    pub fn forbidden_order(&self) -> usize {
        match self {
            IsolationSpec::AllK(k) | IsolationSpec::Star(k) => *k,
            IsolationSpec::Pattern(f) => f.n(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            IsolationSpec::AllK(0) => Err("all-k isolation needs k >= 1".into()),
            IsolationSpec::Star(k) if *k < 2 => Err("star isolation needs k >= 2".into()),
            _ => Ok(()),
        }
    }
}

/// Whether a connected remnant component breaks the specification.
pub fn component_violates(spec: &IsolationSpec, component: &Tree) -> bool {
    match spec {
        IsolationSpec::AllK(k) => component.n() >= *k,
        IsolationSpec::Star(k) => component.max_degree() + 1 >= *k,
        IsolationSpec::Pattern(f) => subtree_contains(component, f),
    }
}

/// True iff `pattern` is isomorphic to a subgraph of `host`.
pub fn subtree_contains(host: &Tree, pattern: &Tree) -> bool {
    find_embedding(host, pattern).is_some()
}

/// An injective map `pattern vertex -> host vertex` carrying edges to edges.
///
/// Rooted-tree dynamic programming: the pattern is rooted at 0 and
/// `fits(u, h, hp)` asks whether the pattern subtree under `u` maps into the
/// host with `u -> h`, avoiding the host neighbor `hp` used by `u`'s parent.
/// Children are placed by maximum bipartite matching.
pub fn find_embedding(host: &Tree, pattern: &Tree) -> Option<Vec<usize>> {
    if pattern.n() > host.n() {
        return None;
    }
    let (parent, order) = pattern.bfs(0);
    let mut children = vec![Vec::new(); pattern.n()];
    for &v in &order {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }
    let mut ctx = EmbedCtx {
        host,
        children: &children,
        memo: HashMap::new(),
    };
    let root_host = (0..host.n()).find(|&h| ctx.fits(0, h, NO_PARENT))?;
    let mut map = vec![usize::MAX; pattern.n()];
    ctx.place(0, root_host, NO_PARENT, &mut map);
    Some(map)
}

const NO_PARENT: usize = usize::MAX;

struct EmbedCtx<'a> {
    host: &'a Tree,
    children: &'a [Vec<usize>],
    memo: HashMap<(usize, usize, usize), bool>,
}

impl EmbedCtx<'_> {
    fn candidates(&self, h: usize, hp: usize) -> Vec<usize> {
        self.host
            .neighbors(h)
            .iter()
            .copied()
            .filter(|&g| g != hp)
            .collect()
    }

    fn fits(&mut self, u: usize, h: usize, hp: usize) -> bool {
        if let Some(&r) = self.memo.get(&(u, h, hp)) {
            return r;
        }
        let kids = self.children[u].clone();
        let cands = self.candidates(h, hp);
        let ok = kids.len() <= cands.len() && {
            let allowed: Vec<Vec<bool>> = kids
                .iter()
                .map(|&c| cands.iter().map(|&g| self.fits(c, g, h)).collect())
                .collect();
            max_matching(&allowed, cands.len())
                .iter()
                .all(Option::is_some)
        };
        self.memo.insert((u, h, hp), ok);
        ok
    }

    fn place(&mut self, u: usize, h: usize, hp: usize, map: &mut [usize]) {
        map[u] = h;
        let kids = self.children[u].clone();
        let cands = self.candidates(h, hp);
        let allowed: Vec<Vec<bool>> = kids
            .iter()
            .map(|&c| cands.iter().map(|&g| self.fits(c, g, h)).collect())
            .collect();
        let matching = max_matching(&allowed, cands.len());
        for (i, &c) in kids.iter().enumerate() {
            let g = cands[matching[i].expect("fits() guaranteed a perfect matching")];
            self.place(c, g, h, map);
        }
    }
}

/// Kuhn's augmenting paths, scanning left vertices and their options in index
/// order. Returns the right partner of each left vertex.
fn max_matching(allowed: &[Vec<bool>], right: usize) -> Vec<Option<usize>> {
    fn augment(
        l: usize,
        allowed: &[Vec<bool>],
        seen: &mut [bool],
        right_of: &mut [Option<usize>],
    ) -> bool {
        for r in 0..right_of.len() {
            if allowed[l][r] && !seen[r] {
                seen[r] = true;
                if right_of[r].is_none_or(|other| augment(other, allowed, seen, right_of)) {
                    right_of[r] = Some(l);
                    return true;
                }
            }
        }
        false
    }
    let mut right_of = vec![None; right];
    for l in 0..allowed.len() {
        let mut seen = vec![false; right];
        augment(l, allowed, &mut seen, &mut right_of);
    }
    let mut left_of = vec![None; allowed.len()];
    for (r, l) in right_of.iter().enumerate() {
        if let Some(l) = l {
            left_of[*l] = Some(r);
        }
    }
    left_of
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A remnant component containing a forbidden structure.
    RemnantComponent,
    /// Two adjacent vertices in the same set or color class.
    AdjacentPair,
    /// Coloring length or color range is wrong.
    Malformed,
    /// A feasible selection with fewer vertices in a gadget than required.
    SparseHit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<usize>,
    pub vertices: Vec<usize>,
}

/// A validity flag with the witnesses that refute it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
}

impl Certificate {
    pub fn from_violations(violations: Vec<Violation>) -> Certificate {
        Certificate {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn ok() -> Certificate {
        Self::from_violations(Vec::new())
    }
}

pub fn is_isolating(t: &Tree, s: &VertexSet, spec: &IsolationSpec) -> Certificate {
    Certificate::from_violations(isolation_violations(t, s, spec, None))
}

fn isolation_violations(
    t: &Tree,
    s: &VertexSet,
    spec: &IsolationSpec,
    color: Option<usize>,
) -> Vec<Violation> {
    remnant(t, s)
        .components
        .into_iter()
        .filter(|c| component_violates(spec, &c.tree))
        .map(|c| Violation {
            kind: ViolationKind::RemnantComponent,
            color,
            vertices: c.ids,
        })
        .collect()
}

pub fn is_independent(t: &Tree, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| t.neighbors(v).iter().all(|&w| !s.contains(w)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} has color {color}, outside 1..={num_colors}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        num_colors: usize,
    },
    #[error("coloring has {got} entries, tree has {expected} vertices")]
    WrongLength { got: usize, expected: usize },
}

/// A total assignment of colors `1..=num_colors`; classes may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub num_colors: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(num_colors: usize, colors: Vec<usize>) -> Result<Coloring, ColoringError> {
        if let Some((vertex, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > num_colors)
        {
            return Err(ColoringError::ColorOutOfRange {
                vertex,
                color,
                num_colors,
            });
        }
        Ok(Coloring { num_colors, colors })
    }

    pub fn class(&self, color: usize) -> VertexSet {
        VertexSet::from_iter(
            self.colors.len(),
            self.colors
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == color)
                .map(|(v, _)| v),
        )
    }

    pub fn is_proper(&self, t: &Tree) -> bool {
        t.edges()
            .iter()
            .all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Number of distinct colors on the open neighborhood of `v`.
    pub fn colors_seen(&self, t: &Tree, v: usize) -> usize {
        let mut seen = vec![false; self.num_colors + 1];
        t.neighbors(v)
            .iter()
            .filter(|&&w| !std::mem::replace(&mut seen[self.colors[w]], true))
            .count()
    }
}

/// Proper, and every class isolating for `spec`.
pub fn certify_coloring(t: &Tree, c: &Coloring, spec: &IsolationSpec) -> Certificate {
    if c.colors.len() != t.n() {
        return Certificate::from_violations(vec![Violation {
            kind: ViolationKind::Malformed,
            color: None,
            vertices: Vec::new(),
        }]);
    }
    let mut violations = Vec::new();
    for (v, &col) in c.colors.iter().enumerate() {
        if col == 0 || col > c.num_colors {
            violations.push(Violation {
                kind: ViolationKind::Malformed,
                color: Some(col),
                vertices: vec![v],
            });
        }
    }
    if !violations.is_empty() {
        return Certificate::from_violations(violations);
    }
    for (u, v) in t.edges() {
        if c.colors[u] == c.colors[v] {
            violations.push(Violation {
                kind: ViolationKind::AdjacentPair,
                color: Some(c.colors[u]),
                vertices: vec![u, v],
            });
        }
    }
    for color in 1..=c.num_colors {
        violations.extend(isolation_violations(t, &c.class(color), spec, Some(color)));
    }
    Certificate::from_violations(violations)
}

/// Every vertex sees `min(deg(v), num_colors - 1)` colors on its neighbors.
pub fn is_dynamic(t: &Tree, c: &Coloring) -> bool {
    (0..t.n()).all(|v| c.colors_seen(t, v) == t.degree(v).min(c.num_colors - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, v.iter().copied())
    }

    /// Exhaustive injective-map search: the independent oracle for containment.
    fn brute_contains(host: &Tree, pattern: &Tree) -> bool {
        fn extend(host: &Tree, pattern: &Tree, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let u = map.len();
            if u == pattern.n() {
                return true;
            }
            for h in 0..host.n() {
                if used[h] {
                    continue;
                }
                let ok = pattern
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| w < u)
                    .all(|&w| host.has_edge(map[w], h));
                if ok {
                    used[h] = true;
                    map.push(h);
                    if extend(host, pattern, map, used) {
                        return true;
                    }
                    map.pop();
                    used[h] = false;
                }
            }
            false
        }
        extend(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
    }

    #[test]
    fn component_violation_examples() {
        assert!(!component_violates(&IsolationSpec::AllK(3), &Tree::path(2)));
        assert!(!component_violates(&IsolationSpec::Star(4), &Tree::path(5)));
        assert!(component_violates(&IsolationSpec::Star(4), &Tree::star(3)));
        assert!(!component_violates(&IsolationSpec::path(4), &Tree::star(5)));
        assert!(!brute_contains(&Tree::star(5), &Tree::path(4)));
    }

    #[test]
    fn containment_examples() {
        assert!(subtree_contains(&Tree::path(5), &Tree::path(3)));
        assert!(!subtree_contains(&Tree::path(5), &Tree::star(3)));
        let o7 = Tree::spider(&[2, 2, 2]);
        assert!(subtree_contains(&o7, &Tree::path(5)));
        assert!(brute_contains(&o7, &Tree::path(5)));
        assert!(!subtree_contains(&o7, &Tree::path(6)));
    }

    #[test]
    fn embeddings_are_valid_maps() {
        let host = Tree::spider(&[3, 2, 2, 1]);
        let pattern = Tree::spider(&[2, 2, 1]);
        let map = find_embedding(&host, &pattern).unwrap();
        let mut image = map.clone();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), pattern.n());
        for (u, v) in pattern.edges() {
            assert!(host.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn containment_agrees_with_brute_force_on_spiders() {
        let hosts = [
            Tree::spider(&[1, 1, 1, 1]),
            Tree::spider(&[2, 2, 2]),
            Tree::spider(&[3, 1, 2]),
            Tree::path(7),
        ];
        let patterns = [
            Tree::path(4),
            Tree::star(3),
            Tree::spider(&[2, 1, 1]),
            Tree::star(4),
            Tree::path(5),
        ];
        for h in &hosts {
            for p in &patterns {
                assert_eq!(subtree_contains(h, p), brute_contains(h, p), "{h:?} {p:?}");
            }
        }
    }

    #[test]
    fn isolating_examples() {
        let p7 = Tree::path(7);
        assert!(is_isolating(&p7, &set(7, &[3]), &IsolationSpec::AllK(3)).valid);
        let cert = is_isolating(&p7, &VertexSet::new(7), &IsolationSpec::AllK(3));
        assert!(!cert.valid);
        assert_eq!(cert.violations[0].vertices, (0..7).collect::<Vec<_>>());
        for spec in [
            IsolationSpec::AllK(1),
            IsolationSpec::Star(2),
            IsolationSpec::path(2),
        ] {
            assert!(is_isolating(&p7, &VertexSet::full(7), &spec).valid);
        }
    }

    #[test]
    fn independence_examples() {
        let p5 = Tree::path(5);
        assert!(is_independent(&p5, &set(5, &[0, 2, 4])));
        assert!(!is_independent(&p5, &set(5, &[1, 2])));
        assert!(is_independent(&p5, &VertexSet::new(5)));
    }

    #[test]
    fn coloring_certificates() {
        let p5 = Tree::path(5);
        let c = Coloring::new(3, vec![1, 2, 3, 1, 2]).unwrap();
        assert!(certify_coloring(&p5, &c, &IsolationSpec::AllK(2)).valid);

        let p3 = Tree::path(3);
        let c = Coloring::new(4, vec![1, 2, 3]).unwrap();
        let cert = certify_coloring(&p3, &c, &IsolationSpec::AllK(3));
        assert!(!cert.valid);
        assert_eq!(cert.violations[0].color, Some(4));
        assert_eq!(cert.violations[0].vertices, vec![0, 1, 2]);

        let c = Coloring::new(3, vec![1, 1, 2]).unwrap();
        let cert = certify_coloring(&p3, &c, &IsolationSpec::AllK(3));
        assert!(cert
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::AdjacentPair && v.vertices == vec![0, 1]));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = Certificate::from_violations(vec![Violation {
            kind: ViolationKind::RemnantComponent,
            color: Some(2),
            vertices: vec![0, 1],
        }]);
        assert_eq!(
            serde_json::to_string(&cert).unwrap(),
            r#"{"valid":false,"violations":[{"kind":"remnant_component","color":2,"vertices":[0,1]}]}"#
        );
    }

    #[test]
    fn dynamic_examples() {
        let p3 = Tree::path(3);
        assert!(!is_dynamic(&p3, &Coloring::new(3, vec![1, 2, 1]).unwrap()));
        assert!(is_dynamic(&p3, &Coloring::new(3, vec![1, 2, 3]).unwrap()));
        let k13 = Tree::star(3);
        assert!(is_dynamic(
            &k13,
            &Coloring::new(4, vec![1, 2, 3, 4]).unwrap()
        ));
    }

    #[test]
    fn rejects_out_of_range_colors() {
        assert!(Coloring::new(3, vec![1, 4]).is_err());
        assert!(Coloring::new(3, vec![0, 1]).is_err());
    }
}
