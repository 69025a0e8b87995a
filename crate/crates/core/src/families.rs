//! Named tree families: extremal trees with pendant order-k attachments, the
//! spider gadgets that cap disjoint path-isolating families, and the gadget
//! separating independent from ordinary isolation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::mask::MaskChecker;
use crate::oracle::Caps;
use crate::predicates::{Certificate, IsolationSpec, Violation, ViolationKind};
use crate::tree::{Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(
        "need one attachment per base vertex: {base} base vertices, {attachments} attachments"
    )]
    AttachmentCount { base: usize, attachments: usize },
    #[error("attachment {index} has order {order}, expected {k}")]
    AttachmentOrder {
        index: usize,
        order: usize,
        k: usize,
    },
    #[error("attachment {index} has no vertex {root}")]
    AttachmentRoot { index: usize, root: usize },
    #[error("k = {k} is below the minimum {min}")]
    KTooSmall { k: usize, min: usize },
    #[error("b must be at least 1")]
    NoCopies,
    #[error("gadget root {root} is outside a pattern of order {order}")]
    PatternRoot { root: usize, order: usize },
    #[error("instance of order {n} exceeds the cap of {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A tree of order `k` joined to its base vertex through `root`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub tree: Tree,
    #[serde(default)]
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecipe {
    pub k: usize,
    pub base: Tree,
    /// `attachments[v]` hangs off base vertex `v`.
    pub attachments: Vec<Attachment>,
}

impl ExtremalRecipe {
    /// Every base vertex gets the same attachment.
    pub fn uniform(base: Tree, attachment: Attachment) -> ExtremalRecipe {
        let k = attachment.tree.n();
        let attachments = vec![attachment; base.n()];
        ExtremalRecipe {
            k,
            base,
            attachments,
        }
    }
}

/// Base vertices keep ids `0..m`; attachment `i` occupies `m + i*k .. m + (i+1)*k`.
pub fn gen_extremal(recipe: &ExtremalRecipe) -> Result<Tree, FamilyError> {
    let (m, k) = (recipe.base.n(), recipe.k);
    if recipe.attachments.len() != m {
        return Err(FamilyError::AttachmentCount {
            base: m,
            attachments: recipe.attachments.len(),
        });
    }
    let mut edges = recipe.base.edges();
    for (i, a) in recipe.attachments.iter().enumerate() {
        if a.tree.n() != k {
            return Err(FamilyError::AttachmentOrder {
                index: i,
                order: a.tree.n(),
                k,
            });
        }
        if a.root >= k {
            return Err(FamilyError::AttachmentRoot {
                index: i,
                root: a.root,
            });
        }
        let offset = m + i * k;
        edges.extend(
            a.tree
                .edges()
                .into_iter()
                .map(|(u, v)| (u + offset, v + offset)),
        );
        edges.push((i, offset + a.root));
    }
    Ok(Tree::from_edges(m * (k + 1), &edges)?)
}

/// One base vertex with the vertex set of its pendant attachment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantPiece {
    pub base_vertex: usize,
    /// The attachment vertex adjacent to `base_vertex`.
    pub root: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<PendantPiece>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Decides whether `t` is a base tree with one pendant order-`k` tree per base
/// vertex, returning the decomposition when it is.
///
/// Rooted at a base vertex, a vertex `u` is a valid base vertex exactly when
/// one child subtree has order `k` (its attachment) and every other child is
/// itself a valid base vertex. A child subtree of order `k` can never be a
/// base part, since base parts have order divisible by `k + 1`.
pub fn is_member_tk(t: &Tree, k: usize) -> Result<Membership, FamilyError> {
    if k < 2 {
        return Err(FamilyError::KTooSmall { k, min: 2 });
    }
    let n = t.n();
    if !n.is_multiple_of(k + 1) {
        return Ok(Membership {
            member: false,
            pieces: Vec::new(),
            reason: Some(format!("order {n} is not a multiple of {}", k + 1)),
        });
    }
    for r in 0..n {
        let (parent, order) = t.bfs(r);
        let mut size = vec![1usize; n];
        let mut valid = vec![false; n];
        for &u in order.iter().rev() {
            let kids = t.neighbors(u).iter().filter(|&&c| parent[c] == Some(u));
            let mut pendants = 0;
            let mut ok = true;
            for &c in kids {
                size[u] += size[c];
                if size[c] == k {
                    pendants += 1;
                } else if !valid[c] {
                    ok = false;
                }
            }
            valid[u] = ok && pendants == 1;
        }
        if !valid[r] {
            continue;
        }
        let mut pieces = Vec::new();
        let mut stack = vec![r];
        while let Some(u) = stack.pop() {
            for &c in t.neighbors(u) {
                if parent[c] != Some(u) {
                    continue;
                }
                if size[c] == k {
                    let mut vertices = t.side_of(c, u).to_vec();
                    vertices.sort_unstable();
                    pieces.push(PendantPiece {
                        base_vertex: u,
                        root: c,
                        vertices,
                    });
                } else {
                    stack.push(c);
                }
            }
        }
        pieces.sort_by_key(|p| p.base_vertex);
        return Ok(Membership {
            member: true,
            pieces,
            reason: None,
        });
    }
    Ok(Membership {
        member: false,
        pieces: Vec::new(),
        reason: Some("no vertex roots a base/pendant decomposition".into()),
    })
}

/// Spider gadget whose path-isolating sets are expensive away from its center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpiderGadget {
    pub k: usize,
    pub tree: Tree,
    pub center: usize,
    /// Leg lengths, leg 0 first.
    pub legs: Vec<usize>,
    /// End of leg 0, the vertex joined to the host tree.
    pub w: usize,
}

/// Three legs of `(k-1)/2` for odd `k`; legs `k/2, k/2, k/2 - 1` for even `k`.
/// Order `(3k-1)/2` or `3k/2`; center 0, `w` ends a longest leg.
pub fn gen_counterexample_hk(k: usize) -> Result<SpiderGadget, FamilyError> {
    if k < 7 {
        return Err(FamilyError::KTooSmall { k, min: 7 });
    }
    let legs = if k % 2 == 1 {
        vec![(k - 1) / 2; 3]
    } else {
        vec![k / 2, k / 2, k / 2 - 1]
    };
    let tree = Tree::spider(&legs);
    Ok(SpiderGadget {
        k,
        w: legs[0],
        tree,
        center: 0,
        legs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub k: usize,
    pub gadget_order: usize,
    pub host_order: usize,
    /// `N[center]` plus the host neighbor of `w`, in joined-tree ids.
    pub privileged: Vec<usize>,
    /// Fewest gadget vertices in a feasible selection avoiding `privileged`.
    pub min_gadget_hits_off_privileged: usize,
    /// Fewest gadget vertices in any feasible selection.
    pub min_gadget_hits: usize,
    /// `5 + floor((|gadget| - 5) / 2)`.
    pub family_bound: usize,
    /// `floor((3k + 10) / 4)`.
    pub ceiling: usize,
    pub certificate: Certificate,
}

/// Joins the gadget's `w` to vertex 0 of `host` and checks, over every
/// selection `Y` of gadget vertices plus the host neighbor `u` of `w`, that
/// whenever `Y` together with the rest of the host is `P_k`-isolating, `Y`
/// meets the gadget, and meets it twice if it avoids `N[center] ∪ {u}`.
///
/// Gadget vertices keep their ids; host vertex `i` becomes `|gadget| + i`.
pub fn verify_hk_key_observation(k: usize, host: &Tree) -> Result<GadgetReport, FamilyError> {
    let gadget = gen_counterexample_hk(k)?;
    let h = gadget.tree.n();
    if host.n() > 4 {
        return Err(FamilyError::AboveCap {
            n: host.n(),
            cap: 4,
        });
    }
    let cap = Caps::current().oracle;
    if h + 1 > cap {
        return Err(FamilyError::AboveCap { n: h + 1, cap });
    }
    let n = h + host.n();
    let mut edges = gadget.tree.edges();
    edges.extend(host.edges().into_iter().map(|(a, b)| (a + h, b + h)));
    let u = h;
    edges.push((gadget.w, u));
    let joined = Tree::from_edges(n, &edges)?;

    let spec = IsolationSpec::path(k);
    let checker = MaskChecker::new(&joined, &spec);
    let gadget_mask: u64 = (1u64 << h) - 1;
    let host_rest: u64 = ((1u64 << n) - 1) & !gadget_mask & !(1u64 << u);
    let mut privileged_mask = 1u64 << gadget.center | 1u64 << u;
    for &x in joined.neighbors(gadget.center) {
        privileged_mask |= 1 << x;
    }
    let universe = gadget_mask | 1 << u;

    let mut violations = Vec::new();
    let mut min_off = usize::MAX;
    let mut min_any = usize::MAX;
    let mut y = 0u64;
    loop {
        if checker.isolates(y | host_rest) {
            let hits = (y & gadget_mask).count_ones() as usize;
            min_any = min_any.min(hits);
            let off = y & privileged_mask == 0;
            if off {
                min_off = min_off.min(hits);
            }
            if hits == 0 || (off && hits < 2) {
                violations.push(Violation {
                    kind: ViolationKind::SparseHit,
                    color: None,
                    vertices: (0..n).filter(|&v| y >> v & 1 == 1).collect(),
                });
            }
        }
        // Next subset of `universe`.
        y = (y.wrapping_sub(universe)) & universe;
        if y == 0 {
            break;
        }
    }
    Ok(GadgetReport {
        k,
        gadget_order: h,
        host_order: host.n(),
        privileged: (0..n).filter(|&v| privileged_mask >> v & 1 == 1).collect(),
        min_gadget_hits_off_privileged: min_off,
        min_gadget_hits: min_any,
        family_bound: 5 + (h - 5) / 2,
        ceiling: (3 * k + 10) / 4,
        certificate: Certificate::from_violations(violations),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapGadgetRecipe {
    pub pattern: Tree,
    #[serde(default)]
    pub root: usize,
    pub b: usize,
}

/// `x = 0`, `y = 1`, edge `xy`, then `2b` copies of the pattern; copies
/// `0..b` hang off `x` and copies `b..2b` off `y`, each through its root.
pub fn gen_gap_gadget(recipe: &GapGadgetRecipe) -> Result<Tree, FamilyError> {
    if recipe.b == 0 {
        return Err(FamilyError::NoCopies);
    }
    let f = recipe.pattern.n();
    if recipe.root >= f {
        return Err(FamilyError::PatternRoot {
            root: recipe.root,
            order: f,
        });
    }
    let mut edges = vec![(0, 1)];
    for copy in 0..2 * recipe.b {
        let offset = 2 + copy * f;
        edges.extend(
            recipe
                .pattern
                .edges()
                .into_iter()
                .map(|(a, b)| (a + offset, b + offset)),
        );
        let hub = if copy < recipe.b { 0 } else { 1 };
        edges.push((hub, offset + recipe.root));
    }
    Ok(Tree::from_edges(2 + 2 * recipe.b * f, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_trees, min_isolating_set};

    fn pendant(tree: Tree, root: usize) -> Attachment {
        Attachment { tree, root }
    }

    #[test]
    fn extremal_examples() {
        let t = gen_extremal(&ExtremalRecipe::uniform(
            Tree::single(),
            pendant(Tree::path(2), 0),
        ))
        .unwrap();
        assert!(t.is_path() && t.n() == 3);
        let t = gen_extremal(&ExtremalRecipe::uniform(
            Tree::path(2),
            pendant(Tree::path(3), 0),
        ))
        .unwrap();
        assert_eq!(t.n(), 8);
        let z = min_isolating_set(&t, &IsolationSpec::AllK(3), false).unwrap();
        assert_eq!(z.value, 2);
        let bad = ExtremalRecipe {
            k: 3,
            base: Tree::single(),
            attachments: vec![pendant(Tree::path(2), 0)],
        };
        assert!(matches!(
            gen_extremal(&bad),
            Err(FamilyError::AttachmentOrder { .. })
        ));
    }

    #[test]
    fn generated_trees_are_members() {
        for base in enumerate_trees(4).unwrap() {
            for (f, root) in [(Tree::path(3), 1), (Tree::star(2), 0), (Tree::path(3), 0)] {
                let t =
                    gen_extremal(&ExtremalRecipe::uniform(base.clone(), pendant(f, root))).unwrap();
                let m = is_member_tk(&t, 3).unwrap();
                assert!(m.member, "{t:?}");
                assert_eq!(m.pieces.len(), base.n());
                assert!(m.pieces.iter().all(|p| p.vertices.len() == 3));
            }
        }
    }

    #[test]
    fn membership_quick_answers() {
        let m = is_member_tk(&Tree::path(3), 2).unwrap();
        assert!(m.member);
        assert_eq!(m.pieces.len(), 1);
        assert!(!is_member_tk(&Tree::path(5), 2).unwrap().member);
        // Spider with three legs of 2: order 7, not a multiple of 3.
        assert!(!is_member_tk(&Tree::spider(&[2, 2, 2]), 2).unwrap().member);
        // Star K_{1,5}: order 6 but no pendant P_2.
        assert!(!is_member_tk(&Tree::star(5), 2).unwrap().member);
        assert!(is_member_tk(&Tree::path(6), 2).unwrap().member);
    }

    #[test]
    fn spider_orders() {
        let h7 = gen_counterexample_hk(7).unwrap();
        assert_eq!(h7.tree.n(), 10);
        assert_eq!(h7.legs, vec![3, 3, 3]);
        assert_eq!(h7.tree.degree(h7.w), 1);
        let h8 = gen_counterexample_hk(8).unwrap();
        assert_eq!(h8.tree.n(), 12);
        assert_eq!(h8.legs, vec![4, 4, 3]);
        assert!(gen_counterexample_hk(6).is_err());
        for k in 7..=14 {
            let h = gen_counterexample_hk(k).unwrap();
            let expected = if k % 2 == 1 {
                (3 * k - 1) / 2
            } else {
                3 * k / 2
            };
            assert_eq!(h.tree.n(), expected);
        }
    }

    #[test]
    fn key_observation_on_small_hosts() {
        for k in [7, 8] {
            for host in [Tree::single(), Tree::path(2), Tree::star(3)] {
                let r = verify_hk_key_observation(k, &host).unwrap();
                assert!(r.certificate.valid, "k={k} {host:?}");
                assert_eq!(r.privileged.len(), 5);
                assert!(r.family_bound <= r.ceiling && r.ceiling < k + 1);
            }
        }
        let r = verify_hk_key_observation(7, &Tree::single()).unwrap();
        assert_eq!((r.family_bound, r.min_gadget_hits_off_privileged), (7, 2));
        assert_eq!(
            verify_hk_key_observation(8, &Tree::single())
                .unwrap()
                .family_bound,
            8
        );
    }

    #[test]
    fn gap_gadget_shape() {
        let recipe = GapGadgetRecipe {
            pattern: Tree::path(2),
            root: 0,
            b: 2,
        };
        let t = gen_gap_gadget(&recipe).unwrap();
        assert_eq!(t.n(), 10);
        assert_eq!(t.degree(0), 3);
        assert_eq!(t.degree(1), 3);
        assert!(gen_gap_gadget(&GapGadgetRecipe { b: 0, ..recipe }).is_err());
    }

    #[test]
    fn recipes_round_trip_json() {
        let recipe = ExtremalRecipe::uniform(Tree::path(2), pendant(Tree::path(3), 1));
        let text = serde_json::to_string(&recipe).unwrap();
        let back: ExtremalRecipe = serde_json::from_str(&text).unwrap();
        assert_eq!(back, recipe);
        let gap: GapGadgetRecipe =
            serde_json::from_str(r#"{"pattern":{"n":2,"edges":[[0,1]]},"b":3}"#).unwrap();
        assert_eq!(gen_gap_gadget(&gap).unwrap().n(), 14);
    }
}
