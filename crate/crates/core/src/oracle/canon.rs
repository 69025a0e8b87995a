//! AHU encodings: canonical strings for free and rooted trees, and the
//! isomorphisms they induce.

use crate::tree::{centroids, Tree};

/// Parenthesis encoding of every rooted subtree when `t` hangs from `root`.
fn rooted_codes(t: &Tree, root: usize) -> (Vec<String>, Vec<Vec<usize>>) {
    let (parent, order) = t.bfs(root);
    let mut children = vec![Vec::new(); t.n()];
    for &v in &order {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }
    let mut code = vec![String::new(); t.n()];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut children[v]);
        kids.sort_by(|&a, &b| code[a].cmp(&code[b]).then(a.cmp(&b)));
        let mut s = String::with_capacity(2 + kids.iter().map(|&c| code[c].len()).sum::<usize>());
        s.push('(');
        for &c in &kids {
            s.push_str(&code[c]);
        }
        s.push(')');
        code[v] = s;
        children[v] = kids;
    }
    (code, children)
}

/// Canonical encoding of `t` rooted at `root`.
pub fn rooted_canonical_form(t: &Tree, root: usize) -> String {
    rooted_codes(t, root).0.swap_remove(root)
}

/// Canonical string of a free tree: the smaller rooted encoding over its
/// centroids. Equal strings exactly when the trees are isomorphic.
pub fn canonical_form(t: &Tree) -> String {
    centroids(t)
        .into_iter()
        .map(|c| rooted_canonical_form(t, c))
        .min()
        .expect("every tree has a centroid")
}

/// A root-preserving isomorphism `a -> b`, if one exists.
pub fn rooted_isomorphism(a: &Tree, ra: usize, b: &Tree, rb: usize) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let (code_a, kids_a) = rooted_codes(a, ra);
    let (code_b, kids_b) = rooted_codes(b, rb);
    if code_a[ra] != code_b[rb] {
        return None;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut stack = vec![(ra, rb)];
    while let Some((u, v)) = stack.pop() {
        map[u] = v;
        // Children are sorted by code on both sides, so equal codes line up.
        for (&cu, &cv) in kids_a[u].iter().zip(&kids_b[v]) {
            debug_assert_eq!(code_a[cu], code_b[cv]);
            stack.push((cu, cv));
        }
    }
    Some(map)
}

/// Rebuilds a tree from a parenthesis encoding, numbering vertices in
/// preorder so the root is 0.
pub fn tree_from_code(code: &str) -> Option<Tree> {
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for ch in code.chars() {
        match ch {
            '(' => {
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                } else if next != 0 {
                    return None;
                }
                stack.push(next);
                next += 1;
            }
            ')' => {
                stack.pop()?;
            }
            _ => return None,
        }
    }
    if !stack.is_empty() {
        return None;
    }
    Tree::from_edges(next, &edges).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(t: &Tree, perm: &[usize]) -> Tree {
        let edges: Vec<_> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::from_edges(t.n(), &edges).unwrap()
    }

    #[test]
    fn relabelled_paths_share_a_form() {
        let p3 = Tree::path(3);
        let other = Tree::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_form(&p3), canonical_form(&other));
    }

    #[test]
    fn p4_and_claw_differ() {
        assert_ne!(
            canonical_form(&Tree::path(4)),
            canonical_form(&Tree::star(3))
        );
    }

    #[test]
    fn code_round_trip() {
        let t = Tree::spider(&[2, 1, 3]);
        let code = canonical_form(&t);
        let back = tree_from_code(&code).unwrap();
        assert_eq!(canonical_form(&back), code);
        assert!(tree_from_code("(()").is_none());
        assert!(tree_from_code("()()").is_none());
    }

    #[test]
    fn rooted_isomorphism_maps_edges() {
        let a = Tree::spider(&[2, 2, 1]);
        let perm = [4, 2, 0, 5, 1, 3];
        let b = relabel(&a, &perm);
        let map = rooted_isomorphism(&a, 0, &b, perm[0]).unwrap();
        for (u, v) in a.edges() {
            assert!(b.has_edge(map[u], map[v]));
        }
        assert_eq!(map[0], perm[0]);
        // A leaf root is not equivalent to the center root.
        assert!(rooted_isomorphism(&a, 0, &b, perm[5]).is_none());
    }
}
