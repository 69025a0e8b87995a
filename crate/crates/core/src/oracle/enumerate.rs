//! Exhaustive non-isomorphic tree enumeration and random labelled trees.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::{canonical_form, tree_from_code};
use super::{Caps, OracleError};
use crate::tree::Tree;

/// One representative per isomorphism class of trees of order `n`, sorted by
/// canonical string. Representatives are rebuilt from their canonical code,
/// so the root centroid is vertex 0.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>, OracleError> {
    let cap = Caps::current().enumerate;
    if n == 0 || n > cap {
        return Err(OracleError::AboveCap { n, cap });
    }
    let mut level: BTreeSet<String> = BTreeSet::from([canonical_form(&Tree::single())]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let t = tree_from_code(code).expect("stored codes decode");
            let mut edges = t.edges();
            for v in 0..t.n() {
                edges.push((v, t.n()));
                let grown =
                    Tree::from_edges(t.n() + 1, &edges).expect("adding a leaf keeps a tree");
                next.insert(canonical_form(&grown));
                edges.pop();
            }
        }
        level = next;
    }
    Ok(level
        .iter()
        .map(|code| tree_from_code(code).expect("stored codes decode"))
        .collect())
}

/// All non-isomorphic trees with `1 <= order <= max_n`, smallest first.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<Tree>, OracleError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_trees(n)?);
    }
    Ok(out)
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
pub fn prufer_decode(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    Tree::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Prüfer sequence of a tree with at least two vertices.
pub fn prufer_encode(t: &Tree) -> Vec<usize> {
    let n = t.n();
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n.saturating_sub(2));
    while seq.len() + 2 < n {
        let Reverse(leaf) = leaves.pop().expect("trees have leaves");
        removed[leaf] = true;
        let nb = *t
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("a leaf has one live neighbor");
        seq.push(nb);
        degree[nb] -= 1;
        if degree[nb] == 1 {
            leaves.push(Reverse(nb));
        }
    }
    seq
}

/// Uniform labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    match n {
        0 | 1 => Tree::single(),
        2 => Tree::path(2),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4).unwrap().len(), 2);
        let counts: Vec<usize> = (1..=10)
            .map(|n| enumerate_trees(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(enumerate_trees(11).is_err());
    }

    #[test]
    fn seven_vertex_classes_match_prufer_dedup() {
        // Independent route: every labelled tree on 7 vertices, deduplicated
        // by pairwise rooted-isomorphism checks rather than string equality.
        let n: usize = 7;
        let mut reps: Vec<Tree> = Vec::new();
        let total = n.pow(n as u32 - 2);
        for code in 0..total {
            let mut seq = Vec::with_capacity(n - 2);
            let mut c = code;
            for _ in 0..n - 2 {
                seq.push(c % n);
                c /= n;
            }
            let t = prufer_decode(&seq);
            let known = reps.iter().any(|r| {
                (0..n).any(|root| super::super::canon::rooted_isomorphism(&t, 0, r, root).is_some())
            });
            if !known {
                reps.push(t);
            }
        }
        assert_eq!(reps.len(), enumerate_trees(7).unwrap().len());
        assert_eq!(reps.len(), 11);
    }

    #[test]
    fn enumerated_classes_are_distinct() {
        let trees = enumerate_trees(8).unwrap();
        let forms: HashSet<String> = trees.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), trees.len());
    }

    #[test]
    fn prufer_round_trip() {
        for seed in 0..50 {
            let t = random_tree(12, seed);
            assert_eq!(prufer_decode(&prufer_encode(&t)), t);
        }
    }

    #[test]
    fn random_tree_is_deterministic() {
        assert_eq!(random_tree(2, 7), Tree::path(2));
        assert_eq!(random_tree(30, 99), random_tree(30, 99));
        assert_ne!(random_tree(30, 99), random_tree(30, 100));
    }

    #[test]
    fn random_tree_is_uniform_over_buckets() {
        // 9^7 labelled trees hashed into 16 buckets by their Prüfer code.
        let buckets = 16usize;
        let samples = 10_000usize;
        let mut counts = vec![0usize; buckets];
        for seed in 0..samples as u64 {
            let seq = prufer_encode(&random_tree(9, seed));
            let code = seq.iter().fold(0usize, |acc, &v| acc * 9 + v);
            counts[code % buckets] += 1;
        }
        let total = 9usize.pow(7);
        for (b, &c) in counts.iter().enumerate() {
            let size = (0..total).filter(|x| x % buckets == b).count();
            let p = size as f64 / total as f64;
            let mean = samples as f64 * p;
            let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (c as f64 - mean).abs() <= 5.0 * sigma,
                "bucket {b}: {c} vs {mean}"
            );
        }
    }
}
