//! Brute-force optimum isolating sets and disjoint isolating families.

use std::collections::HashSet;

use super::mask::{bits, MaskChecker};
use super::{Caps, DisjointFamilyResult, OracleError, SolveResult};
use crate::predicates::IsolationSpec;
use crate::set::VertexSet;
use crate::tree::Tree;

fn cap_for(spec: &IsolationSpec) -> usize {
    let caps = Caps::current();
    match spec {
        IsolationSpec::Pattern(_) => caps.oracle_pattern,
        _ => caps.oracle,
    }
}

/// Minimum (independent) isolating set by iterative deepening on the size.
///
/// Each level branches on the vertices able to dominate a forbidden witness in
/// the current remnant: an extension that dominates none of them leaves the
/// witness intact. The first level with a solution is optimal.
pub fn min_isolating_set(
    t: &Tree,
    spec: &IsolationSpec,
    independent: bool,
) -> Result<SolveResult, OracleError> {
    let cap = cap_for(spec);
    if t.n() > cap {
        return Err(OracleError::AboveCap { n: t.n(), cap });
    }
    spec.validate().map_err(OracleError::BadSpec)?;
    let checker = MaskChecker::new(t, spec);
    for budget in 0..=t.n() {
        let mut failed = HashSet::new();
        if let Some(s) = deepen(&checker, 0, budget, independent, &mut failed) {
            return Ok(SolveResult {
                value: s.count_ones() as usize,
                witness: VertexSet::from_mask(t.n(), s),
            });
        }
    }
    unreachable!("the whole vertex set (or a maximal independent set) always isolates")
}

fn deepen(
    checker: &MaskChecker<'_>,
    s: u64,
    budget: usize,
    independent: bool,
    failed: &mut HashSet<u64>,
) -> Option<u64> {
    let Some(witness) = checker.violation(s) else {
        return Some(s);
    };
    if budget == 0 || failed.contains(&s) {
        return None;
    }
    let hitters = checker.neighborhood(witness) & !s;
    for v in bits(hitters) {
        if independent && checker.adj(v) & s != 0 {
            continue;
        }
        if let Some(found) = deepen(checker, s | 1 << v, budget - 1, independent, failed) {
            return Some(found);
        }
    }
    failed.insert(s);
    None
}

/// Largest `p <= p_cap` such that `p` pairwise-disjoint non-empty isolating
/// sets exist, with one such family.
///
/// Any vertex left out of a family can join one of its sets without breaking
/// isolation, so the search only looks at partitions of the vertex set into
/// exactly `p` classes. Classes open in increasing order of their smallest
/// vertex, and a branch dies as soon as some class could not isolate even if
/// it received every still-unassigned vertex.
pub fn max_disjoint_isolating_sets(
    t: &Tree,
    spec: &IsolationSpec,
    p_cap: usize,
) -> Result<DisjointFamilyResult, OracleError> {
    let cap = Caps::current().disjoint;
    if t.n() > cap {
        return Err(OracleError::AboveCap { n: t.n(), cap });
    }
    spec.validate().map_err(OracleError::BadSpec)?;
    let checker = MaskChecker::new(t, spec);
    let n = t.n();
    let mut best = DisjointFamilyResult {
        count: 1,
        family: vec![VertexSet::full(n)],
    };
    for p in 2..=p_cap.min(n) {
        match partition_into(&checker, p) {
            Some(classes) => {
                best = DisjointFamilyResult {
                    count: p,
                    family: classes
                        .into_iter()
                        .map(|m| VertexSet::from_mask(n, m))
                        .collect(),
                };
            }
            // Merging two classes of a p-family gives a (p-1)-family, so
            // failure at p settles every larger p as well.
            None => break,
        }
    }
    Ok(best)
}

fn partition_into(checker: &MaskChecker<'_>, p: usize) -> Option<Vec<u64>> {
    let mut classes = vec![0u64; p];
    if assign(checker, 0, checker.full(), 0, &mut classes) {
        Some(classes)
    } else {
        None
    }
}

fn assign(
    checker: &MaskChecker<'_>,
    v: usize,
    unassigned: u64,
    opened: usize,
    classes: &mut [u64],
) -> bool {
    let p = classes.len();
    if checker.n() - v < p - opened {
        return false;
    }
    if v == checker.n() {
        return classes.iter().all(|&c| checker.isolates(c));
    }
    let rest = unassigned & !(1u64 << v);
    for c in 0..(opened + 1).min(p) {
        classes[c] |= 1 << v;
        let now_opened = opened.max(c + 1);
        let feasible = (0..p).all(|i| {
            if i < now_opened {
                checker.isolates(classes[i] | rest)
            } else {
                checker.isolates(rest)
            }
        });
        if feasible && assign(checker, v + 1, rest, now_opened, classes) {
            return true;
        }
        classes[c] &= !(1 << v);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::{is_independent, is_isolating};

    /// Plain subset enumeration in cardinality order; the independent check
    /// for the branching search.
    fn brute_min(t: &Tree, spec: &IsolationSpec, independent: bool) -> usize {
        let n = t.n();
        let mut best = usize::MAX;
        for m in 0u64..(1 << n) {
            let size = m.count_ones() as usize;
            if size >= best {
                continue;
            }
            let s = VertexSet::from_mask(n, m);
            if independent && !is_independent(t, &s) {
                continue;
            }
            if is_isolating(t, &s, spec).valid {
                best = size;
            }
        }
        best
    }

    #[test]
    fn path_examples() {
        let p7 = Tree::path(7);
        let r = min_isolating_set(&p7, &IsolationSpec::AllK(3), false).unwrap();
        assert_eq!(r.value, 1);
        assert!(is_isolating(&p7, &r.witness, &IsolationSpec::AllK(3)).valid);
        let r = min_isolating_set(&p7, &IsolationSpec::AllK(2), false).unwrap();
        assert_eq!(r.value, 2);
        let small = Tree::path(3);
        let r = min_isolating_set(&small, &IsolationSpec::AllK(4), true).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let trees = [
            Tree::spider(&[2, 2, 2]),
            Tree::spider(&[3, 1, 1, 2]),
            Tree::path(9),
            Tree::star(6),
            Tree::spider(&[1, 1, 3, 3]),
        ];
        let specs = [
            IsolationSpec::AllK(1),
            IsolationSpec::AllK(2),
            IsolationSpec::AllK(4),
            IsolationSpec::Star(3),
            IsolationSpec::path(3),
            IsolationSpec::Pattern(Tree::star(3)),
        ];
        for t in &trees {
            for spec in &specs {
                for independent in [false, true] {
                    let r = min_isolating_set(t, spec, independent).unwrap();
                    assert_eq!(r.value, brute_min(t, spec, independent), "{t:?} {spec:?}");
                    assert_eq!(r.witness.len(), r.value);
                    assert!(is_isolating(t, &r.witness, spec).valid);
                    if independent {
                        assert!(is_independent(t, &r.witness));
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let big = Tree::path(19);
        assert!(matches!(
            min_isolating_set(&big, &IsolationSpec::AllK(2), false),
            Err(OracleError::AboveCap { n: 19, cap: 18 })
        ));
        assert!(min_isolating_set(&Tree::path(15), &IsolationSpec::path(2), false).is_err());
    }

    #[test]
    fn p6_has_three_disjoint_isolating_sets() {
        let p6 = Tree::path(6);
        let spec = IsolationSpec::AllK(2);
        let r = max_disjoint_isolating_sets(&p6, &spec, 3).unwrap();
        assert_eq!(r.count, 3);
        // Uncapped, the search itself refutes a fourth set.
        assert_eq!(max_disjoint_isolating_sets(&p6, &spec, 6).unwrap().count, 3);
        for (i, a) in r.family.iter().enumerate() {
            assert!(!a.is_empty());
            assert!(is_isolating(&p6, a, &spec).valid);
            for b in &r.family[i + 1..] {
                assert!(a.is_disjoint(b));
            }
        }
    }

    #[test]
    fn four_disjoint_sets_refuted_by_exhaustion() {
        // Every labelling of P_6 with four non-empty classes fails.
        let p6 = Tree::path(6);
        let spec = IsolationSpec::AllK(2);
        let n = 6;
        let mut any = false;
        for code in 0..4usize.pow(n as u32) {
            let mut labels = [0usize; 6];
            let mut c = code;
            for l in labels.iter_mut() {
                *l = c % 4;
                c /= 4;
            }
            let ok = (0..4).all(|cls| {
                let s = VertexSet::from_iter(n, (0..n).filter(|&v| labels[v] == cls));
                !s.is_empty() && is_isolating(&p6, &s, &spec).valid
            });
            any |= ok;
        }
        assert!(!any);
    }

    #[test]
    fn whole_set_always_counts() {
        let t = Tree::star(4);
        let r = max_disjoint_isolating_sets(&t, &IsolationSpec::AllK(1), 1).unwrap();
        assert_eq!(r.count, 1);
        // A star has exactly two disjoint dominating sets.
        let r = max_disjoint_isolating_sets(&t, &IsolationSpec::AllK(1), 5).unwrap();
        assert_eq!(r.count, 2);
    }
}
