//! The exact DP stays linear-time on large inputs.

use std::time::{Duration, Instant};

use iso_trees::dp::zeta_k;
use iso_trees::oracle::random_tree;
use iso_trees::predicates::is_isolating;
use iso_trees::{IsolationSpec, Tree};

const BUDGET: Duration = Duration::from_secs(5);

#[test]
fn dp_on_a_hundred_thousand_vertices() {
    let n = 100_000;
    for (name, t) in [("random", random_tree(n, 42)), ("path", Tree::path(n))] {
        let start = Instant::now();
        let plain = zeta_k(&t, 5, false);
        let indep = zeta_k(&t, 5, true);
        let elapsed = start.elapsed();
        println!(
            "{name}: n={n} k=5 values {} / {} in {elapsed:?}",
            plain.value, indep.value
        );
        assert!(elapsed < BUDGET, "{name} took {elapsed:?}");
        assert!(plain.value <= indep.value && indep.value <= n / 6);
        assert!(is_isolating(&t, &indep.witness, &IsolationSpec::AllK(5)).valid);
    }
    // Paths: a vertex covers 3, and each gap holds at most 4 more.
    assert_eq!(zeta_k(&Tree::path(n), 5, false).value, n.div_ceil(7));
}
