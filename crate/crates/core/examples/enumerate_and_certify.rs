//! Walks every tree of a given order and tabulates the exact optima, the
//! constructive sets and the certifiers' verdicts.
//!
//! cargo run --example enumerate_and_certify -- [n]

use std::collections::BTreeMap;

use iso_trees::constructive::independent_allk_set;
use iso_trees::dp::zeta_k;
use iso_trees::oracle::enumerate_trees;
use iso_trees::predicates::{is_independent, is_isolating};
use iso_trees::IsolationSpec;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(9, |a| a.parse().expect("a number"));
    let trees = enumerate_trees(n).unwrap();
    println!("{} trees of order {n}", trees.len());
    for k in 2..=5 {
        if k == n {
            continue;
        }
        let mut histogram = BTreeMap::new();
        let mut slack = 0;
        for t in &trees {
            let exact = zeta_k(t, k, true).value;
            let r = independent_allk_set(t, k).unwrap();
            assert!(
                is_independent(t, &r.set) && is_isolating(t, &r.set, &IsolationSpec::AllK(k)).valid
            );
            slack += r.size - exact;
            *histogram.entry(exact).or_insert(0) += 1;
        }
        println!("k={k}: optimum histogram {histogram:?}, constructive excess {slack}");
    }
}
