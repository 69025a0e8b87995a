//! Exact all-k-isolation numbers of a tree, by DP and by brute force.
//!
//! cargo run --example exact_isolation -- [n] [seed]

use iso_trees::dp::zeta_k;
use iso_trees::oracle::{min_isolating_set, random_tree};
use iso_trees::IsolationSpec;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("a number"));
    let n = args.next().unwrap_or(14) as usize;
    let seed = args.next().unwrap_or(1);
    let t = random_tree(n, seed);
    print!("{}", t.to_edge_list());
    println!("{:>3} {:>6} {:>6} {:>8}", "k", "zeta", "zeta_i", "witness");
    for k in 1..=6 {
        let plain = zeta_k(&t, k, false);
        let indep = zeta_k(&t, k, true);
        if let Ok(oracle) = min_isolating_set(&t, &IsolationSpec::AllK(k), true) {
            assert_eq!(oracle.value, indep.value);
        }
        println!(
            "{k:>3} {:>6} {:>6} {:?}",
            plain.value, indep.value, indep.witness
        );
    }
}
