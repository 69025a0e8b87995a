//! The inductive construction of an independent all-k-isolating set of
//! size at most floor(n / (k + 1)), step by step.
//!
//! cargo run --example constructive_bound -- [k] [n] [seed]

use iso_trees::constructive::independent_allk_set;
use iso_trees::dp::zeta_k;
use iso_trees::oracle::random_tree;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("a number"));
    let k = args.next().unwrap_or(3) as usize;
    let n = args.next().unwrap_or(40) as usize;
    let seed = args.next().unwrap_or(7);
    let t = random_tree(n, seed);
    let r = independent_allk_set(&t, k).expect("n differs from k");
    for step in &r.trace {
        println!(
            "{:<10} order {:>3}  J = {:?}  t_J = {}{}",
            serde_json::to_string(&step.case).unwrap().trim_matches('"'),
            step.order,
            step.j,
            step.t_j,
            step.psi.map(|p| format!("  psi = {p}")).unwrap_or_default()
        );
    }
    let exact = zeta_k(&t, k, true).value;
    println!(
        "set {:?}: size {} <= bound {}, optimum {exact}",
        r.set, r.size, r.bound
    );
}
