//! The spider gadget that caps disjoint P_k-isolating families below k + 1.

use iso_trees::families::{gen_counterexample_hk, verify_hk_key_observation};
use iso_trees::oracle::max_disjoint_isolating_sets;
use iso_trees::{IsolationSpec, Tree};

fn main() {
    for k in [7, 8] {
        let g = gen_counterexample_hk(k).unwrap();
        let r = verify_hk_key_observation(k, &Tree::single()).unwrap();
        println!(
            "k={k}: legs {:?}, order {}, off-center hits >= {}, families <= {} < {}",
            g.legs,
            r.gadget_order,
            r.min_gadget_hits_off_privileged,
            r.family_bound,
            k + 1
        );
        let mut edges = g.tree.edges();
        edges.push((g.w, g.tree.n()));
        let joined = Tree::from_edges(g.tree.n() + 1, &edges).unwrap();
        let best = max_disjoint_isolating_sets(&joined, &IsolationSpec::path(k), k + 1).unwrap();
        println!(
            "  brute force: {} disjoint sets, e.g. {:?}",
            best.count, best.family
        );
    }
}
