//! Requiring independence can cost arbitrarily more: the double-broom gadget.

use iso_trees::families::{gen_gap_gadget, GapGadgetRecipe};
use iso_trees::oracle::min_isolating_set;
use iso_trees::{IsolationSpec, Tree};

fn main() {
    let spec = IsolationSpec::path(2);
    for b in 1..=3 {
        let t = gen_gap_gadget(&GapGadgetRecipe {
            pattern: Tree::path(2),
            root: 0,
            b,
        })
        .unwrap();
        let plain = min_isolating_set(&t, &spec, false).unwrap();
        let indep = min_isolating_set(&t, &spec, true).unwrap();
        println!(
            "b={b} order {:>2}: {} via {:?}, independent {} via {:?}",
            t.n(),
            plain.value,
            plain.witness,
            indep.value,
            indep.witness
        );
    }
}
