//! Partitions into k + 1 isolating classes, and the trees that have none.

use iso_trees::coloring::{
    color4_all3, color5_all4, color6_all5, color_star_isolating, o7, search_coloring,
};
use iso_trees::oracle::random_tree;
use iso_trees::predicates::is_dynamic;
use iso_trees::{IsolationSpec, Tree};

fn main() {
    let t = random_tree(25, 3);
    for (name, r) in [
        ("4 colors, all-3", color4_all3(&t)),
        ("5 colors, all-4", color5_all4(&t)),
        ("6 colors, all-5", color6_all5(&t)),
        ("8 colors, K_1,6", color_star_isolating(&t, 7)),
    ] {
        let c = r.unwrap().coloring.unwrap();
        println!("{name}: {:?} dynamic={}", c.colors, is_dynamic(&t, &c));
    }

    for (name, t, l, spec) in [
        ("P_3", Tree::path(3), 4, IsolationSpec::AllK(3)),
        ("O_7", o7(), 6, IsolationSpec::AllK(5)),
        ("P_5", Tree::path(5), 6, IsolationSpec::AllK(5)),
        ("K_1,3", Tree::star(3), 5, IsolationSpec::AllK(4)),
    ] {
        let found = search_coloring(&t, l, &spec).unwrap();
        println!(
            "{name} with {l} colors: {}",
            if found.is_some() {
                "colorable"
            } else {
                "none exists"
            }
        );
    }
    println!(
        "{}",
        color6_all5(&o7()).unwrap().exception.unwrap().as_str()
    );
}
