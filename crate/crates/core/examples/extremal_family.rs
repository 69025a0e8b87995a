//! Trees meeting n / (k + 1) with equality: build one from a recipe, decide
//! membership, and compare with the exact optimum.

use iso_trees::dp::zeta_k;
use iso_trees::families::{gen_extremal, is_member_tk, Attachment, ExtremalRecipe};
use iso_trees::oracle::enumerate_trees;
use iso_trees::Tree;

fn main() {
    let k = 3;
    let recipe = ExtremalRecipe {
        k,
        base: Tree::star(2),
        attachments: vec![
            Attachment {
                tree: Tree::path(3),
                root: 0,
            },
            Attachment {
                tree: Tree::path(3),
                root: 1,
            },
            Attachment {
                tree: Tree::star(2),
                root: 1,
            },
        ],
    };
    let t = gen_extremal(&recipe).unwrap();
    let m = is_member_tk(&t, k).unwrap();
    println!(
        "built order {}: member {}, zeta {}",
        t.n(),
        m.member,
        zeta_k(&t, k, false).value
    );
    for piece in &m.pieces {
        println!("  base {} carries {:?}", piece.base_vertex, piece.vertices);
    }

    // Members among all trees of order 8 for k = 3.
    for t in enumerate_trees(8).unwrap() {
        let member = is_member_tk(&t, k).unwrap().member;
        let extremal = zeta_k(&t, k, false).value == 2;
        assert_eq!(member, extremal);
        if member {
            print!("member:\n{}", t.to_edge_list());
        }
    }
}
