//! Weak partitions of a tree into independent classes that are each
//! isolating: dynamicization, aligned merging across a split edge, the
//! constructors for 4, 5, 6 and `k + 1` colors, and exhaustive search.

mod constructors;
mod search;
mod table;

use serde::Serialize;
use thiserror::Error;

use crate::predicates::{certify_coloring, is_isolating, Coloring, IsolationSpec};
use crate::tree::{Component, EdgeSplit, Tree};

pub use constructors::{color4_all3, color5_all4, color6_all5, color_star_isolating};
pub use search::{search_coloring, search_coloring_with};
pub use table::{build_bad_piece_table, BadPieceEntry, BadPieceTable, PieceContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("input coloring is not proper")]
    NotProper,
    #[error("color class {0} is not isolating")]
    NotIsolating(usize),
    #[error("coloring has {got} entries for a tree of order {n}")]
    WrongLength { got: usize, n: usize },
    #[error("instance of order {n} exceeds the cap of {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("coloring invariant failed: {0}")]
    Assertion(String),
}

/// Trees a constructor is not obliged to color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExceptionTag {
    #[serde(rename = "P_3")]
    P3,
    #[serde(rename = "ORDER_4")]
    Order4,
    #[serde(rename = "O_7")]
    O7,
    #[serde(rename = "ORDER_5")]
    Order5,
    #[serde(rename = "STAR_K1K1")]
    StarK1k,
}

impl ExceptionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ExceptionTag::P3 => "P_3",
            ExceptionTag::Order4 => "ORDER_4",
            ExceptionTag::O7 => "O_7",
            ExceptionTag::Order5 => "ORDER_5",
            ExceptionTag::StarK1k => "STAR_K1K1",
        }
    }
}

/// A certified coloring, or the reason the tree is excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub spec: IsolationSpec,
    pub coloring: Option<Coloring>,
    pub exception: Option<ExceptionTag>,
}

impl ColoringResult {
    fn colored(spec: IsolationSpec, coloring: Coloring) -> Self {
        ColoringResult {
            spec,
            coloring: Some(coloring),
            exception: None,
        }
    }

    fn excluded(spec: IsolationSpec, tag: ExceptionTag) -> Self {
        ColoringResult {
            spec,
            coloring: None,
            exception: Some(tag),
        }
    }
}

/// `K_{1,3}` with every edge subdivided once.
pub fn o7() -> Tree {
    Tree::spider(&[2, 2, 2])
}

/// Proper 2-coloring by BFS parity, with colors 1 and 2.
pub(crate) fn parity_colors(t: &Tree) -> Vec<usize> {
    let (parent, order) = t.bfs(0);
    let mut colors = vec![1; t.n()];
    for &v in &order {
        if let Some(p) = parent[v] {
            colors[v] = 3 - colors[p];
        }
    }
    colors
}

/// `x -> 1`, its neighbors in increasing id order `-> 2, 3, ...`, then the
/// remaining vertices in increasing id order. Needs `num_colors >= n`.
pub(crate) fn distinct_from_anchor(t: &Tree, x: usize) -> Vec<usize> {
    let mut colors = vec![0; t.n()];
    colors[x] = 1;
    let mut next = 2;
    for &w in t.neighbors(x) {
        colors[w] = next;
        next += 1;
    }
    for c in colors.iter_mut() {
        if *c == 0 {
            *c = next;
            next += 1;
        }
    }
    colors
}

fn check_input(t: &Tree, c: &Coloring, spec: &IsolationSpec) -> Result<(), ColorError> {
    if c.colors.len() != t.n() {
        return Err(ColorError::WrongLength {
            got: c.colors.len(),
            n: t.n(),
        });
    }
    if !c.is_proper(t) {
        return Err(ColorError::NotProper);
    }
    for color in 1..=c.num_colors {
        if !is_isolating(t, &c.class(color), spec).valid {
            return Err(ColorError::NotIsolating(color));
        }
    }
    Ok(())
}

/// Same as [`make_dynamic`], also returning the number of interchanges.
///
/// Each interchange swaps two colors on one side of an edge at a deficient
/// vertex `v`. The number of colors `v` sees grows by one and every other
/// vertex sees as many as before, so there are at most
/// `sum_v min(d(v), num_colors - 1)` interchanges.
pub fn make_dynamic_counted(
    t: &Tree,
    c: &Coloring,
    spec: &IsolationSpec,
) -> Result<(Coloring, usize), ColorError> {
    check_input(t, c, spec)?;
    let l = c.num_colors;
    let limit: usize = (0..t.n()).map(|v| t.degree(v).min(l - 1)).sum();
    let mut colors = c.colors.clone();
    let mut swaps = 0;
    let seen = |colors: &[usize], v: usize| {
        let mut mask = 0u128;
        for &w in t.neighbors(v) {
            mask |= 1 << colors[w];
        }
        mask
    };
    while let Some(v) =
        (0..t.n()).find(|&v| (seen(&colors, v).count_ones() as usize) < t.degree(v).min(l - 1))
    {
        let mut counts = vec![0usize; l + 1];
        for &w in t.neighbors(v) {
            counts[colors[w]] += 1;
        }
        let a = (1..=l)
            .find(|&a| counts[a] > 1)
            .expect("a deficient vertex repeats a color");
        let b = (1..=l)
            .find(|&b| counts[b] == 0 && b != colors[v])
            .expect("a deficient vertex misses a color");
        let w = *t
            .neighbors(v)
            .iter()
            .filter(|&&w| colors[w] == a)
            .min()
            .expect("color a occurs on a neighbor");
        for u in t.side_of(w, v).iter() {
            if colors[u] == a {
                colors[u] = b;
            } else if colors[u] == b {
                colors[u] = a;
            }
        }
        swaps += 1;
        if swaps > limit {
            return Err(ColorError::Assertion(format!(
                "more than {limit} interchanges"
            )));
        }
        if cfg!(debug_assertions) {
            let now = Coloring {
                num_colors: l,
                colors: colors.clone(),
            };
            debug_assert!(now.is_proper(t), "interchange broke properness");
            for color in [a, b] {
                debug_assert!(
                    is_isolating(t, &now.class(color), spec).valid,
                    "interchange broke class {color}"
                );
            }
        }
    }
    Ok((
        Coloring {
            num_colors: l,
            colors,
        },
        swaps,
    ))
}

/// A dynamic coloring with the same number of colors whose classes stay
/// isolating. Requires a proper input with isolating classes.
pub fn make_dynamic(t: &Tree, c: &Coloring, spec: &IsolationSpec) -> Result<Coloring, ColorError> {
    make_dynamic_counted(t, c, spec).map(|(c, _)| c)
}

/// One side of a split, colored in the side's local ids.
#[derive(Debug, Clone)]
pub struct SideColoring {
    pub piece: Component,
    /// Local id of the split-edge endpoint.
    pub anchor: usize,
    pub colors: Vec<usize>,
    /// A class that is only harmless once the anchor is dominated from
    /// across the edge; it is sent to the far end of the palette.
    pub bad: Option<usize>,
}

/// Color order for one side: anchor, the anchor's neighbor colors in
/// neighbor-id order, remaining used colors ascending, unused ascending, and
/// the bad class (if any) last.
fn side_order(side: &SideColoring, l: usize) -> Result<Vec<usize>, ColorError> {
    let t = &side.piece.tree;
    let mut order = Vec::with_capacity(l);
    let mut placed = vec![false; l + 1];
    let mut push = |c: usize, order: &mut Vec<usize>| {
        if !placed[c] {
            placed[c] = true;
            order.push(c);
        }
    };
    push(side.colors[side.anchor], &mut order);
    for &w in t.neighbors(side.anchor) {
        push(side.colors[w], &mut order);
    }
    if let Some(bad) = side.bad {
        if order.contains(&bad) {
            return Err(ColorError::Assertion(format!(
                "bad class {bad} touches the anchor"
            )));
        }
    }
    for c in 1..=l {
        if side.colors.contains(&c) && Some(c) != side.bad {
            push(c, &mut order);
        }
    }
    for c in 1..=l {
        if Some(c) != side.bad {
            push(c, &mut order);
        }
    }
    if let Some(bad) = side.bad {
        push(bad, &mut order);
    }
    Ok(order)
}

/// Renumbers both side colorings and concatenates them: on the `x` side the
/// anchor gets 1 and its neighbors 2, 3, ...; on the `y` side the anchor gets
/// `l` and its neighbors `l - 1`, `l - 2`, .... When `d(x) + d(y) >= l` the
/// two anchors together see every color.
pub fn align_merge(
    t: &Tree,
    split: &EdgeSplit,
    x_side: &SideColoring,
    y_side: &SideColoring,
    l: usize,
) -> Result<Coloring, ColorError> {
    let mut colors = vec![0usize; t.n()];
    for (side, forward) in [(x_side, true), (y_side, false)] {
        let anchor = side.piece.ids[side.anchor];
        let d = t.degree(anchor);
        let distinct = {
            let mut seen: Vec<usize> = side
                .piece
                .tree
                .neighbors(side.anchor)
                .iter()
                .map(|&w| side.colors[w])
                .collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        if distinct < (d - 1).min(l - 1) {
            return Err(ColorError::Assertion(format!(
                "anchor {anchor} sees {distinct} colors on its side, needs {}",
                (d - 1).min(l - 1)
            )));
        }
        let order = side_order(side, l)?;
        let mut perm = vec![0usize; l + 1];
        for (i, &c) in order.iter().enumerate() {
            perm[c] = if forward { i + 1 } else { l - i };
        }
        for (local, &orig) in side.piece.ids.iter().enumerate() {
            colors[orig] = perm[side.colors[local]];
        }
    }
    let merged = Coloring::new(l, colors)
        .map_err(|e| ColorError::Assertion(format!("merge produced {e}")))?;
    if !merged.is_proper(t) {
        return Err(ColorError::Assertion(
            "merged coloring is not proper".into(),
        ));
    }
    let (x, y) = (split.x, split.y);
    if t.degree(x) + t.degree(y) >= l {
        let mut mask = 0u128;
        for v in [x, y] {
            mask |= 1 << merged.colors[v];
            for &w in t.neighbors(v) {
                mask |= 1 << merged.colors[w];
            }
        }
        if mask.count_ones() as usize != l {
            return Err(ColorError::Assertion(format!(
                "split edge {x}-{y} sees only {} colors",
                mask.count_ones()
            )));
        }
    }
    Ok(merged)
}

/// Certifies a constructor's output; a failure is an internal error.
fn certified(
    t: &Tree,
    coloring: Coloring,
    spec: &IsolationSpec,
    who: &str,
) -> Result<Coloring, ColorError> {
    let cert = certify_coloring(t, &coloring, spec);
    if cert.valid {
        Ok(coloring)
    } else {
        Err(ColorError::Assertion(format!(
            "{who} produced an invalid coloring {:?}: {:?}",
            coloring.colors, cert.violations
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::is_dynamic;

    #[test]
    fn dynamic_fixed_point() {
        let t = Tree::path(4);
        let c = Coloring::new(3, vec![1, 2, 3, 1]).unwrap();
        let spec = IsolationSpec::AllK(2);
        assert!(is_dynamic(&t, &c));
        let (out, swaps) = make_dynamic_counted(&t, &c, &spec).unwrap();
        assert_eq!((out, swaps), (c, 0));
    }

    #[test]
    fn middle_of_p5_becomes_dynamic() {
        // The middle vertex sees only color 2.
        let t = Tree::path(5);
        let spec = IsolationSpec::AllK(2);
        let c = Coloring::new(3, vec![1, 2, 3, 2, 1]).unwrap();
        assert!(certify_coloring(&t, &c, &spec).valid && !is_dynamic(&t, &c));
        let out = make_dynamic(&t, &c, &spec).unwrap();
        assert!(is_dynamic(&t, &out));
        assert!(certify_coloring(&t, &out, &spec).valid);
    }

    #[test]
    fn make_dynamic_rejects_bad_input() {
        let t = Tree::path(3);
        let spec = IsolationSpec::AllK(2);
        let improper = Coloring::new(3, vec![1, 1, 2]).unwrap();
        assert_eq!(
            make_dynamic(&t, &improper, &spec),
            Err(ColorError::NotProper)
        );
        let t = Tree::path(6);
        let weak = Coloring::new(3, vec![1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(
            make_dynamic(&t, &weak, &spec),
            Err(ColorError::NotIsolating(3))
        );
    }

    #[test]
    fn merge_of_two_singletons() {
        let t = Tree::path(2);
        let split = t.split(0, 1).unwrap();
        let side = |v: usize| SideColoring {
            piece: t.subtree(&crate::set::VertexSet::from_iter(2, [v])),
            anchor: 0,
            colors: vec![1],
            bad: None,
        };
        let merged = align_merge(&t, &split, &side(0), &side(1), 2).unwrap();
        assert_eq!(merged.colors, vec![1, 2]);
    }

    #[test]
    fn distinct_anchor_coloring() {
        let t = Tree::spider(&[1, 2]);
        assert_eq!(distinct_from_anchor(&t, 2), vec![2, 4, 1, 3]);
    }
}
