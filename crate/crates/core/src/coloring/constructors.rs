//! Inductive constructors: split at a high-degree edge, color both sides
//! (recursively, or explicitly for the few bad shapes), align, merge.

use super::table::{spoke_ok, spoke_roles, spoke_z_color, BadPieceTable, PieceContext};
use super::{
    align_merge, certified, distinct_from_anchor, make_dynamic, o7, parity_colors, ColorError,
    ColoringResult, ExceptionTag, SideColoring,
};
use crate::oracle::canonical_form;
use crate::predicates::{certify_coloring, Coloring, IsolationSpec};
use crate::tree::{Component, Tree};

/// Largest supported palette; color sets are tracked in 128-bit masks.
const MAX_COLORS: usize = 100;

fn coloring(l: usize, colors: Vec<usize>) -> Result<Coloring, ColorError> {
    Coloring::new(l, colors).map_err(|e| ColorError::Assertion(e.to_string()))
}

fn anchor_of(piece: &Component, v: usize) -> usize {
    piece
        .ids
        .binary_search(&v)
        .expect("anchor lies in its side")
}

/// A side colored by recursion, then made dynamic.
fn ordinary_side(
    piece: Component,
    anchor: usize,
    spec: &IsolationSpec,
    recurse: &dyn Fn(&Tree) -> Result<Coloring, ColorError>,
) -> Result<SideColoring, ColorError> {
    let c = recurse(&piece.tree)?;
    let c = make_dynamic(&piece.tree, &c, spec)?;
    Ok(SideColoring {
        piece,
        anchor,
        colors: c.colors,
        bad: None,
    })
}

/// Splits at edge `xy`, colors each side with `side`, and merges.
fn split_merge(
    t: &Tree,
    x: usize,
    y: usize,
    l: usize,
    side: &dyn Fn(Component, usize) -> Result<SideColoring, ColorError>,
) -> Result<Coloring, ColorError> {
    let split = t.split(x, y).expect("split edge exists");
    let px = t.subtree(&split.side_x);
    let py = t.subtree(&split.side_y);
    let (ax, ay) = (anchor_of(&px, x), anchor_of(&py, y));
    let sx = side(px, ax)?;
    let sy = side(py, ay)?;
    align_merge(t, &split, &sx, &sy, l)
}

fn first_heavy_edge(t: &Tree, threshold: usize) -> Option<(usize, usize)> {
    t.edges()
        .into_iter()
        .find(|&(u, v)| t.degree(u) + t.degree(v) >= threshold)
}

/// Center 1, leaves cycling through `2..=l` in id order.
fn star_colors(t: &Tree, l: usize) -> Vec<usize> {
    let center = (0..t.n())
        .max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v)))
        .unwrap_or(0);
    let mut colors = vec![1; t.n()];
    for (i, v) in (0..t.n()).filter(|&v| v != center).enumerate() {
        colors[v] = 2 + i % (l - 1);
    }
    colors
}

/// Colors `1, 2, ..., l, 1, 2, ...` along a path from its lower-id end.
fn sequential_path(t: &Tree, l: usize) -> Vec<usize> {
    let start = (0..t.n())
        .find(|&v| t.degree(v) <= 1)
        .expect("paths have ends");
    let (_, order) = t.bfs(start);
    let mut colors = vec![0; t.n()];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = i % l + 1;
    }
    colors
}

fn is_k1m(t: &Tree, leaves: usize) -> bool {
    t.n() == leaves + 1 && (t.n() == 1 || t.max_degree() == leaves)
}

/// `(k + 1)` colors, every class free of `K_{1,k-1}` in its remnant. The
/// only exception is `K_{1,k-1}` itself.
pub fn color_star_isolating(t: &Tree, k: usize) -> Result<ColoringResult, ColorError> {
    if !(2..MAX_COLORS).contains(&k) {
        return Err(ColorError::BadArgument(format!(
            "k = {k} outside 2..{MAX_COLORS}"
        )));
    }
    let spec = IsolationSpec::Star(k);
    if is_k1m(t, k - 1) {
        return Ok(ColoringResult::excluded(spec, ExceptionTag::StarK1k));
    }
    let c = star_rec(t, k)?;
    Ok(ColoringResult::colored(spec, c))
}

fn star_rec(t: &Tree, k: usize) -> Result<Coloring, ColorError> {
    let l = k + 1;
    let spec = IsolationSpec::Star(k);
    let colors = if t.n() < k || t.max_degree() < k - 1 {
        parity_colors(t)
    } else if t.is_star() {
        star_colors(t, l)
    } else {
        let x = (0..t.n())
            .find(|&v| t.degree(v) >= k - 1)
            .expect("max degree >= k-1");
        let y = *t
            .neighbors(x)
            .iter()
            .find(|&&w| t.degree(w) >= 2)
            .expect("a non-star has an inner neighbor");
        let side = |piece: Component, anchor: usize| {
            if is_k1m(&piece.tree, k - 1) {
                let colors = distinct_from_anchor(&piece.tree, anchor);
                Ok(SideColoring {
                    piece,
                    anchor,
                    colors,
                    bad: None,
                })
            } else {
                ordinary_side(piece, anchor, &spec, &|p| star_rec(p, k))
            }
        };
        return certified(t, split_merge(t, x, y, l, &side)?, &spec, "star coloring");
    };
    certified(t, coloring(l, colors)?, &spec, "star coloring")
}

/// Four colors, every class all-3-isolating; `P_3` is the exception.
pub fn color4_all3(t: &Tree) -> Result<ColoringResult, ColorError> {
    let spec = IsolationSpec::AllK(3);
    if t.n() == 3 {
        return Ok(ColoringResult::excluded(spec, ExceptionTag::P3));
    }
    Ok(ColoringResult::colored(spec, four_rec(t)?))
}

fn four_rec(t: &Tree) -> Result<Coloring, ColorError> {
    let spec = IsolationSpec::AllK(3);
    if t.n() <= 2 {
        return certified(t, coloring(4, parity_colors(t))?, &spec, "4-coloring");
    }
    let (x, y) = first_heavy_edge(t, 4)
        .ok_or_else(|| ColorError::Assertion("no edge with degree sum 4".into()))?;
    let side = |piece: Component, anchor: usize| {
        if piece.order() == 3 {
            let colors = distinct_from_anchor(&piece.tree, anchor);
            Ok(SideColoring {
                piece,
                anchor,
                colors,
                bad: None,
            })
        } else {
            ordinary_side(piece, anchor, &spec, &four_rec)
        }
    };
    certified(t, split_merge(t, x, y, 4, &side)?, &spec, "4-coloring")
}

/// Five colors, every class all-4-isolating; order 4 is the exception.
pub fn color5_all4(t: &Tree) -> Result<ColoringResult, ColorError> {
    let spec = IsolationSpec::AllK(4);
    if t.n() == 4 {
        return Ok(ColoringResult::excluded(spec, ExceptionTag::Order4));
    }
    Ok(ColoringResult::colored(spec, five_rec(t)?))
}

fn five_rec(t: &Tree) -> Result<Coloring, ColorError> {
    let spec = IsolationSpec::AllK(4);
    let colors = if t.n() <= 3 {
        parity_colors(t)
    } else if t.is_path() {
        sequential_path(t, 5)
    } else if t.is_star() {
        star_colors(t, 5)
    } else {
        let x = (0..t.n())
            .find(|&v| t.degree(v) >= 3)
            .expect("non-path has a branch vertex");
        let y = *t
            .neighbors(x)
            .iter()
            .find(|&&w| t.degree(w) >= 2)
            .expect("a non-star has an inner neighbor");
        let side = |piece: Component, anchor: usize| {
            if piece.order() == 4 {
                let colors = distinct_from_anchor(&piece.tree, anchor);
                Ok(SideColoring {
                    piece,
                    anchor,
                    colors,
                    bad: None,
                })
            } else {
                ordinary_side(piece, anchor, &spec, &five_rec)
            }
        };
        return certified(t, split_merge(t, x, y, 5, &side)?, &spec, "5-coloring");
    };
    certified(t, coloring(5, colors)?, &spec, "5-coloring")
}

fn is_o7(t: &Tree) -> bool {
    t.n() == 7 && canonical_form(t) == canonical_form(&o7())
}

/// Six colors, every class all-5-isolating; `O_7` and order 5 are the
/// exceptions.
pub fn color6_all5(t: &Tree) -> Result<ColoringResult, ColorError> {
    let spec = IsolationSpec::AllK(5);
    if t.n() == 5 {
        return Ok(ColoringResult::excluded(spec, ExceptionTag::Order5));
    }
    if is_o7(t) {
        return Ok(ColoringResult::excluded(spec, ExceptionTag::O7));
    }
    Ok(ColoringResult::colored(spec, six_rec(t)?))
}

fn is_bad_for_six(t: &Tree) -> bool {
    t.n() == 5 || is_o7(t)
}

fn six_rec(t: &Tree) -> Result<Coloring, ColorError> {
    let spec = IsolationSpec::AllK(5);
    if t.n() <= 4 {
        return certified(t, coloring(6, parity_colors(t))?, &spec, "6-coloring");
    }
    let merged = if let Some((x, y)) = first_heavy_edge(t, 6) {
        let table = BadPieceTable::global()?;
        let side = |piece: Component, anchor: usize| {
            if is_bad_for_six(&piece.tree) {
                let (colors, bad) = table
                    .lookup(PieceContext::Split, &piece.tree, anchor)
                    .ok_or_else(|| ColorError::Assertion("bad side missing from table".into()))?;
                Ok(SideColoring {
                    piece,
                    anchor,
                    colors,
                    bad,
                })
            } else {
                ordinary_side(piece, anchor, &spec, &six_rec)
            }
        };
        split_merge(t, x, y, 6, &side)?
    } else if t.is_path() {
        coloring(6, sequential_path(t, 6))?
    } else {
        spokes(t)?
    };
    certified(t, merged, &spec, "6-coloring")
}

/// All degree sums at most 5 and not a path: color the three spokes at the
/// lowest-id degree-3 vertex under matching constraints and overlay them.
fn spokes(t: &Tree) -> Result<Coloring, ColorError> {
    let x = (0..t.n())
        .find(|&v| t.degree(v) == 3)
        .ok_or_else(|| ColorError::Assertion("no degree-3 hub".into()))?;
    let mut pieces: Vec<Component> = t
        .neighbors(x)
        .iter()
        .map(|&y| {
            let mut side = t.side_of(y, x);
            side.insert(x);
            t.subtree(&side)
        })
        .collect();
    if let Some(p3) = pieces.iter().position(|p| p.order() == 3) {
        let first = pieces.remove(p3);
        pieces.insert(0, first);
    }
    let table = BadPieceTable::global()?;
    let mut colors = vec![0usize; t.n()];
    for (idx, piece) in pieces.iter().enumerate() {
        let i = idx + 1;
        let anchor = anchor_of(piece, x);
        let local = if is_bad_for_six(&piece.tree) {
            table
                .lookup(PieceContext::Spoke(i), &piece.tree, anchor)
                .ok_or_else(|| ColorError::Assertion("bad spoke missing from table".into()))?
                .0
        } else {
            ordinary_spoke(&piece.tree, anchor, i)?
        };
        for (v, &orig) in piece.ids.iter().enumerate() {
            colors[orig] = local[v];
        }
    }
    coloring(6, colors)
}

/// Recursively colored spoke, made dynamic, the hub recolored if it clashes
/// with the chosen far neighbor, then renumbered to the spoke constraints.
fn ordinary_spoke(p: &Tree, x: usize, i: usize) -> Result<Vec<usize>, ColorError> {
    let spec = IsolationSpec::AllK(5);
    let base = make_dynamic(p, &six_rec(p)?, &spec)?.colors;
    let roles =
        spoke_roles(p, x).ok_or_else(|| ColorError::Assertion("hub is not a leaf".into()))?;
    let cy = base[roles.y];
    let candidates = std::iter::once(base[x]).chain((1..=6).filter(|&c| c != base[x] && c != cy));
    for cx in candidates {
        let mut colors = base.clone();
        colors[x] = cx;
        let mut taken = vec![cx, cy];
        if let Some(z) = roles.z {
            if colors[z] == cx {
                continue;
            }
            taken.push(colors[z]);
        }
        let w = roles
            .ws
            .iter()
            .copied()
            .find(|&w| !taken.contains(&colors[w]));
        if !roles.ws.is_empty() && w.is_none() {
            continue;
        }
        if cx != base[x] && !certify_coloring(p, &coloring(6, colors.clone())?, &spec).valid {
            continue;
        }
        // Renumber: hub 1, y -> i+1, z -> 5 or 6, w -> the other.
        let mut targets = vec![(cx, 1), (cy, i + 1)];
        if let Some(z) = roles.z {
            let zc = spoke_z_color(i);
            targets.push((colors[z], zc));
            if let Some(w) = w {
                targets.push((colors[w], 11 - zc));
            }
        }
        let mut perm = [0usize; 7];
        let mut used_target = [false; 7];
        for &(from, to) in &targets {
            perm[from] = to;
            used_target[to] = true;
        }
        let mut free = (1..=6).filter(|&c| !used_target[c]);
        for slot in perm.iter_mut().skip(1) {
            if *slot == 0 {
                *slot = free.next().expect("permutation completes");
            }
        }
        let renamed: Vec<usize> = colors.iter().map(|&c| perm[c]).collect();
        let c = coloring(6, renamed)?;
        if !spoke_ok(p, x, i, &c, true) {
            return Err(ColorError::Assertion(format!(
                "spoke {i} renumbering violates its constraints"
            )));
        }
        return Ok(c.colors);
    }
    Err(ColorError::Assertion(format!(
        "spoke {i} admits no hub recoloring"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_up_to;
    use crate::predicates::is_dynamic;

    fn check(r: &ColoringResult, t: &Tree) {
        let c = r.coloring.as_ref().expect("colored");
        assert!(certify_coloring(t, c, &r.spec).valid, "{t:?} {c:?}");
    }

    #[test]
    fn exceptions() {
        assert_eq!(
            color4_all3(&Tree::path(3)).unwrap().exception,
            Some(ExceptionTag::P3)
        );
        assert_eq!(
            color5_all4(&Tree::star(3)).unwrap().exception,
            Some(ExceptionTag::Order4)
        );
        assert_eq!(
            color6_all5(&o7()).unwrap().exception,
            Some(ExceptionTag::O7)
        );
        assert_eq!(
            color6_all5(&Tree::path(5)).unwrap().exception,
            Some(ExceptionTag::Order5)
        );
        assert_eq!(
            color_star_isolating(&Tree::star(3), 4).unwrap().exception,
            Some(ExceptionTag::StarK1k)
        );
        assert_eq!(
            color_star_isolating(&Tree::path(2), 2).unwrap().exception,
            Some(ExceptionTag::StarK1k)
        );
    }

    #[test]
    fn p5_sequential() {
        let r = color5_all4(&Tree::path(5)).unwrap();
        assert_eq!(r.coloring.unwrap().colors, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn all_small_trees() {
        for t in enumerate_up_to(9).unwrap() {
            if t.n() != 3 {
                check(&color4_all3(&t).unwrap(), &t);
            }
            if t.n() != 4 {
                check(&color5_all4(&t).unwrap(), &t);
            }
            if t.n() != 5 && !is_o7(&t) {
                check(&color6_all5(&t).unwrap(), &t);
            }
            for k in 2..=5 {
                let r = color_star_isolating(&t, k).unwrap();
                if r.exception.is_none() {
                    check(&r, &t);
                } else {
                    assert!(is_k1m(&t, k - 1));
                }
            }
        }
    }

    #[test]
    fn random_trees() {
        for seed in 0..60 {
            let t = crate::oracle::random_tree(10 + (seed as usize % 50), seed);
            for r in [
                color4_all3(&t),
                color5_all4(&t),
                color6_all5(&t),
                color_star_isolating(&t, 4),
            ] {
                let r = r.unwrap();
                check(&r, &t);
                let c = r.coloring.unwrap();
                assert!(is_dynamic(&t, &make_dynamic(&t, &c, &r.spec).unwrap()));
            }
        }
    }
}
