//! Precomputed colorings of the small pieces the six-color construction
//! cannot recurse into (order 5 and `O_7`), found by constrained search.

use std::sync::OnceLock;

use serde::Serialize;

use super::{o7, search_coloring_with, ColorError};
use crate::oracle::{enumerate_trees, rooted_canonical_form, rooted_isomorphism};
use crate::predicates::{is_isolating, Coloring, IsolationSpec};
use crate::tree::{closed_neighborhood, remnant, Tree};

const COLORS: usize = 6;
const ORDER: usize = 5;

/// Where a piece sits in the six-color construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceContext {
    /// One side of a split edge: anchor 1, anchor neighbors 2, 3, ...; colors
    /// 1..=5 isolate, and color 6 leaves exactly an order-5 piece around the
    /// anchor.
    Split,
    /// Spoke `i` (1..=3) hanging off a degree-3 hub, the hub being the anchor:
    /// hub 1, its neighbor `i + 1`, the next vertex 5 (spoke 1) or 6, and one
    /// further neighbor the other of 5 and 6; all but one color isolate and
    /// the exception is not 1; and each of colors 1..=4 leaves pieces of
    /// order below 5 once the hub is removed as well.
    Spoke(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPieceEntry {
    pub context: PieceContext,
    pub shape: Tree,
    pub anchor: usize,
    pub colors: Vec<usize>,
    /// The single non-isolating color, if any.
    pub bad: Option<usize>,
    #[serde(skip)]
    key: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPieceTable {
    pub entries: Vec<BadPieceEntry>,
}

/// Anchor, its neighbor, the next vertex out, and that vertex's further
/// neighbors, for a spoke whose anchor is a leaf.
pub(crate) struct SpokeRoles {
    pub y: usize,
    pub z: Option<usize>,
    pub ws: Vec<usize>,
}

pub(crate) fn spoke_roles(t: &Tree, x: usize) -> Option<SpokeRoles> {
    let [y] = t.neighbors(x) else {
        return None;
    };
    let y = *y;
    let z = t.neighbors(y).iter().copied().find(|&v| v != x);
    let ws = match z {
        Some(z) => t.neighbors(z).iter().copied().filter(|&v| v != y).collect(),
        None => Vec::new(),
    };
    Some(SpokeRoles { y, z, ws })
}

pub(crate) fn spoke_z_color(i: usize) -> usize {
    if i == 1 {
        5
    } else {
        6
    }
}

pub(crate) fn spoke_pins(i: usize, x: usize, roles: &SpokeRoles) -> Vec<(usize, usize)> {
    let mut pins = vec![(x, 1), (roles.y, i + 1)];
    if let Some(z) = roles.z {
        pins.push((z, spoke_z_color(i)));
    }
    pins
}

fn non_isolating(t: &Tree, c: &Coloring) -> Vec<usize> {
    (1..=c.num_colors)
        .filter(|&col| !is_isolating(t, &c.class(col), &IsolationSpec::AllK(ORDER)).valid)
        .collect()
}

/// Spoke constraints; `strict` demands every color isolate.
pub(crate) fn spoke_ok(t: &Tree, x: usize, i: usize, c: &Coloring, strict: bool) -> bool {
    let Some(roles) = spoke_roles(t, x) else {
        return false;
    };
    if spoke_pins(i, x, &roles)
        .iter()
        .any(|&(v, col)| c.colors[v] != col)
    {
        return false;
    }
    if !roles.ws.is_empty() {
        let other = 11 - spoke_z_color(i);
        if !roles.ws.iter().any(|&w| c.colors[w] == other) {
            return false;
        }
    }
    let bad = non_isolating(t, c);
    if strict {
        return bad.is_empty();
    }
    // Colors 1..=4 also dominate the hub from the other spokes.
    let hub_covered = (1..=4).all(|col| {
        let mut gone = closed_neighborhood(t, &c.class(col));
        gone.insert(x);
        t.induced_components(&gone.complement())
            .components
            .iter()
            .all(|comp| comp.order() < ORDER)
    });
    bad.len() <= 1 && !bad.contains(&1) && hub_covered
}

/// Split-side constraints for a bad piece.
pub(crate) fn split_ok(t: &Tree, x: usize, c: &Coloring) -> bool {
    if c.colors[x] != 1 {
        return false;
    }
    if non_isolating(t, c) != [COLORS] {
        return false;
    }
    let six = c.class(COLORS);
    if t.neighbors(x).iter().any(|&w| six.contains(w)) {
        return false;
    }
    remnant(t, &six).components.iter().all(|comp| {
        if comp.ids.contains(&x) {
            comp.order() == ORDER
        } else {
            comp.order() < ORDER
        }
    })
}

fn key(context: PieceContext, t: &Tree, anchor: usize) -> String {
    format!("{context:?}:{}", rooted_canonical_form(t, anchor))
}

fn solve_entry(context: PieceContext, shape: &Tree, x: usize) -> Result<BadPieceEntry, ColorError> {
    let found = match context {
        PieceContext::Split => {
            let pins: Vec<(usize, usize)> = std::iter::once((x, 1))
                .chain(
                    shape
                        .neighbors(x)
                        .iter()
                        .enumerate()
                        .map(|(i, &w)| (w, i + 2)),
                )
                .collect();
            search_coloring_with(shape, COLORS, &pins, |c| split_ok(shape, x, c))?
        }
        PieceContext::Spoke(i) => {
            let roles = spoke_roles(shape, x).expect("spoke anchors are leaves");
            let pins = spoke_pins(i, x, &roles);
            search_coloring_with(shape, COLORS, &pins, |c| spoke_ok(shape, x, i, c, false))?
        }
    };
    let coloring = found.ok_or_else(|| {
        ColorError::Assertion(format!(
            "no admissible {context:?} coloring of {shape:?} anchored at {x}"
        ))
    })?;
    let bad = non_isolating(shape, &coloring).first().copied();
    Ok(BadPieceEntry {
        context,
        key: key(context, shape, x),
        shape: shape.clone(),
        anchor: x,
        colors: coloring.colors,
        bad,
    })
}

/// Searches an admissible coloring for every bad shape, anchor position (up
/// to symmetry) and context. Deterministic: shapes, anchors and colorings are
/// all visited in a fixed order.
pub fn build_bad_piece_table() -> Result<BadPieceTable, ColorError> {
    let mut shapes = enumerate_trees(ORDER).expect("order 5 is within the enumeration cap");
    shapes.push(o7());
    let mut entries: Vec<BadPieceEntry> = Vec::new();
    let mut contexts = vec![PieceContext::Split];
    contexts.extend((1..=3).map(PieceContext::Spoke));
    for context in contexts {
        for shape in &shapes {
            for x in 0..shape.n() {
                if let PieceContext::Spoke(_) = context {
                    let leafy = shape.degree(x) == 1 && shape.degree(shape.neighbors(x)[0]) <= 2;
                    if !leafy {
                        continue;
                    }
                }
                let k = key(context, shape, x);
                if entries.iter().any(|e| e.key == k) {
                    continue;
                }
                entries.push(solve_entry(context, shape, x)?);
            }
        }
    }
    Ok(BadPieceTable { entries })
}

impl BadPieceTable {
    /// The table built once per process.
    pub fn global() -> Result<&'static BadPieceTable, ColorError> {
        static TABLE: OnceLock<Result<BadPieceTable, ColorError>> = OnceLock::new();
        TABLE
            .get_or_init(build_bad_piece_table)
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The stored coloring transported onto `piece` anchored at `x`.
    pub fn lookup(
        &self,
        context: PieceContext,
        piece: &Tree,
        x: usize,
    ) -> Option<(Vec<usize>, Option<usize>)> {
        let k = key(context, piece, x);
        let entry = self.entries.iter().find(|e| e.key == k)?;
        let map = rooted_isomorphism(piece, x, &entry.shape, entry.anchor)?;
        Some((map.iter().map(|&m| entry.colors[m]).collect(), entry.bad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete_and_admissible() {
        let table = build_bad_piece_table().unwrap();
        // Split: 2 + 3 + 4 anchor orbits on order 5, 3 on O_7; spokes: 2 each.
        let split = table
            .entries
            .iter()
            .filter(|e| e.context == PieceContext::Split)
            .count();
        assert_eq!(split, 12);
        assert_eq!(table.entries.len(), 12 + 3 * 3);
        for e in &table.entries {
            let c = Coloring::new(COLORS, e.colors.clone()).unwrap();
            assert!(c.is_proper(&e.shape));
            let ok = match e.context {
                PieceContext::Split => split_ok(&e.shape, e.anchor, &c),
                PieceContext::Spoke(i) => spoke_ok(&e.shape, e.anchor, i, &c, false),
            };
            assert!(ok, "{e:?}");
        }
        assert_eq!(build_bad_piece_table().unwrap(), table);
    }

    #[test]
    fn path_end_gets_sequence() {
        let table = BadPieceTable::global().unwrap();
        let (colors, bad) = table
            .lookup(PieceContext::Split, &Tree::path(5), 0)
            .unwrap();
        assert_eq!(colors, vec![1, 2, 3, 4, 5]);
        assert_eq!(bad, Some(6));
    }

    #[test]
    fn o7_leaf_spoke_repeats_color_one() {
        let table = BadPieceTable::global().unwrap();
        let t = o7();
        let (colors, _) = table.lookup(PieceContext::Spoke(1), &t, 2).unwrap();
        assert_eq!(colors[2], 1);
        assert_eq!(colors.iter().filter(|&&c| c == 1).count(), 2);
        let (colors, bad) = table.lookup(PieceContext::Split, &t, 2).unwrap();
        assert_eq!(colors[2], 1);
        assert_eq!(bad, Some(6));
    }
}
