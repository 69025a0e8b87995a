//! Exhaustive coloring search for small trees.

use super::ColorError;
use crate::oracle::Caps;
use crate::predicates::{certify_coloring, is_isolating, Coloring, IsolationSpec};
use crate::set::VertexSet;
use crate::tree::Tree;

/// Some proper `l`-coloring whose classes all isolate, or `None` after an
/// exhaustive search. Vertices are visited in BFS order and colors open in
/// increasing order, so every coloring is tried once up to renaming.
pub fn search_coloring(
    t: &Tree,
    l: usize,
    spec: &IsolationSpec,
) -> Result<Option<Coloring>, ColorError> {
    let cap = Caps::current().search;
    if t.n() > cap {
        return Err(ColorError::AboveCap { n: t.n(), cap });
    }
    if l == 0 {
        return Err(ColorError::BadArgument("need at least one color".into()));
    }
    spec.validate().map_err(ColorError::BadArgument)?;
    let (_, order) = t.bfs(0);
    // An empty class leaves all of T; if that is forbidden, every color is used.
    let must_use_all = !is_isolating(t, &VertexSet::new(t.n()), spec).valid;
    let mut colors = vec![0usize; t.n()];
    let mut found = None;
    grow(
        t,
        l,
        spec,
        &order,
        0,
        0,
        must_use_all,
        &mut colors,
        &mut found,
    );
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn grow(
    t: &Tree,
    l: usize,
    spec: &IsolationSpec,
    order: &[usize],
    i: usize,
    used: usize,
    must_use_all: bool,
    colors: &mut [usize],
    found: &mut Option<Coloring>,
) -> bool {
    if must_use_all && order.len() - i < l - used {
        return false;
    }
    if i == order.len() {
        let c = Coloring {
            num_colors: l,
            colors: colors.to_vec(),
        };
        if certify_coloring(t, &c, spec).valid {
            *found = Some(c);
            return true;
        }
        return false;
    }
    let v = order[i];
    for color in 1..=(used + 1).min(l) {
        if t.neighbors(v).iter().any(|&w| colors[w] == color) {
            continue;
        }
        colors[v] = color;
        if grow(
            t,
            l,
            spec,
            order,
            i + 1,
            used.max(color),
            must_use_all,
            colors,
            found,
        ) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// First proper `l`-coloring in lexicographic order (by vertex id, then
/// color) that agrees with `pins` and satisfies `accept`.
pub fn search_coloring_with(
    t: &Tree,
    l: usize,
    pins: &[(usize, usize)],
    accept: impl Fn(&Coloring) -> bool,
) -> Result<Option<Coloring>, ColorError> {
    let cap = Caps::current().search;
    if t.n() > cap {
        return Err(ColorError::AboveCap { n: t.n(), cap });
    }
    let mut fixed = vec![0usize; t.n()];
    for &(v, c) in pins {
        if v >= t.n() || c == 0 || c > l {
            return Err(ColorError::BadArgument(format!(
                "pin {v} -> {c} out of range"
            )));
        }
        fixed[v] = c;
    }
    let mut colors = vec![0usize; t.n()];
    Ok(pinned(t, l, &fixed, 0, &mut colors, &accept))
}

fn pinned(
    t: &Tree,
    l: usize,
    fixed: &[usize],
    v: usize,
    colors: &mut [usize],
    accept: &impl Fn(&Coloring) -> bool,
) -> Option<Coloring> {
    if v == t.n() {
        let c = Coloring {
            num_colors: l,
            colors: colors.to_vec(),
        };
        return accept(&c).then_some(c);
    }
    let choices = if fixed[v] != 0 {
        fixed[v]..=fixed[v]
    } else {
        1..=l
    };
    for color in choices {
        if t.neighbors(v).iter().any(|&w| w < v && colors[w] == color) {
            continue;
        }
        colors[v] = color;
        if let Some(c) = pinned(t, l, fixed, v + 1, colors, accept) {
            return Some(c);
        }
    }
    colors[v] = 0;
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::o7;

    #[test]
    fn exceptions_have_no_coloring() {
        let none = |t: &Tree, l, spec| search_coloring(t, l, &spec).unwrap().is_none();
        assert!(none(&Tree::path(3), 4, IsolationSpec::AllK(3)));
        assert!(none(&o7(), 6, IsolationSpec::AllK(5)));
        assert!(none(&Tree::star(3), 5, IsolationSpec::AllK(4)));
        assert!(none(&Tree::path(5), 6, IsolationSpec::AllK(5)));
        assert!(none(&Tree::star(2), 4, IsolationSpec::Star(3)));
    }

    #[test]
    fn p6_three_colors() {
        let t = Tree::path(6);
        let spec = IsolationSpec::AllK(2);
        let c = search_coloring(&t, 3, &spec).unwrap().unwrap();
        assert!(certify_coloring(&t, &c, &spec).valid);
    }

    #[test]
    fn pinned_search_respects_pins() {
        let t = Tree::path(4);
        let c = search_coloring_with(&t, 3, &[(0, 3), (2, 3)], |_| true)
            .unwrap()
            .unwrap();
        assert_eq!(c.colors, vec![3, 1, 3, 1]);
        assert!(search_coloring_with(&t, 3, &[(0, 1), (1, 1)], |_| true)
            .unwrap()
            .is_none());
    }

    #[test]
    fn cap_applies() {
        assert!(matches!(
            search_coloring(&Tree::path(13), 3, &IsolationSpec::AllK(2)),
            Err(ColorError::AboveCap { .. })
        ));
    }
}
