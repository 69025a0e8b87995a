//! Word-sized set arithmetic for the brute-force searches (n <= 64).

use crate::predicates::{find_embedding, IsolationSpec};
use crate::set::VertexSet;
use crate::tree::Tree;

enum Rule<'a> {
    AllK(usize),
    Star(usize),
    /// `P_k` patterns reduce to a longest-path test.
    Path(usize),
    Pattern(&'a Tree),
}

pub(crate) struct MaskChecker<'a> {
    t: &'a Tree,
    full: u64,
    adj: Vec<u64>,
    closed: Vec<u64>,
    rule: Rule<'a>,
}

impl<'a> MaskChecker<'a> {
    pub(crate) fn new(t: &'a Tree, spec: &'a IsolationSpec) -> Self {
        let n = t.n();
        assert!(n <= 64, "mask search supports at most 64 vertices");
        let adj: Vec<u64> = (0..n)
            .map(|v| t.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let closed = (0..n).map(|v| adj[v] | 1 << v).collect();
        let rule = match spec {
            IsolationSpec::AllK(k) => Rule::AllK(*k),
            IsolationSpec::Star(k) => Rule::Star(*k),
            IsolationSpec::Pattern(f) if f.is_path() => Rule::Path(f.n()),
            IsolationSpec::Pattern(f) => Rule::Pattern(f),
        };
        MaskChecker {
            t,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            adj,
            closed,
            rule,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.t.n()
    }

    pub(crate) fn full(&self) -> u64 {
        self.full
    }

    pub(crate) fn adj(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn neighborhood(&self, s: u64) -> u64 {
        bits(s).fold(0, |m, v| m | self.closed[v])
    }

    pub(crate) fn isolates(&self, s: u64) -> bool {
        self.violation(s).is_none()
    }

    /// A connected set of remnant vertices carrying a forbidden structure.
    /// Any isolating superset of `s` must dominate one of its vertices.
    pub(crate) fn violation(&self, s: u64) -> Option<u64> {
        let mut rest = self.full & !self.neighborhood(s);
        while rest != 0 {
            let comp = self.flood(rest.trailing_zeros() as usize, rest);
            rest &= !comp;
            if let Some(w) = self.witness(comp) {
                return Some(w);
            }
        }
        None
    }

    fn flood(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let grown = bits(frontier).fold(0, |m, v| m | self.adj[v]) & within & !comp;
            comp |= grown;
            frontier = grown;
        }
        comp
    }

    /// BFS order inside `comp` from `start`, with parents.
    fn bfs(&self, start: usize, comp: u64) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.n()];
        let mut order = vec![start];
        let mut seen = 1u64 << start;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for w in bits(self.adj[v] & comp & !seen) {
                seen |= 1 << w;
                parent[w] = v;
                order.push(w);
            }
        }
        (order, parent)
    }

    fn witness(&self, comp: u64) -> Option<u64> {
        match self.rule {
            Rule::AllK(k) => {
                if (comp.count_ones() as usize) < k {
                    return None;
                }
                let (order, _) = self.bfs(comp.trailing_zeros() as usize, comp);
                Some(order[..k].iter().fold(0, |m, &v| m | 1 << v))
            }
            Rule::Star(k) => bits(comp).find_map(|v| {
                let nb = self.adj[v] & comp;
                if nb.count_ones() as usize + 1 >= k {
                    Some(bits(nb).take(k - 1).fold(1u64 << v, |m, w| m | 1 << w))
                } else {
                    None
                }
            }),
            Rule::Path(k) => {
                if (comp.count_ones() as usize) < k {
                    return None;
                }
                let (order, _) = self.bfs(comp.trailing_zeros() as usize, comp);
                let end = *order.last().expect("non-empty component");
                let (order, parent) = self.bfs(end, comp);
                let mut v = *order.last().expect("non-empty component");
                let mut path = vec![v];
                while v != end {
                    v = parent[v];
                    path.push(v);
                }
                if path.len() < k {
                    return None;
                }
                Some(path[..k].iter().fold(0, |m, &v| m | 1 << v))
            }
            Rule::Pattern(f) => {
                if (comp.count_ones() as usize) < f.n() {
                    return None;
                }
                let piece = self.t.subtree(&VertexSet::from_mask(self.n(), comp));
                let map = find_embedding(&piece.tree, f)?;
                Some(map.iter().fold(0, |m, &local| m | 1 << piece.ids[local]))
            }
        }
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::is_isolating;

    #[test]
    fn agrees_with_certifier_on_all_subsets() {
        let trees = [
            Tree::spider(&[2, 2, 2]),
            Tree::spider(&[3, 1, 1, 2]),
            Tree::path(8),
        ];
        let specs = [
            IsolationSpec::AllK(1),
            IsolationSpec::AllK(3),
            IsolationSpec::Star(3),
            IsolationSpec::Star(4),
            IsolationSpec::path(4),
            IsolationSpec::Pattern(Tree::star(3)),
            IsolationSpec::Pattern(Tree::spider(&[2, 1, 1])),
        ];
        for t in &trees {
            for spec in &specs {
                let checker = MaskChecker::new(t, spec);
                for s in 0..(1u64 << t.n()) {
                    let set = VertexSet::from_mask(t.n(), s);
                    assert_eq!(
                        checker.isolates(s),
                        is_isolating(t, &set, spec).valid,
                        "{t:?} {spec:?} {s:b}"
                    );
                }
            }
        }
    }
}
