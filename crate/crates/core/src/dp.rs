//! Exact all-k-isolation numbers of trees by rooted dynamic programming.
//!
//! Each vertex `v` of the tree rooted at 0 is summarised by the cheapest
//! selection inside its subtree for every state:
//!
//! * `In`: `v` is selected.
//! * `Dom`: `v` is not selected but some child is.
//! * `Free(j)`: `v` is undominated from below and the remnant piece through
//!   `v` has order `j < k`.
//! * `Big`: as `Free`, but the piece already has order `>= k`; only a
//!   selected parent can rescue it.
//!
//! Pieces that can no longer grow (below a dominated vertex) always have
//! order `< k` by construction, so a state only tracks the live piece.

use crate::oracle::SolveResult;
use crate::set::VertexSet;
use crate::tree::Tree;

const INF: u32 = u32::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpState {
    In,
    Dom,
    Free(usize),
    Big,
}

/// Solved tables plus what reconstruction needs.
#[derive(Debug, Clone)]
pub struct DpTable {
    k: usize,
    independent: bool,
    root: usize,
    children: Vec<Vec<usize>>,
    /// Per vertex: `k + 2` costs indexed by [`DpTable::slot`].
    cost: Vec<u32>,
    /// Per vertex: knapsack prefixes over its children, `(k + 1)` buckets each;
    /// bucket `k` means "order at least k".
    prefix: Vec<Vec<u32>>,
}

impl DpTable {
    fn width(&self) -> usize {
        self.k + 2
    }

    fn slot(&self, state: DpState) -> usize {
        match state {
            DpState::In => 0,
            DpState::Dom => 1,
            DpState::Free(j) => 1 + j,
            DpState::Big => self.k + 1,
        }
    }

    fn get(&self, v: usize, state: DpState) -> u32 {
        self.cost[v * self.width() + self.slot(state)]
    }

    fn free_states(&self) -> impl Iterator<Item = DpState> {
        (1..self.k).map(DpState::Free)
    }

    /// Child states compatible with a selected parent.
    fn under_in(&self) -> Vec<DpState> {
        let mut v = Vec::with_capacity(self.k + 2);
        if !self.independent {
            v.push(DpState::In);
        }
        v.push(DpState::Dom);
        v.extend(self.free_states());
        v.push(DpState::Big);
        v
    }

    /// Non-selected child states compatible with a dominated, unselected parent.
    fn under_dom_unselected(&self) -> Vec<DpState> {
        let mut v = vec![DpState::Dom];
        v.extend(self.free_states());
        v
    }

    fn best_of(&self, c: usize, states: &[DpState]) -> (u32, DpState) {
        states
            .iter()
            .map(|&s| (self.get(c, s), s))
            .min_by_key(|&(cost, _)| cost)
            .expect("non-empty state list")
    }

    /// Optimum over the root states a finished tree may end in.
    pub fn value(&self) -> u32 {
        let mut states = vec![DpState::In, DpState::Dom];
        states.extend(self.free_states());
        self.best_of(self.root, &states).0
    }
}

/// Fills the table bottom-up over a BFS order (no recursion).
pub fn solve_table(t: &Tree, k: usize, independent: bool) -> DpTable {
    assert!(k >= 1, "k must be positive");
    let n = t.n();
    let root = 0;
    let (parent, order) = t.bfs(root);
    let mut children = vec![Vec::new(); n];
    for &v in &order {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }
    let mut table = DpTable {
        k,
        independent,
        root,
        children,
        cost: vec![INF; n * (k + 2)],
        prefix: vec![Vec::new(); n],
    };
    let w = table.width();
    for &v in order.iter().rev() {
        let kids = std::mem::take(&mut table.children[v]);

        let in_parent = table.under_in();
        let mut in_cost = 1u32;
        for &c in &kids {
            in_cost += table.best_of(c, &in_parent).0;
        }

        let dom_others = table.under_dom_unselected();
        let mut dom_cost = INF;
        if !kids.is_empty() {
            let mut sum = 0u32;
            let mut penalty = INF;
            for &c in &kids {
                let a = table.best_of(c, &dom_others).0;
                let b = table.get(c, DpState::In);
                sum += a.min(b);
                penalty = penalty.min(b.saturating_sub(a));
            }
            dom_cost = (sum + penalty).min(INF);
        }

        // Knapsack over the piece order through v.
        let mut pre = vec![INF; (kids.len() + 1) * (k + 1)];
        pre[1.min(k)] = 0;
        for (i, &c) in kids.iter().enumerate() {
            let (prev, next) = pre.split_at_mut((i + 1) * (k + 1));
            let prev = &prev[i * (k + 1)..];
            let next = &mut next[..k + 1];
            let dom_c = table.get(c, DpState::Dom);
            for s in 1..=k {
                if prev[s] >= INF {
                    continue;
                }
                next[s] = next[s].min(prev[s] + dom_c);
                for j in 1..k {
                    let fc = table.get(c, DpState::Free(j));
                    if fc < INF {
                        let t = (s + j).min(k);
                        next[t] = next[t].min(prev[s] + fc);
                    }
                }
            }
            for x in next.iter_mut() {
                *x = (*x).min(INF);
            }
        }
        let last = &pre[kids.len() * (k + 1)..];
        let base = v * w;
        table.cost[base] = in_cost.min(INF);
        table.cost[base + 1] = dom_cost;
        table.cost[base + 2..base + k + 2].copy_from_slice(&last[1..=k]);
        table.prefix[v] = pre;
        table.children[v] = kids;
    }
    table
}

/// Reads an optimal selection back out of a solved table.
pub fn reconstruct_witness(table: &DpTable) -> VertexSet {
    let n = table.children.len();
    let k = table.k;
    let mut witness = VertexSet::new(n);
    let mut root_states = vec![DpState::In, DpState::Dom];
    root_states.extend(table.free_states());
    let (_, root_state) = table.best_of(table.root, &root_states);
    let mut stack = vec![(table.root, root_state)];
    while let Some((v, state)) = stack.pop() {
        let kids = &table.children[v];
        match state {
            DpState::In => {
                witness.insert(v);
                let allowed = table.under_in();
                for &c in kids {
                    stack.push((c, table.best_of(c, &allowed).1));
                }
            }
            DpState::Dom => {
                let others = table.under_dom_unselected();
                let mut picks: Vec<DpState> = Vec::with_capacity(kids.len());
                let mut any_in = false;
                let mut swap: Option<(u32, usize)> = None;
                for (i, &c) in kids.iter().enumerate() {
                    let (a, sa) = table.best_of(c, &others);
                    let b = table.get(c, DpState::In);
                    if b <= a {
                        any_in = true;
                        picks.push(DpState::In);
                    } else {
                        picks.push(sa);
                        if swap.is_none_or(|(d, _)| b - a < d) {
                            swap = Some((b - a, i));
                        }
                    }
                }
                if !any_in {
                    let (_, i) = swap.expect("a dominated vertex has a child");
                    picks[i] = DpState::In;
                }
                for (&c, s) in kids.iter().zip(picks) {
                    stack.push((c, s));
                }
            }
            DpState::Free(_) | DpState::Big => {
                let mut s = match state {
                    DpState::Free(j) => j,
                    _ => k,
                };
                let pre = &table.prefix[v];
                let at = |i: usize, s: usize| pre[i * (k + 1) + s];
                for i in (1..=kids.len()).rev() {
                    let c = kids[i - 1];
                    let target = at(i, s);
                    debug_assert!(target < INF, "inconsistent table");
                    if at(i - 1, s) < INF && at(i - 1, s) + table.get(c, DpState::Dom) == target {
                        stack.push((c, DpState::Dom));
                        continue;
                    }
                    let (prev, j) = (1..=k)
                        .flat_map(|p| (1..k).map(move |j| (p, j)))
                        .find(|&(p, j)| {
                            (p + j).min(k) == s
                                && at(i - 1, p) < INF
                                && table.get(c, DpState::Free(j)) < INF
                                && at(i - 1, p) + table.get(c, DpState::Free(j)) == target
                        })
                        .expect("inconsistent table: no knapsack predecessor");
                    stack.push((c, DpState::Free(j)));
                    s = prev;
                }
                debug_assert_eq!(s, 1.min(k));
            }
        }
    }
    witness
}

/// The all-k-isolation number (or its independent version) with a witness.
pub fn zeta_k(t: &Tree, k: usize, independent: bool) -> SolveResult {
    let table = solve_table(t, k, independent);
    let witness = reconstruct_witness(&table);
    let value = table.value() as usize;
    assert_eq!(witness.len(), value, "reconstruction disagrees with table");
    SolveResult { value, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_up_to, min_isolating_set, random_tree};
    use crate::predicates::{is_independent, is_isolating, IsolationSpec};

    #[test]
    fn odd_paths_need_one_vertex() {
        for k in 1..=6 {
            let p = Tree::path(2 * k + 1);
            assert_eq!(zeta_k(&p, k, false).value, 1);
            assert_eq!(zeta_k(&p, k, true).value, 1);
        }
    }

    #[test]
    fn tiny_trees_need_nothing() {
        for k in 2..=6 {
            for n in 1..k {
                let r = zeta_k(&Tree::path(n), k, true);
                assert_eq!(r.value, 0);
                assert!(r.witness.is_empty());
            }
        }
    }

    #[test]
    fn domination_numbers() {
        // gamma(P_n) = ceil(n / 3); the double star has i = 2 and n = 6 vs star.
        for n in 1..=12 {
            assert_eq!(zeta_k(&Tree::path(n), 1, false).value, n.div_ceil(3));
        }
        let double_star = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(zeta_k(&double_star, 1, false).value, 2);
        assert_eq!(zeta_k(&double_star, 1, true).value, 3);
    }

    #[test]
    fn matches_oracle_up_to_eight() {
        for t in enumerate_up_to(8).unwrap() {
            for k in 1..=6 {
                for independent in [false, true] {
                    let dp = zeta_k(&t, k, independent);
                    let spec = IsolationSpec::AllK(k);
                    let oracle = min_isolating_set(&t, &spec, independent).unwrap();
                    assert_eq!(dp.value, oracle.value, "{t:?} k={k} indep={independent}");
                    assert!(is_isolating(&t, &dp.witness, &spec).valid);
                    if independent {
                        assert!(is_independent(&t, &dp.witness));
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        for t in enumerate_up_to(8).unwrap() {
            let values: Vec<usize> = (1..=7).map(|k| zeta_k(&t, k, false).value).collect();
            assert!(values.windows(2).all(|w| w[0] >= w[1]), "{t:?} {values:?}");
        }
    }

    #[test]
    fn random_witnesses_certify() {
        for seed in 0..40 {
            let t = random_tree(60, seed);
            for k in [2, 3, 5] {
                let r = zeta_k(&t, k, seed % 2 == 0);
                assert!(is_isolating(&t, &r.witness, &IsolationSpec::AllK(k)).valid);
            }
        }
    }
}
