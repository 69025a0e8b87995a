//! The reproducibility harness: seven fixed, deterministic checks, each
//! reported as one pass/fail line.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{
    color4_all3, color5_all4, color6_all5, color_star_isolating, make_dynamic_counted, o7,
    search_coloring, ColorError, ColoringResult,
};
use crate::constructive::{independent_allk_set, CaseLabel};
use crate::dp::zeta_k;
use crate::families::{
    gen_counterexample_hk, gen_gap_gadget, is_member_tk, verify_hk_key_observation, GapGadgetRecipe,
};
use crate::oracle::{
    canonical_form, enumerate_up_to, max_disjoint_isolating_sets, min_isolating_set, random_tree,
};
use crate::predicates::{
    certify_coloring, is_dynamic, is_independent, is_isolating, IsolationSpec,
};
use crate::tree::Tree;

const SEED: u64 = 0x1507_a7ed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// Counts on success, the first failure otherwise.
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} {verdict} {}: {} checks; {}",
            self.id, self.name, self.checks, self.detail
        )
    }
}

/// Collects checks; keeps the first failure message.
struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn report(
        self,
        id: usize,
        name: &'static str,
        start: Instant,
        summary: String,
    ) -> CriterionReport {
        CriterionReport {
            id,
            name,
            passed: self.failure.is_none(),
            checks: self.checks,
            detail: self.failure.unwrap_or(summary),
            millis: start.elapsed().as_millis(),
        }
    }
}

fn small_trees(max_n: usize) -> Vec<Tree> {
    enumerate_up_to(max_n).expect("desk-scale enumeration")
}

/// Exact DP agrees with brute force on every tree up to order 9.
pub fn dp_matches_oracle() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    for t in small_trees(9) {
        for k in 1..=6 {
            for independent in [false, true] {
                let dp = zeta_k(&t, k, independent).value;
                let oracle =
                    min_isolating_set(&t, &IsolationSpec::AllK(k), independent).map(|r| r.value);
                tally.check(oracle.as_ref() == Ok(&dp), || {
                    format!("{t:?} k={k} independent={independent}: dp {dp}, oracle {oracle:?}")
                });
            }
        }
    }
    tally.report(1, "exact DP equals brute force", start, "all agree".into())
}

fn check_bound(tally: &mut Tally, t: &Tree, k: usize, labels: &mut BTreeSet<CaseLabel>) {
    match independent_allk_set(t, k) {
        Ok(r) => {
            labels.extend(r.trace.iter().map(|s| s.case));
            let ok = r.size == r.set.len()
                && r.size <= t.n() / (k + 1)
                && is_independent(t, &r.set)
                && is_isolating(t, &r.set, &IsolationSpec::AllK(k)).valid;
            tally.check(ok, || {
                format!("{t:?} k={k}: set {:?} fails", r.set.to_vec())
            });
        }
        Err(e) => tally.check(false, || format!("{t:?} k={k}: {e}")),
    }
}

/// Constructive independent sets meet `floor(n / (k + 1))`, and every case
/// of the construction occurs.
pub fn constructive_bound() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut labels = BTreeSet::new();
    for t in small_trees(10) {
        for k in (2..=6).filter(|&k| k != t.n()) {
            check_bound(&mut tally, &t, k, &mut labels);
        }
    }
    let missing: Vec<CaseLabel> = CaseLabel::ALL
        .iter()
        .copied()
        .filter(|c| !labels.contains(c))
        .collect();
    tally.check(missing.is_empty(), || {
        format!("cases never taken: {missing:?}")
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut random_labels = BTreeSet::new();
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=6);
        let n = loop {
            let n = rng.gen_range(1..=200);
            if n != k {
                break n;
            }
        };
        let t = random_tree(n, rng.gen());
        check_bound(&mut tally, &t, k, &mut random_labels);
    }
    tally.report(
        2,
        "independent set within n/(k+1)",
        start,
        format!("cases seen {labels:?}; 10000 random trees up to order 200"),
    )
}

/// Membership in the extremal family matches both optima hitting `n/(k+1)`.
pub fn extremal_equivalence() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut members = 0;
    for t in small_trees(10) {
        for k in [2, 3] {
            if t.n() % (k + 1) != 0 {
                continue;
            }
            let target = t.n() / (k + 1);
            let member = is_member_tk(&t, k).map(|m| m.member);
            let zeta = min_isolating_set(&t, &IsolationSpec::AllK(k), false).map(|r| r.value);
            let zeta_i = min_isolating_set(&t, &IsolationSpec::AllK(k), true).map(|r| r.value);
            let (Ok(member), Ok(zeta), Ok(zeta_i)) = (member, zeta, zeta_i) else {
                tally.check(false, || format!("{t:?} k={k}: solver error"));
                continue;
            };
            members += usize::from(member);
            tally.check(member == (zeta == target) && member == (zeta_i == target), || {
                format!("{t:?} k={k}: member {member}, optimum {zeta}, independent {zeta_i}, target {target}")
            });
        }
    }
    tally.report(
        3,
        "extremal family characterization",
        start,
        format!("{members} members"),
    )
}

fn constructor_ok(
    tally: &mut Tally,
    t: &Tree,
    what: &str,
    r: Result<ColoringResult, ColorError>,
    excluded: bool,
) {
    match r {
        Ok(r) => {
            let ok = match (&r.coloring, r.exception) {
                (Some(c), None) => !excluded && certify_coloring(t, c, &r.spec).valid,
                (None, Some(_)) => excluded,
                _ => false,
            };
            tally.check(ok, || {
                format!("{what} on {t:?}: exception {:?}", r.exception)
            });
        }
        Err(e) => tally.check(false, || format!("{what} on {t:?}: {e}")),
    }
}

/// Every constructor colors every small tree except its named exceptions,
/// and search shows the exceptions have no valid coloring at all.
pub fn coloring_partitions() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let o7_form = canonical_form(&o7());
    let mut exceptions = 0;
    let mut refute = |tally: &mut Tally, t: &Tree, l: usize, spec: IsolationSpec| {
        exceptions += 1;
        let found = search_coloring(t, l, &spec);
        tally.check(matches!(found, Ok(None)), || {
            format!("{t:?} with {l} colors for {spec:?}: {found:?}")
        });
    };
    let mut trees = small_trees(10);
    trees.push(o7());
    for t in &trees {
        let n = t.n();
        let is_o7 = canonical_form(t) == o7_form;
        if n <= 10 && !is_o7 {
            constructor_ok(&mut tally, t, "4 colors", color4_all3(t), n == 3);
            constructor_ok(&mut tally, t, "5 colors", color5_all4(t), n == 4);
            constructor_ok(&mut tally, t, "6 colors", color6_all5(t), n == 5);
            for k in 2..=4 {
                let star = t.is_star() && n == k;
                constructor_ok(
                    &mut tally,
                    t,
                    "star colors",
                    color_star_isolating(t, k),
                    star,
                );
            }
        }
        if n == 3 {
            refute(&mut tally, t, 4, IsolationSpec::AllK(3));
        }
        if n == 4 {
            refute(&mut tally, t, 5, IsolationSpec::AllK(4));
        }
        if n == 5 || is_o7 {
            refute(&mut tally, t, 6, IsolationSpec::AllK(5));
        }
        if is_o7 {
            constructor_ok(&mut tally, t, "6 colors", color6_all5(t), true);
        }
        for k in 2..=4 {
            if t.is_star() && n == k {
                refute(&mut tally, t, k + 1, IsolationSpec::Star(k));
            }
        }
    }
    tally.report(
        4,
        "isolating colorings and their exceptions",
        start,
        format!("{} trees, {exceptions} exceptions refuted", trees.len()),
    )
}

/// The spider gadget forces two hits off its privileged vertices, which caps
/// disjoint path-isolating families below `k + 1`.
pub fn disjoint_sets_gadget() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut summary = Vec::new();
    for (k, bound) in [(7, 7), (8, 8)] {
        match verify_hk_key_observation(k, &Tree::single()) {
            Ok(r) => {
                let ok = r.certificate.valid
                    && r.min_gadget_hits_off_privileged >= 2
                    && r.family_bound == bound
                    && r.ceiling == bound
                    && bound < k + 1
                    && (k != 7 || r.min_gadget_hits_off_privileged == 2);
                tally.check(ok, || format!("k={k}: {r:?}"));
                summary.push(format!("k={k} bound {} < {}", r.family_bound, k + 1));
            }
            Err(e) => tally.check(false, || format!("k={k}: {e}")),
        }
        // Brute force on the gadget plus one host vertex.
        let gadget = gen_counterexample_hk(k).expect("k >= 7");
        let h = gadget.tree.n();
        let mut edges = gadget.tree.edges();
        edges.push((gadget.w, h));
        let joined = Tree::from_edges(h + 1, &edges).expect("a tree");
        let found =
            max_disjoint_isolating_sets(&joined, &IsolationSpec::path(k), k + 1).map(|r| r.count);
        tally.check(found.as_ref().is_ok_and(|&c| c <= bound), || {
            format!("k={k}: disjoint families {found:?}")
        });
    }
    tally.report(
        5,
        "disjoint path-isolating families",
        start,
        summary.join(", "),
    )
}

/// The gap gadget separates the two optima by `b - 1`.
pub fn independence_gap() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let spec = IsolationSpec::path(2);
    for b in [2, 3] {
        let recipe = GapGadgetRecipe {
            pattern: Tree::path(2),
            root: 0,
            b,
        };
        let t = gen_gap_gadget(&recipe).expect("valid recipe");
        let plain = min_isolating_set(&t, &spec, false).map(|r| r.value);
        let independent = min_isolating_set(&t, &spec, true).map(|r| r.value);
        tally.check(plain == Ok(2) && independent == Ok(b + 1), || {
            format!("b={b}: {plain:?} and {independent:?}")
        });
    }
    tally.report(6, "independence gap gadget", start, "gaps 1 and 2".into())
}

/// Dynamicization of constructor output: bounded interchanges, dynamic
/// result, classes still isolating.
pub fn dynamicization() -> CriterionReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut colorings = 0;
    let mut total_swaps = 0;
    let mut nontrivial = 0;
    while colorings < 1000 {
        let n = rng.gen_range(6..=80);
        let t = random_tree(n, rng.gen());
        let which = colorings % 4;
        let produced = match which {
            0 => color4_all3(&t),
            1 => color5_all4(&t),
            2 => color6_all5(&t),
            _ => color_star_isolating(&t, rng.gen_range(2..=8)),
        };
        let r = match produced {
            Ok(r) => r,
            Err(e) => {
                tally.check(false, || format!("constructor {which} on {t:?}: {e}"));
                colorings += 1;
                continue;
            }
        };
        let Some(c) = r.coloring else {
            continue;
        };
        colorings += 1;
        let limit: usize = (0..n).map(|v| t.degree(v).min(c.num_colors - 1)).sum();
        match make_dynamic_counted(&t, &c, &r.spec) {
            Ok((d, swaps)) => {
                total_swaps += swaps;
                nontrivial += usize::from(swaps > 0);
                let ok =
                    swaps <= limit && is_dynamic(&t, &d) && certify_coloring(&t, &d, &r.spec).valid;
                tally.check(ok, || format!("{t:?}: {swaps} interchanges, limit {limit}"));
            }
            Err(e) => tally.check(false, || format!("{t:?}: {e}")),
        }
    }
    tally.report(
        7,
        "dynamicization",
        start,
        format!("{nontrivial} inputs needed interchanges, {total_swaps} in total"),
    )
}

pub type Criterion = fn() -> CriterionReport;

/// The checks in order.
pub const CRITERIA: [Criterion; 7] = [
    dp_matches_oracle,
    constructive_bound,
    extremal_equivalence,
    coloring_partitions,
    disjoint_sets_gadget,
    independence_gap,
    dynamicization,
];

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| c()).collect()
}
