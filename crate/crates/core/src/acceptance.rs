//! The acceptance suite: ten end-to-end checks, each reported as one line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::exact::poly::poly_equal;
use crate::exact::rational::{factorial, int_to_rat, rat};
use crate::identities::{
    self, readings, registry, sweep, sweep_perturbed, verify_numeric, verify_polynomial, Grid, Perturbation, Point,
};
use crate::matches::{chen_decode, chen_encode, enum_match_sets};
use crate::numbers::{abar, catalan, hz_polynomial_classic, hz_polynomial_new, lehman_walsh, narayana, odd_cycle_count, schroeder};
use crate::parity::{reduction_report, total_weight};
use crate::trees::{enum_labeled_trees, gamma_count_formula, gamma_profile};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "Γ counts: closed form against explicit enumeration"),
    (2, "general binomial identity as a polynomial in r"),
    (3, "two-weight identity in (x, z) and its Stanley / Narayana specializations"),
    (4, "marked bicolored trees and the T recurrence"),
    (5, "Harer–Zagier forms, Lehman–Walsh coefficients"),
    (6, "permutation pairs: total weight, staged cancellation"),
    (7, "Chen bijection contract"),
    (8, "partial sums"),
    (9, "roots-of-unity multisection and its special values"),
    (10, "perturbed right sides are caught everywhere"),
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub ms: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {} ({} checks)", self.number, self.title, self.checks)?;
        if let Some(first) = self.failures.first() {
            write!(f, "; first failure: {first}")?;
            if self.failures.len() > 1 {
                write!(f, " (+{} more)", self.failures.len() - 1)?;
            }
        }
        Ok(())
    }
}

/// Accumulates individual checks; an error counts as a failed check.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn attempt<T>(&mut self, label: impl fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{label}: {e}"));
                None
            }
        }
    }

    fn sweep(&mut self, id: &str, grid: &[(&str, Grid)]) {
        let overrides: BTreeMap<String, Grid> = grid.iter().map(|(k, g)| (k.to_string(), g.clone())).collect();
        if let Some(r) = self.attempt(id, sweep(id, &overrides)) {
            let empty = r.points == 0;
            self.check(r.passed() && !empty, || match r.counterexamples.first() {
                Some(c) => format!("{id} at {:?}: {} vs {}", c.params, c.lhs, c.rhs),
                None => format!("{id}: empty grid"),
            });
        }
    }

    fn polynomial(&mut self, id: &str, fixed: Point, free: &[&str]) -> Option<identities::PolynomialEvaluation> {
        let label = format!("{id} at {}", identities::format_point(&fixed));
        let e = self.attempt(&label, verify_polynomial(id, &fixed, free))?;
        self.check(e.equal, || format!("{label}: {} vs {}", e.lhs, e.rhs));
        Some(e)
    }
}

fn point(pairs: &[(&str, i64)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), rat(*v))).collect()
}

fn finish(number: u8, tally: Tally, start: Instant) -> CriterionResult {
    let title = CRITERIA[number as usize - 1].1;
    CriterionResult {
        number,
        title,
        passed: tally.failures.is_empty() && tally.checks > 0,
        checks: tally.checks,
        failures: tally.failures,
        ms: start.elapsed().as_millis(),
    }
}

fn gamma_counts(t: &mut Tally) {
    for size in 2..=6u32 {
        for n in 0..=size {
            for x in 0..=size - n {
                let q = size - n - x;
                let Some(profile) = t.attempt(format!("Γ({n},{x},{q})"), gamma_profile(n, x, q)) else {
                    continue;
                };
                for k in 0..=n + 1 {
                    let explicit = profile.get(k as usize).cloned().unwrap_or_else(BigInt::zero);
                    let formula = gamma_count_formula(n, x, q, k);
                    t.check(explicit == formula, || format!("n={n} x={x} q={q} k={k}: {explicit} vs {formula}"));
                }
            }
        }
    }
}

fn general_binomial(t: &mut Tally) {
    for n in 0..=8i64 {
        for q in -n - 2..=8 {
            let Some(e) = t.polynomial("general-binomial", point(&[("n", n), ("q", q)]), &["r"]) else {
                continue;
            };
            // In this form the lower index is one below the Γ form's, so the
            // vanishing regimes are −n ≤ q < 0 and q < −n.
            if q < 0 {
                t.check(e.lhs.is_zero() && e.rhs.is_zero(), || format!("n={n} q={q}: expected 0 = 0"));
            } else {
                t.check(!e.rhs.is_zero(), || format!("n={n} q={q}: C(r, q) vanished"));
            }
        }
    }
}

fn two_weight(t: &mut Tally) {
    for n in 0..=6 {
        for q in 0..=4 {
            t.polynomial("two-weight", point(&[("n", n), ("q", q)]), &["x", "z"]);
        }
    }
    t.sweep("stanley", &[("n", Grid::Range(0, 8)), ("z", Grid::Range(-3, 3))]);
    if let Some(e) = t.attempt("stanley n=2 z=2", verify_numeric("stanley", &point(&[("n", 2), ("z", 2)]))) {
        t.check(e.lhs == rat(13) && e.rhs == rat(13), || format!("stanley n=2 z=2: {} vs {}", e.lhs, e.rhs));
    }
    t.sweep("narayana-new", &[("n", Grid::Range(1, 8)), ("z", Grid::Range(-2, 4))]);

    // x = q = 1 and z → z−1 turns the two-weight sides into Stanley's sides, swapped;
    // q = 0, x = 2 gives n times the Narayana polynomial on the right.
    for n in 0..=8 {
        for z in -3..=4 {
            let tw = verify_numeric("two-weight", &point(&[("n", n), ("q", 1), ("x", 1), ("z", z - 1)]));
            let st = verify_numeric("stanley", &point(&[("n", n), ("z", z)]));
            if let (Some(tw), Some(st)) = (t.attempt("two-weight", tw), t.attempt("stanley", st)) {
                t.check(tw.lhs == st.rhs && tw.rhs == st.lhs, || format!("Stanley specialization n={n} z={z}"));
            }
            if n >= 1 {
                let tw = verify_numeric("two-weight", &point(&[("n", n), ("q", 0), ("x", 2), ("z", z - 1)]));
                let nn = verify_numeric("narayana-new", &point(&[("n", n), ("z", z)]));
                if let (Some(tw), Some(nn)) = (t.attempt("two-weight", tw), t.attempt("narayana-new", nn)) {
                    t.check(tw.rhs == rat(n) * nn.lhs, || format!("Narayana specialization n={n} z={z}"));
                }
            }
        }
    }
    for n in 1..=8i64 {
        let row: Option<BigInt> = (1..=n).map(|k| narayana(n, k).ok().map(|v| v << k as usize)).sum();
        let s = schroeder(n as u32);
        t.check(row.as_ref() == Some(&s), || format!("Σ N(n,k) 2^k at n={n}: {row:?} vs {s}"));
    }
}

fn marked_trees(t: &mut Tally) {
    t.sweep("t-schroeder", &[("n", Grid::Range(1, 8))]);
    t.sweep("t-recurrence", &[("n", Grid::Range(1, 8))]);
}

fn harer_zagier(t: &mut Tally) {
    for n in 0..=10u32 {
        let (c, m) = (hz_polynomial_classic(n), hz_polynomial_new(n));
        t.check(poly_equal(&c, &m), || format!("n={n}: {c} vs {m}"));
        let a0 = c.coeff(&[("x", n as usize + 1)]);
        t.check(a0 == int_to_rat(&catalan(n)), || format!("A({n},0) = {a0}"));
    }
    t.sweep("lehman-walsh", &[("n", Grid::Range(0, 8))]);
    for (n, g, v) in [(1u32, 0u32, 1u32), (2, 1, 1), (3, 1, 10)] {
        let got = lehman_walsh(n, g);
        t.check(got.as_ref().ok() == Some(&BigInt::from(v)), || format!("A({n},{g}) = {got:?}, want {v}"));
    }
}

fn pairs(t: &mut Tally) {
    for n in 0..=7u32 {
        for g in 0..=n / 2 {
            let Some(weight) = t.attempt(format!("pairs n={n} g={g}"), total_weight(n, g)) else {
                continue;
            };
            let a = abar(n, g);
            let odd = odd_cycle_count(n + 1, g).map(|o| o << (n - 2 * g) as usize);
            t.check(BigInt::from(weight) == a && odd.as_ref().ok() == Some(&a), || {
                format!("n={n} g={g}: weight {weight}, abar {a}, odd {odd:?}")
            });
            if let Some(r) = t.attempt(format!("reduction n={n} g={g}"), reduction_report(n, g)) {
                t.check(r.passed(), || format!("reduction n={n} g={g}: {r:?}"));
            }
        }
    }
}

fn chen(t: &mut Tally) {
    for n in 1..=5u32 {
        let expected = factorial(2 * n as u64) / factorial(n as u64);
        let Some(trees) = t.attempt(format!("trees n={n}"), enum_labeled_trees(n as usize)) else {
            continue;
        };
        let Some(sets) = t.attempt(format!("match sets n={n}"), enum_match_sets(n)) else {
            continue;
        };
        t.check(BigInt::from(trees.len()) == expected, || format!("{} labeled trees at n={n}", trees.len()));
        t.check(BigInt::from(sets.len()) == expected, || format!("{} match sets at n={n}", sets.len()));

        let mut images = BTreeSet::new();
        let mut bad = 0usize;
        for tree in &trees {
            match chen_encode(tree) {
                Ok(ms) => {
                    let ok = ms.n() == n
                        && ms.unstarred_roots() == tree.internal_labels()
                        && ms.unstarred_leaves() == tree.leaf_labels()
                        && chen_decode(&ms).as_ref() == Ok(tree);
                    bad += usize::from(!ok);
                    images.insert(ms);
                }
                Err(_) => bad += 1,
            }
        }
        t.check(bad == 0, || format!("n={n}: {bad} trees fail encode/decode"));
        t.check(images.len() == sets.len(), || format!("n={n}: encode hits {} of {} sets", images.len(), sets.len()));
        let back = sets
            .iter()
            .filter(|ms| !matches!(chen_decode(ms).and_then(|tr| chen_encode(&tr)), Ok(ref again) if again == *ms))
            .count();
        t.check(back == 0, || format!("n={n}: {back} match sets fail decode/encode"));
    }
}

fn partial_sums(t: &mut Tally) {
    for n in 0..=6 {
        for n1 in 0..=n {
            for q in 0..=3 {
                t.polynomial("partial-sum", point(&[("n", n), ("n1", n1), ("q", q)]), &["x", "z"]);
            }
        }
    }
    t.sweep(
        "partial-signed",
        &[("n", Grid::Range(0, 8)), ("n1", Grid::Range(0, 8)), ("x", Grid::Range(-3, 5))],
    );
    t.sweep("partial-pair", &[("n", Grid::Range(0, 8)), ("n1", Grid::Range(0, 8))]);
    for n in 0..=10 {
        t.polynomial("alt-partial", point(&[("n", n)]), &["x"]);
    }
}

fn multisection(t: &mut Tally) {
    t.sweep(
        "rou-general",
        &[
            ("k", Grid::Range(1, 6)),
            ("n", Grid::Range(0, 3)),
            ("t", Grid::Range(0, 5)),
            ("q", Grid::Range(-2, 2)),
            ("z", Grid::Values(vec![rat(-2), rat(-1), rat(1), rat(2)])),
        ],
    );
    t.sweep("rou-k1", &[("n", Grid::Range(0, 4))]);
    t.sweep("rou-k2", &[("n", Grid::Range(0, 4)), ("t", Grid::Range(0, 1))]);
    t.sweep("rou-k4", &[("n", Grid::Range(0, 4)), ("t", Grid::Range(0, 3))]);
    t.sweep("rou-evals", &[("n", Grid::Range(0, 4))]);
    t.sweep("even-odd-pair", &[("n", Grid::Range(0, 8))]);
    if let Some(ds) = t.attempt("disambiguation", readings::disambiguate()) {
        for d in ds {
            t.check(d.agrees(), || format!("{}: sweep picks {:?}, registry uses {}", d.subject, d.chosen, d.frozen));
        }
    }
}

fn mutation(t: &mut Tally) {
    for identity in registry() {
        let id = identity.id;
        if let Some(r) = t.attempt(id, sweep_perturbed(id, &BTreeMap::new(), Perturbation(1))) {
            let missed = r.points - r.counterexamples.len();
            t.check(r.points > 0 && missed == 0, || format!("{id}: {missed} of {} perturbed points still agree", r.points));
        }
    }
}

pub fn run(number: u8) -> Option<CriterionResult> {
    let body: fn(&mut Tally) = match number {
        1 => gamma_counts,
        2 => general_binomial,
        3 => two_weight,
        4 => marked_trees,
        5 => harer_zagier,
        6 => pairs,
        7 => chen,
        8 => partial_sums,
        9 => multisection,
        10 => mutation,
        _ => return None,
    };
    let start = Instant::now();
    let mut tally = Tally::default();
    body(&mut tally);
    Some(finish(number, tally, start))
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).filter_map(run).collect()
}
