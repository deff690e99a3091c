//! Weighted pairs of permutations behind the odd-cycle form of Ā(n, g).
//!
//! A pair (α, β) splits {0, 1, …, n+1} into a part carrying α, which contains
//! 0, and a part carrying β, which contains n+1. Its weight is (−1)^{d(β)} with
//! d(β) = #elements − #cycles of β. The members of 𝒯(n, g) have n+2−2g cycles
//! in total. Two cancellations bring the signed total down to a plain count:
//! `phi` pairs X = {|β_{n+1}| odd, |α_0| ≥ 2} with Y = {|β_{n+1}| even}, and
//! `varphi` cancels the members of U = {|α_0| = 1, |β_{n+1}| odd} that own an
//! even cycle. What is left, V, has only odd cycles and weight +1.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits;
use crate::numbers::odd_cycle_count;

pub type Cycles = Vec<Vec<u32>>;

/// Rotates each cycle to start at its minimum and sorts cycles by minimum.
pub fn canonical_cycles(mut cycles: Cycles) -> Cycles {
    for c in &mut cycles {
        if let Some(pos) = c.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i) {
            c.rotate_left(pos);
        }
    }
    cycles.retain(|c| !c.is_empty());
    cycles.sort_by_key(|c| c[0]);
    cycles
}

pub fn format_cycles(cycles: &[Vec<u32>]) -> String {
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")))
        .collect()
}

/// Parses `(0 1 2)(3)`; an empty string is the empty permutation.
pub fn parse_cycles(text: &str) -> Result<Cycles> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner_end = rest
            .find(')')
            .filter(|_| rest.starts_with('('))
            .ok_or_else(|| Error::Parse(format!("bad cycle notation `{text}`")))?;
        let cycle: std::result::Result<Vec<u32>, _> =
            rest[1..inner_end].split_whitespace().map(str::parse).collect();
        let cycle = cycle.map_err(|_| Error::Parse(format!("bad cycle notation `{text}`")))?;
        if cycle.is_empty() {
            return Err(Error::Parse(format!("empty cycle in `{text}`")));
        }
        out.push(cycle);
        rest = rest[inner_end + 1..].trim_start();
    }
    Ok(canonical_cycles(out))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclePair {
    alpha: Cycles,
    beta: Cycles,
}

impl CyclePair {
    /// Validates that the cycles partition {0, …, top}, with 0 in α and the
    /// largest element `top` in β.
    pub fn new(alpha: Cycles, beta: Cycles) -> Result<Self> {
        let alpha = canonical_cycles(alpha);
        let beta = canonical_cycles(beta);
        let mut all: Vec<u32> = alpha.iter().chain(&beta).flatten().copied().collect();
        all.sort();
        let top = all.last().copied().unwrap_or(0);
        if all != (0..=top).collect::<Vec<_>>() || top == 0 {
            return Err(Error::invalid("cycles must partition {0, ..., n+1}"));
        }
        let pair = CyclePair { alpha, beta };
        if pair.alpha_zero_cycle().is_none() {
            return Err(Error::invalid("0 must lie in alpha"));
        }
        if pair.beta_top_cycle().is_none() {
            return Err(Error::invalid("the largest element must lie in beta"));
        }
        Ok(pair)
    }

    pub fn alpha(&self) -> &[Vec<u32>] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Vec<u32>] {
        &self.beta
    }

    /// n + 1, the largest element.
    pub fn top(&self) -> u32 {
        self.alpha.iter().chain(&self.beta).flatten().copied().max().unwrap_or(0)
    }

    pub fn cycle_count(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    fn alpha_zero_cycle(&self) -> Option<usize> {
        self.alpha.iter().position(|c| c.contains(&0))
    }

    fn beta_top_cycle(&self) -> Option<usize> {
        let top = self.top();
        self.beta.iter().position(|c| c.contains(&top))
    }

    pub fn alpha_zero_len(&self) -> usize {
        self.alpha[self.alpha_zero_cycle().unwrap()].len()
    }

    pub fn beta_top_len(&self) -> usize {
        self.beta[self.beta_top_cycle().unwrap()].len()
    }

    /// (−1)^{d(β)}, d(β) = #elements − #cycles.
    pub fn weight(&self) -> i64 {
        let elements: usize = self.beta.iter().map(Vec::len).sum();
        if (elements - self.beta.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn in_x(&self) -> bool {
        self.beta_top_len() % 2 == 1 && self.alpha_zero_len() >= 2
    }

    pub fn in_y(&self) -> bool {
        self.beta_top_len().is_multiple_of(2)
    }

    pub fn in_u(&self) -> bool {
        self.beta_top_len() % 2 == 1 && self.alpha_zero_len() == 1
    }

    pub fn all_cycles_odd(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|c| c.len() % 2 == 1)
    }
}

impl fmt::Display for CyclePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", format_cycles(&self.alpha), format_cycles(&self.beta))
    }
}

impl FromStr for CyclePair {
    type Err = Error;

    /// `alpha | beta`, both in cycle notation.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("expected `alpha | beta`, got `{s}`")))?;
        CyclePair::new(parse_cycles(a)?, parse_cycles(b)?)
    }
}

/// All permutations of `set` (sorted ascending) in canonical cycle form.
fn permutations_in_cycles(set: &[u32]) -> Vec<Cycles> {
    fn go(rest: &[u32], acc: &mut Cycles, out: &mut Vec<Cycles>) {
        let Some((&first, others)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        // The cycle through `first` is `first` followed by an arrangement of a
        // subset of the others.
        fn extend(
            cycle: &mut Vec<u32>,
            free: &[u32],
            used: &mut Vec<bool>,
            acc: &mut Cycles,
            out: &mut Vec<Cycles>,
        ) {
            let remaining: Vec<u32> = free
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(v, _)| *v)
                .collect();
            acc.push(cycle.clone());
            go(&remaining, acc, out);
            acc.pop();
            for i in 0..free.len() {
                if !used[i] {
                    used[i] = true;
                    cycle.push(free[i]);
                    extend(cycle, free, used, acc, out);
                    cycle.pop();
                    used[i] = false;
                }
            }
        }
        let mut used = vec![false; others.len()];
        extend(&mut vec![first], others, &mut used, acc, out);
    }
    let mut out = Vec::new();
    go(set, &mut Vec::new(), &mut out);
    out
}

fn check_size(n: u32) -> Result<()> {
    limits::check("pair size n", n as usize, limits::PAIR_SIZE)
}

/// Visits every pair on {0, …, n+1}, regardless of cycle count.
fn for_each_pair(n: u32, mut visit: impl FnMut(&CyclePair)) {
    for mask in 0u32..1 << n {
        let mut a = vec![0u32];
        let mut b = Vec::new();
        for v in 1..=n {
            if mask >> (v - 1) & 1 == 1 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        b.push(n + 1);
        let alphas = permutations_in_cycles(&a);
        let betas = permutations_in_cycles(&b);
        for alpha in &alphas {
            for beta in &betas {
                visit(&CyclePair {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            }
        }
    }
}

fn genus_cycles(n: u32, g: u32) -> Result<usize> {
    let total = n as i64 + 2 - 2 * g as i64;
    if total < 2 {
        return Err(Error::invalid(format!("n + 2 - 2g must be at least 2, got n={n}, g={g}")));
    }
    Ok(total as usize)
}

/// The members of 𝒯(n, g): pairs with n+2−2g cycles in total.
pub fn enum_pairs(n: u32, g: u32) -> Result<Vec<CyclePair>> {
    check_size(n)?;
    let cycles = genus_cycles(n, g)?;
    let mut out = Vec::new();
    for_each_pair(n, |p| {
        if p.cycle_count() == cycles {
            out.push(p.clone());
        }
    });
    Ok(out)
}

pub fn total_weight(n: u32, g: u32) -> Result<i64> {
    Ok(enum_pairs(n, g)?.iter().map(CyclePair::weight).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Forward on X moves α(0) into β right after n+1; inverse on Y moves β(n+1)
/// back into α right after 0.
pub fn phi(pair: &CyclePair, direction: Direction) -> Result<CyclePair> {
    let mut alpha = pair.alpha.clone();
    let mut beta = pair.beta.clone();
    let ai = pair.alpha_zero_cycle().unwrap();
    let bi = pair.beta_top_cycle().unwrap();
    let top = pair.top();
    match direction {
        Direction::Forward => {
            if !pair.in_x() {
                return Err(Error::Domain {
                    map: "phi",
                    detail: format!("{pair} needs |beta_top| odd and |alpha_0| >= 2"),
                });
            }
            // The 0-cycle starts at 0, so α(0) is its second entry.
            let moved = alpha[ai].remove(1);
            let at = beta[bi].iter().position(|&v| v == top).unwrap();
            beta[bi].insert(at + 1, moved);
        }
        Direction::Inverse => {
            if !pair.in_y() {
                return Err(Error::Domain {
                    map: "phi inverse",
                    detail: format!("{pair} needs |beta_top| even"),
                });
            }
            let cycle = &mut beta[bi];
            let at = cycle.iter().position(|&v| v == top).unwrap();
            let moved = cycle.remove((at + 1) % cycle.len());
            alpha[ai].insert(1, moved);
        }
    }
    Ok(CyclePair {
        alpha: canonical_cycles(alpha),
        beta: canonical_cycles(beta),
    })
}

/// On U, moves the even cycle holding the smallest element to the other side.
pub fn varphi(pair: &CyclePair) -> Result<CyclePair> {
    if !pair.in_u() {
        return Err(Error::Domain {
            map: "varphi",
            detail: format!("{pair} needs |alpha_0| = 1 and |beta_top| odd"),
        });
    }
    let best_alpha = pair.alpha.iter().position(|c| c.len() % 2 == 0);
    let best_beta = pair.beta.iter().position(|c| c.len() % 2 == 0);
    let mut alpha = pair.alpha.clone();
    let mut beta = pair.beta.clone();
    match (best_alpha, best_beta) {
        (None, None) => {
            return Err(Error::Domain {
                map: "varphi",
                detail: format!("{pair} has no even cycle"),
            })
        }
        (Some(a), b) if b.is_none_or(|b| pair.alpha[a][0] < pair.beta[b][0]) => {
            let c = alpha.remove(a);
            beta.push(c);
        }
        (_, Some(b)) => {
            let c = beta.remove(b);
            alpha.push(c);
        }
        (Some(_), None) => unreachable!(),
    }
    Ok(CyclePair {
        alpha: canonical_cycles(alpha),
        beta: canonical_cycles(beta),
    })
}

/// Splits a member of V into a permutation of [n+1] and the set of its cycles
/// (other than the one through n+1) that were carried by α.
pub fn unfold(pair: &CyclePair) -> (Cycles, Cycles) {
    let chosen: Cycles = pair.alpha.iter().filter(|c| c[..] != [0]).cloned().collect();
    let mut perm = chosen.clone();
    perm.extend(pair.beta.iter().cloned());
    (canonical_cycles(perm), chosen)
}

/// Inverse of [`unfold`].
pub fn fold(perm: &[Vec<u32>], chosen: &[Vec<u32>]) -> Result<CyclePair> {
    let mut alpha = vec![vec![0]];
    alpha.extend(chosen.iter().cloned());
    let beta: Cycles = perm.iter().filter(|c| !chosen.contains(c)).cloned().collect();
    CyclePair::new(alpha, beta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub n: u32,
    pub g: u32,
    pub t_size: usize,
    pub t_weight: i64,
    pub x_size: usize,
    pub y_size: usize,
    pub u_size: usize,
    pub u_weight: i64,
    pub v_size: usize,
    pub v_all_positive: bool,
    pub expected_v: String,
    pub phi_cancels: bool,
    pub varphi_cancels: bool,
    pub unfolding_is_bijective: bool,
    pub beta_top_bound_holds: bool,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.v_all_positive
            && self.phi_cancels
            && self.varphi_cancels
            && self.unfolding_is_bijective
            && self.beta_top_bound_holds
            && self.expected_v == self.v_size.to_string()
            && self.t_weight == self.v_size as i64
    }
}

/// Stages 𝒯 → U → V as explicit sets and checks every step of the cancellation.
pub fn reduction_report(n: u32, g: u32) -> Result<ReductionReport> {
    let t = enum_pairs(n, g)?;
    let members: HashSet<&CyclePair> = t.iter().collect();
    let x: Vec<&CyclePair> = t.iter().filter(|p| p.in_x()).collect();
    let y: Vec<&CyclePair> = t.iter().filter(|p| p.in_y()).collect();
    let u: Vec<&CyclePair> = t.iter().filter(|p| p.in_u()).collect();

    let mut images = HashSet::new();
    let mut phi_cancels = x.len() == y.len();
    for p in &x {
        let image = phi(p, Direction::Forward)?;
        phi_cancels &= image.weight() == -p.weight()
            && members.contains(&image)
            && image.in_y()
            && phi(&image, Direction::Inverse)? == **p;
        images.insert(image);
    }
    phi_cancels &= images.len() == y.len();

    let mut varphi_cancels = true;
    let mut v = Vec::new();
    for p in &u {
        if p.all_cycles_odd() {
            v.push(*p);
            continue;
        }
        let image = varphi(p)?;
        varphi_cancels &= image.weight() == -p.weight()
            && image.in_u()
            && members.contains(&image)
            && varphi(&image)? == **p;
    }

    let v_all_positive = v.iter().all(|p| p.weight() == 1 && p.alpha_zero_len() == 1);
    let bound = 2 * g as usize + 1;
    let beta_top_bound_holds = t.iter().all(|p| p.beta_top_len() <= bound);

    let expected = odd_cycle_count(n + 1, g)? << (n - 2 * g) as usize;
    let mut unfolded = BTreeSet::new();
    let mut unfolding_is_bijective = true;
    let odd_cycles = (n + 1 - 2 * g) as usize;
    for p in &v {
        let (perm, chosen) = unfold(p);
        unfolding_is_bijective &= perm.len() == odd_cycles
            && perm.iter().all(|c| c.len() % 2 == 1)
            && chosen.iter().all(|c| !c.contains(&(n + 1)))
            && fold(&perm, &chosen)? == **p;
        unfolded.insert((perm, chosen));
    }
    // Every odd permutation of [n+1] with the right cycle count, with every
    // choice of non-top cycles, must be hit.
    let distinct_perms: BTreeSet<&Cycles> = unfolded.iter().map(|(perm, _)| perm).collect();
    unfolding_is_bijective &= unfolded.len() == v.len()
        && BigInt::from(distinct_perms.len()) == odd_cycle_count(n + 1, g)?
        && BigInt::from(unfolded.len()) == expected;

    Ok(ReductionReport {
        n,
        g,
        t_size: t.len(),
        t_weight: t.iter().map(CyclePair::weight).sum(),
        x_size: x.len(),
        y_size: y.len(),
        u_size: u.len(),
        u_weight: u.iter().map(|p| p.weight()).sum(),
        v_size: v.len(),
        v_all_positive,
        expected_v: expected.to_string(),
        phi_cancels,
        varphi_cancels,
        unfolding_is_bijective,
        beta_top_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::abar;

    fn pair(s: &str) -> CyclePair {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_text_round_trip() {
        let p = pair("(1 2 0) | (3)");
        assert_eq!(p.to_string(), "(0 1 2) | (3)");
        assert_eq!(parse_cycles("(2 1)(0)").unwrap(), vec![vec![0], vec![1, 2]]);
        assert!("(0) | (1) (1)".parse::<CyclePair>().is_err());
        assert!("(1) | (0)".parse::<CyclePair>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        let p = enum_pairs(0, 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].to_string(), "(0) | (1)");
        assert_eq!(total_weight(2, 1).unwrap(), 2);
        assert_eq!(total_weight(2, 0).unwrap(), 4);
        assert_eq!(total_weight(3, 1).unwrap(), 16);
        for q in enum_pairs(1, 0).unwrap() {
            assert_eq!(q.cycle_count(), 3);
        }
        assert!(enum_pairs(1, 1).is_err());
        assert!(enum_pairs(8, 0).is_err());
    }

    #[test]
    fn permutation_generator_counts() {
        for m in 1..=6u32 {
            let set: Vec<u32> = (0..m).collect();
            let perms = permutations_in_cycles(&set);
            let distinct: HashSet<_> = perms.iter().collect();
            assert_eq!(perms.len(), (1..=m as usize).product::<usize>());
            assert_eq!(distinct.len(), perms.len());
            assert!(perms.iter().all(|c| canonical_cycles(c.clone()) == *c));
        }
    }

    #[test]
    fn phi_examples() {
        let p = pair("(0 1 2) | (3)");
        let q = phi(&p, Direction::Forward).unwrap();
        assert_eq!(q.to_string(), "(0 2) | (1 3)");
        assert_eq!((p.weight(), q.weight()), (1, -1));
        assert_eq!(phi(&q, Direction::Inverse).unwrap(), p);
        assert!(phi(&pair("(0) | (3)(1 2)"), Direction::Forward).is_err());
    }

    #[test]
    fn varphi_examples() {
        let p = pair("(0)(1 2) | (3)");
        let q = varphi(&p).unwrap();
        assert_eq!(q.to_string(), "(0) | (1 2)(3)");
        assert_eq!(varphi(&q).unwrap(), p);
        assert!(varphi(&pair("(0) | (1 2 4)(3)")).is_err());
    }

    #[test]
    fn weights_match_abar_small() {
        for n in 0..=5u32 {
            for g in 0..=n / 2 {
                assert_eq!(BigInt::from(total_weight(n, g).unwrap()), abar(n, g), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = reduction_report(2, 1).unwrap();
        assert_eq!(r.v_size, 2);
        assert!(r.passed(), "{r:?}");
        let r = reduction_report(2, 0).unwrap();
        assert_eq!(r.v_size, 4);
        assert!(r.v_all_positive);
        let r = reduction_report(4, 2).unwrap();
        assert_eq!(r.v_size, 24);
        assert!(r.passed(), "{r:?}");
    }
}
