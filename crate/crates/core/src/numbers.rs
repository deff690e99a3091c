//! Closed-form sequences: Narayana, Schröder, Stirling cycle numbers, odd-cycle
//! permutation counts and the unicellular map counts A(n, g).

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::Polynomial;
use crate::exact::rational::{binomial_int, factorial, int_to_rat, rat, to_integer, Rational};
use crate::exact::scalar::{sum_range, Scalar};

pub fn catalan(n: u32) -> BigInt {
    binomial_int(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// `N_{n,k} = (1/n) C(n,k) C(n,k-1)`, the number of plane trees with n edges and k leaves.
pub fn narayana(n: i64, k: i64) -> Result<BigInt> {
    if n <= 0 {
        return Err(Error::invalid(format!("narayana needs n >= 1, got {n}")));
    }
    let value = int_to_rat(&(binomial_int(n, k) * binomial_int(n, k - 1))) / rat(n);
    to_integer(&value)
}

/// Large Schröder numbers through the Narayana evaluation at 2.
pub fn schroeder(n: u32) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    (1..=n as i64)
        .map(|k| narayana(n as i64, k).expect("n >= 1") << k as usize)
        .sum()
}

/// `T_n = C(n,2) S_{n-1}`: plane trees with n edges, two marked internal
/// vertices and bicolored leaves.
pub fn marked_schroeder(n: u32) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    binomial_int(n as i64, 2) * schroeder(n - 1)
}

/// Permutations of [n] with k cycles.
pub fn stirling1_unsigned(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = k as usize;
    let mut row = vec![BigInt::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigInt::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            if j >= 1 {
                *slot += &row[j - 1];
            }
            if j < m {
                *slot += &row[j] * BigInt::from(m - 1);
            }
        }
        row = next;
    }
    row[k].clone()
}

/// Partitions of `total` into exactly `parts` odd parts, largest part first.
fn odd_partitions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut p = cap.min(left);
        if p.is_multiple_of(2) {
            p = p.saturating_sub(1);
        }
        while p >= 1 {
            if left - p >= parts - 1 {
                prefix.push(p);
                go(left - p, parts - 1, p, prefix, out);
                prefix.pop();
            }
            if p < 2 {
                break;
            }
            p -= 2;
        }
    }
    let mut out = Vec::new();
    go(total, parts, total, &mut Vec::new(), &mut out);
    out
}

/// `O(m, g)`: permutations of [m] made of exactly `m - 2g` cycles, all of odd length.
pub fn odd_cycle_count(m: u32, g: u32) -> Result<BigInt> {
    if m < 2 * g + 1 {
        return Err(Error::invalid(format!(
            "odd_cycle_count needs m - 2g >= 1, got m={m}, g={g}"
        )));
    }
    let mut total = BigInt::zero();
    for parts in odd_partitions(m, m - 2 * g) {
        // m! / (Π parts · Π multiplicity!)
        let mut denom = BigInt::one();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                denom *= parts[j];
                j += 1;
            }
            denom *= factorial((j - i) as u64);
            i = j;
        }
        total += factorial(m as u64) / denom;
    }
    Ok(total)
}

/// `(2n)! / (2^n n!)`, the double factorial (2n-1)!!.
fn hz_prefactor(n: u32) -> Rational {
    int_to_rat(&(factorial(2 * n as u64) / (factorial(n as u64) << n as usize)))
}

/// Harer–Zagier generating polynomial Σ_g A(n,g) x^{n+1-2g}, classic form.
pub fn hz_polynomial_classic(n: u32) -> Polynomial {
    hz_classic_sum(n, &Polynomial::var("x")).scale(&hz_prefactor(n))
}

/// The same polynomial from the binomial-sum expression `Σ_k C(n,k) C(x+n-k, n+1)`.
pub fn hz_polynomial_new(n: u32) -> Polynomial {
    hz_new_sum(n, &Polynomial::var("x")).scale(&hz_prefactor(n))
}

/// `Σ_{k≥1} 2^{k-1} C(n,k-1) C(x,k)`.
pub fn hz_classic_sum<S: Scalar>(n: u32, x: &S) -> S {
    let n = n as i64;
    sum_range(1, n + 1, |k| {
        x.choose(k).scale(&int_to_rat(&(binomial_int(n, k - 1) << (k - 1) as usize)))
    })
}

/// `Σ_{k≥0} C(n,k) C(x+n-k, n+1)`.
pub fn hz_new_sum<S: Scalar>(n: u32, x: &S) -> S {
    let n = n as i64;
    sum_range(0, n, |k| x.add_int(n - k).choose(n + 1).scale(&int_to_rat(&binomial_int(n, k))))
}

/// Lehman–Walsh: `A(n,g) = (2n)! / ((n+1)! n! 2^{2g}) · O(n+1, g)`.
pub fn lehman_walsh(n: u32, g: u32) -> Result<BigInt> {
    let odd = odd_cycle_count(n + 1, g)?;
    let numer = factorial(2 * n as u64) * odd;
    let denom = (factorial(n as u64 + 1) * factorial(n as u64)) << (2 * g as usize);
    to_integer(&Rational::new(numer, denom))
}

/// `Ā(n,g) = Σ_k C(n,k) Σ_{i+j=n+2-2g} c(n-k+1, i) (-1)^{k+1-j} c(k+1, j)`.
pub fn abar(n: u32, g: u32) -> BigInt {
    let total = n as i64 + 2 - 2 * g as i64;
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let mut inner = BigInt::zero();
        for j in 0..=total {
            let i = total - j;
            let term = stirling1_unsigned(n - k + 1, i) * stirling1_unsigned(k + 1, j);
            if (k as i64 + 1 - j).rem_euclid(2) == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        acc += binomial_int(n as i64, k as i64) * inner;
    }
    acc
}

/// Rows of a named sequence, indexed by small integer tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: String,
    pub index_names: Vec<&'static str>,
    pub rows: Vec<(Vec<i64>, BigInt)>,
}

pub const TABLE_NAMES: [&str; 6] = [
    "narayana",
    "schroeder",
    "stirling1",
    "odd-cycles",
    "hz",
    "lehman-walsh",
];

impl SequenceTable {
    /// Regenerates the table from its formula for indices up to `max`.
    pub fn build(name: &str, max: u32) -> Result<Self> {
        let mut rows = Vec::new();
        let index_names = match name {
            "narayana" => {
                for n in 1..=max as i64 {
                    for k in 1..=n {
                        rows.push((vec![n, k], narayana(n, k)?));
                    }
                }
                vec!["n", "k"]
            }
            "schroeder" => {
                for n in 0..=max {
                    rows.push((vec![n as i64], schroeder(n)));
                }
                vec!["n"]
            }
            "stirling1" => {
                for n in 0..=max {
                    for k in 0..=n as i64 {
                        rows.push((vec![n as i64, k], stirling1_unsigned(n, k)));
                    }
                }
                vec!["n", "k"]
            }
            "odd-cycles" => {
                for m in 1..=max {
                    for g in 0..=(m - 1) / 2 {
                        rows.push((vec![m as i64, g as i64], odd_cycle_count(m, g)?));
                    }
                }
                vec!["m", "g"]
            }
            "hz" => {
                for n in 0..=max {
                    let p = hz_polynomial_classic(n);
                    for g in 0..=n.div_ceil(2) {
                        let c = p.coeff(&[("x", (n + 1 - 2 * g) as usize)]);
                        rows.push((vec![n as i64, g as i64], to_integer(&c)?));
                    }
                }
                vec!["n", "g"]
            }
            "lehman-walsh" => {
                for n in 0..=max {
                    for g in 0..=n / 2 {
                        rows.push((vec![n as i64, g as i64], lehman_walsh(n, g)?));
                    }
                }
                vec!["n", "g"]
            }
            other => {
                return Err(Error::invalid(format!(
                    "unknown table `{other}` (expected one of {})",
                    TABLE_NAMES.join(", ")
                )))
            }
        };
        if let Some((idx, v)) = rows.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::invalid(format!("{name}{idx:?} = {v} is negative")));
        }
        Ok(SequenceTable {
            name: name.to_string(),
            index_names,
            rows,
        })
    }

    /// CSV with header `name,<index names>,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::invalid(format!("csv output failed: {e}"));
        let mut header = vec!["name"];
        header.extend(&self.index_names);
        header.push("value");
        w.write_record(&header).map_err(io)?;
        for (idx, value) in &self.rows {
            let mut record = vec![self.name.clone()];
            record.extend(idx.iter().map(i64::to_string));
            record.push(value.to_string());
            w.write_record(&record).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::invalid(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_equal;
    use itertools::Itertools;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for s in 0..perm.len() {
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out
    }

    #[test]
    fn narayana_examples() {
        assert_eq!(narayana(3, 2).unwrap(), big(3));
        assert_eq!(narayana(5, 1).unwrap(), big(1));
        assert_eq!(narayana(4, 2).unwrap(), big(6));
        assert_eq!(narayana(4, 0).unwrap(), big(0));
        assert_eq!(narayana(4, 5).unwrap(), big(0));
        assert!(narayana(0, 1).is_err());
    }

    #[test]
    fn narayana_rows_sum_to_catalan() {
        for n in 1..=12 {
            let row: BigInt = (0..=n + 1).map(|k| narayana(n, k).unwrap()).sum();
            assert_eq!(row, catalan(n as u32), "n={n}");
        }
    }

    #[test]
    fn schroeder_values() {
        let expected = [1, 2, 6, 22, 90, 394, 1806, 8558];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(schroeder(n as u32), big(*e));
        }
    }

    // The three-term recurrence is stated with S_1 = S_2 = 1; it holds for the
    // large Schröder numbers only after shifting the index by one.
    #[test]
    fn schroeder_recurrence_holds_with_shifted_index() {
        let s = |n: i64| schroeder(n as u32);
        for n in 2..=10i64 {
            let lhs = big(3 * (2 * n - 1)) * s(n - 1);
            let rhs = big(n + 1) * s(n) + big(n - 2) * s(n - 2);
            assert_eq!(lhs, rhs, "n={n}");
        }
        let n = 2;
        let unshifted_lhs = big(3 * (2 * n - 1)) * s(n);
        let unshifted_rhs = big(n + 1) * s(n + 1) + big(n - 2) * s(n - 1);
        assert_ne!(unshifted_lhs, unshifted_rhs);
    }

    #[test]
    fn stirling_examples_and_row_sums() {
        assert_eq!(stirling1_unsigned(3, 2), big(3));
        assert_eq!(stirling1_unsigned(4, 4), big(1));
        assert_eq!(stirling1_unsigned(4, 1), big(6));
        assert_eq!(stirling1_unsigned(0, 0), big(1));
        assert_eq!(stirling1_unsigned(3, 4), big(0));
        for n in 0..=10u32 {
            let total: BigInt = (0..=n as i64).map(|k| stirling1_unsigned(n, k)).sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn stirling_brute_force() {
        for n in 0..=6usize {
            let mut counts = vec![0i64; n + 1];
            for perm in (0..n).permutations(n) {
                counts[cycle_lengths(&perm).len()] += 1;
            }
            for (k, c) in counts.iter().enumerate() {
                assert_eq!(stirling1_unsigned(n as u32, k as i64), big(*c), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn stirling_expansions() {
        let x = Polynomial::var("x");
        for n in 0..=8u32 {
            let mut rising = Polynomial::one();
            let mut falling = Polynomial::one();
            for i in 0..n as i64 {
                rising = &rising * &x.add_int(i);
                falling = &falling * &x.add_int(-i);
            }
            let mut pos = Polynomial::zero();
            let mut signed = Polynomial::zero();
            for k in 0..=n as i64 {
                let c = int_to_rat(&stirling1_unsigned(n, k));
                let mono = Polynomial::monomial("x", k as usize, c);
                pos = &pos + &mono;
                signed = if (n as i64 - k) % 2 == 0 { &signed + &mono } else { &signed - &mono };
            }
            assert!(poly_equal(&rising, &pos), "n={n}");
            assert!(poly_equal(&falling, &signed), "n={n}");
        }
    }

    #[test]
    fn odd_cycle_examples() {
        assert_eq!(odd_cycle_count(3, 0).unwrap(), big(1));
        assert_eq!(odd_cycle_count(3, 1).unwrap(), big(2));
        assert_eq!(odd_cycle_count(4, 1).unwrap(), big(8));
        assert_eq!(odd_cycle_count(5, 2).unwrap(), big(24));
        assert!(odd_cycle_count(4, 2).is_err());
    }

    #[test]
    fn odd_cycles_brute_force() {
        for m in 1..=8usize {
            let mut counts = std::collections::BTreeMap::<usize, i64>::new();
            for perm in (0..m).permutations(m) {
                let lens = cycle_lengths(&perm);
                if lens.iter().all(|l| l % 2 == 1) {
                    *counts.entry((m - lens.len()) / 2).or_default() += 1;
                }
            }
            for g in 0..=((m - 1) / 2) {
                let expected = counts.get(&g).copied().unwrap_or(0);
                assert_eq!(odd_cycle_count(m as u32, g as u32).unwrap(), big(expected), "m={m} g={g}");
            }
        }
    }

    #[test]
    fn hz_examples() {
        let x = Polynomial::var("x");
        assert_eq!(hz_polynomial_classic(0), x);
        assert_eq!(hz_polynomial_classic(1), x.pow(2));
        let two = &x.pow(3).scale(&rat(2)) + &x;
        assert_eq!(hz_polynomial_classic(2), two);
        assert_eq!(hz_polynomial_new(2), two);
        assert_eq!(hz_polynomial_new(1), x.pow(2));
        assert_eq!(hz_polynomial_new(0), x);
    }

    #[test]
    fn hz_forms_agree() {
        for n in 0..=10 {
            assert!(poly_equal(&hz_polynomial_classic(n), &hz_polynomial_new(n)), "n={n}");
        }
    }

    #[test]
    fn hz_shape_and_lehman_walsh() {
        for n in 0..=10u32 {
            let p = hz_polynomial_classic(n);
            for (exps, c) in p.terms() {
                let e = exps[0] as u32;
                assert!(e <= n + 1 && (n + 1 - e).is_multiple_of(2), "n={n} stray power {e}");
                assert!(c.is_integer() && c.is_positive(), "n={n} coefficient {c}");
            }
            if n <= 8 {
                for g in 0..=n / 2 {
                    let c = p.coeff(&[("x", (n + 1 - 2 * g) as usize)]);
                    assert_eq!(c, int_to_rat(&lehman_walsh(n, g).unwrap()), "n={n} g={g}");
                }
            }
            assert_eq!(lehman_walsh(n, 0).unwrap(), catalan(n));
        }
        assert_eq!(lehman_walsh(1, 0).unwrap(), big(1));
        assert_eq!(lehman_walsh(2, 1).unwrap(), big(1));
        assert_eq!(lehman_walsh(3, 1).unwrap(), big(10));
    }

    #[test]
    fn abar_matches_odd_cycles() {
        assert_eq!(abar(2, 1), big(2));
        assert_eq!(abar(2, 0), big(4));
        assert_eq!(abar(3, 1), big(16));
        for n in 0..=8u32 {
            for g in 0..=n / 2 {
                let expected = odd_cycle_count(n + 1, g).unwrap() << (n - 2 * g) as usize;
                assert_eq!(abar(n, g), expected, "n={n} g={g}");
            }
        }
    }

    #[test]
    fn schroeder_csv() {
        let t = SequenceTable::build("schroeder", 3).unwrap();
        assert_eq!(
            t.to_csv_string().unwrap(),
            "name,n,value\nschroeder,0,1\nschroeder,1,2\nschroeder,2,6\nschroeder,3,22\n"
        );
        for name in TABLE_NAMES {
            let t = SequenceTable::build(name, 6).unwrap();
            assert!(!t.rows.is_empty(), "{name}");
        }
        assert!(SequenceTable::build("motzkin", 3).is_err());
    }
}
