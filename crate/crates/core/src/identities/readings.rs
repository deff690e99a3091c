//! Alternative readings of the special evaluations whose printed form is
//! ambiguous, and the sweep that decides between them.

use serde::Serialize;

use crate::error::Result;

use super::formulas::{even_odd_sides, rou_eval_sides};

/// The six special evaluations of the multisected two-weight identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouCase {
    /// Squared binomials, general k.
    Squares,
    /// Narayana weights, general k.
    Narayana,
    /// Squared binomials at k = 2.
    SquaresHalf,
    /// Narayana weights at k = 2.
    NarayanaHalf,
    /// Narayana weights at k = 4.
    NarayanaQuarter,
    /// Squared binomials at k = 4.
    SquaresQuarter,
}

impl RouCase {
    pub const ALL: [RouCase; 6] = [
        RouCase::Squares,
        RouCase::Narayana,
        RouCase::SquaresHalf,
        RouCase::NarayanaHalf,
        RouCase::NarayanaQuarter,
        RouCase::SquaresQuarter,
    ];

    pub fn from_index(i: i64) -> Option<RouCase> {
        usize::try_from(i).ok().and_then(|i| Self::ALL.get(i).copied())
    }

    pub fn name(self) -> &'static str {
        match self {
            RouCase::Squares => "squares",
            RouCase::Narayana => "narayana",
            RouCase::SquaresHalf => "squares-k2",
            RouCase::NarayanaHalf => "narayana-k2",
            RouCase::NarayanaQuarter => "narayana-k4",
            RouCase::SquaresQuarter => "squares-k4",
        }
    }

    /// The multisection order the case is pinned to, if any.
    pub fn fixed_k(self) -> Option<i64> {
        match self {
            RouCase::Squares | RouCase::Narayana => None,
            RouCase::SquaresHalf | RouCase::NarayanaHalf => Some(2),
            RouCase::NarayanaQuarter | RouCase::SquaresQuarter => Some(4),
        }
    }

    pub fn uses_normalization(self) -> bool {
        matches!(self, RouCase::Narayana | RouCase::NarayanaHalf | RouCase::NarayanaQuarter)
    }

    pub fn uses_constant(self) -> bool {
        matches!(self, RouCase::SquaresHalf | RouCase::SquaresQuarter)
    }
}

/// Prefactor in front of the Narayana-weighted right sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `1/n`, as typeset.
    Printed,
    /// `k/(kn+t)`, obtained by redoing the substitution x = 2, q = 0.
    Derived,
}

/// Where the trailing `−1` of the squared-binomial evaluations sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantScope {
    OutsideSum,
    PerTerm,
}

pub const FROZEN_NORMALIZATION: Normalization = Normalization::Derived;
pub const FROZEN_SCOPE: ConstantScope = ConstantScope::OutsideSum;
/// Constant on the right of the even (index 0) and odd (index 1) splittings.
pub const FROZEN_EVEN_ODD: [i64; 2] = [1, -1];

/// Grid used to choose between readings.
pub fn reading_points(case: RouCase) -> Vec<(i64, i64, i64)> {
    let ks: Vec<i64> = match case.fixed_k() {
        Some(k) => vec![k],
        None => (1..=6).collect(),
    };
    let mut out = Vec::new();
    for k in ks {
        let max_n = if k <= 2 { 6 } else { 3 };
        for n in 0..=max_n {
            for t in 0..k {
                if case.uses_normalization() && k * n + t == 0 {
                    continue;
                }
                out.push((k, n, t));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingOutcome {
    pub reading: String,
    pub points: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Disambiguation {
    pub subject: String,
    pub outcomes: Vec<ReadingOutcome>,
    /// The only reading with no failures, if exactly one survives.
    pub chosen: Option<String>,
    pub frozen: String,
}

impl Disambiguation {
    pub fn agrees(&self) -> bool {
        self.chosen.as_deref() == Some(self.frozen.as_str())
    }
}

fn decide(subject: String, frozen: String, outcomes: Vec<ReadingOutcome>) -> Disambiguation {
    let survivors: Vec<&ReadingOutcome> = outcomes.iter().filter(|o| o.failures == 0).collect();
    let chosen = match survivors.as_slice() {
        [one] => Some(one.reading.clone()),
        _ => None,
    };
    Disambiguation {
        subject,
        outcomes,
        chosen,
        frozen,
    }
}

fn count_rou(case: RouCase, norm: Normalization, scope: ConstantScope) -> Result<ReadingOutcome> {
    let points = reading_points(case);
    let mut failures = 0;
    for &(k, n, t) in &points {
        match rou_eval_sides(case, k, n, t, norm, scope) {
            Ok((l, r)) if l == r => {}
            Ok(_) => failures += 1,
            // The printed 1/n is undefined at n = 0; that counts against it.
            Err(_) => failures += 1,
        }
    }
    let reading = if case.uses_normalization() {
        format!("{norm:?}")
    } else {
        format!("{scope:?}")
    };
    Ok(ReadingOutcome {
        reading,
        points: points.len(),
        failures,
    })
}

/// Sweeps every candidate reading and reports which survive.
pub fn disambiguate() -> Result<Vec<Disambiguation>> {
    let mut out = Vec::new();
    for case in RouCase::ALL {
        if case.uses_normalization() {
            let outcomes = [Normalization::Printed, Normalization::Derived]
                .into_iter()
                .map(|norm| count_rou(case, norm, FROZEN_SCOPE))
                .collect::<Result<Vec<_>>>()?;
            out.push(decide(format!("{} normalization", case.name()), format!("{FROZEN_NORMALIZATION:?}"), outcomes));
        } else if case.uses_constant() {
            let outcomes = [ConstantScope::OutsideSum, ConstantScope::PerTerm]
                .into_iter()
                .map(|scope| count_rou(case, FROZEN_NORMALIZATION, scope))
                .collect::<Result<Vec<_>>>()?;
            out.push(decide(format!("{} constant", case.name()), format!("{FROZEN_SCOPE:?}"), outcomes));
        }
    }
    for parity in 0..2 {
        let outcomes = [-1i64, 0, 1]
            .into_iter()
            .map(|c| {
                let failures = (0..=8)
                    .filter(|&n| {
                        let (l, r) = even_odd_sides(parity, n, c);
                        l != r
                    })
                    .count();
                ReadingOutcome {
                    reading: format!("{c:+}"),
                    points: 9,
                    failures,
                }
            })
            .collect();
        let name = if parity == 0 { "even" } else { "odd" };
        out.push(decide(
            format!("{name} splitting constant"),
            format!("{:+}", FROZEN_EVEN_ODD[parity as usize]),
            outcomes,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_readings_are_the_unique_survivors() {
        for d in disambiguate().unwrap() {
            assert!(d.agrees(), "{d:?}");
        }
    }

    #[test]
    fn printed_normalization_fails_away_from_t_zero() {
        let (l, r) = rou_eval_sides(RouCase::NarayanaHalf, 2, 2, 1, Normalization::Printed, FROZEN_SCOPE).unwrap();
        assert_ne!(l, r);
        let (l, r) = rou_eval_sides(RouCase::NarayanaHalf, 2, 2, 1, Normalization::Derived, FROZEN_SCOPE).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn case_index_round_trip() {
        for (i, c) in RouCase::ALL.iter().enumerate() {
            assert_eq!(RouCase::from_index(i as i64), Some(*c));
        }
        assert_eq!(RouCase::from_index(6), None);
        assert_eq!(RouCase::from_index(-1), None);
    }
}
