//! Registry of binomial identities with exact numeric and polynomial checks.
//!
//! Each side is a single generic function over [`Scalar`]; numeric checks
//! instantiate it at [`Rational`], polynomial checks at [`Polynomial`] with
//! the chosen formal parameters left free. A polynomial check also rebuilds
//! every side by interpolating numeric values at `bound + 1` nodes per free
//! variable, so the two evaluation routes are compared against each other.

mod formulas;
pub mod readings;

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::poly::{poly_equal, Polynomial};
use crate::exact::rational::{parse_rational, rat, ratio, to_i64, Rational};
use crate::exact::scalar::Scalar;

pub use formulas::{even_odd_sides, rou_eval_sides};
pub use formulas::partial_signed_rhs_term;
use readings::{RouCase, FROZEN_EVEN_ODD, FROZEN_NORMALIZATION, FROZEN_SCOPE};

/// Parameter values by name.
pub type Point = BTreeMap<String, Rational>;

/// Evaluation environment: integer parameters and formal parameters, the
/// latter possibly replaced by free polynomial variables.
pub struct Env<'a, S> {
    point: &'a Point,
    free: &'a BTreeMap<String, S>,
}

impl<S: Scalar> Env<'_, S> {
    /// Integer parameter; points are validated before evaluation.
    pub fn int(&self, name: &str) -> i64 {
        let v = self.point.get(name).unwrap_or_else(|| panic!("parameter `{name}` missing"));
        to_i64(v).unwrap_or_else(|_| panic!("parameter `{name}` = {v} is not an integer"))
    }

    pub fn var(&self, name: &str) -> S {
        match self.free.get(name) {
            Some(v) => v.clone(),
            None => S::from_rational(self.point.get(name).unwrap_or_else(|| panic!("parameter `{name}` missing")).clone()),
        }
    }
}

type SideFn<S> = fn(&Env<S>) -> Result<S>;

#[derive(Clone, Copy)]
pub struct Side {
    num: SideFn<Rational>,
    sym: Option<SideFn<Polynomial>>,
}

macro_rules! generic_side {
    ($f:ident) => {
        Side {
            num: $f::<Rational>,
            sym: Some($f::<Polynomial>),
        }
    };
}

macro_rules! numeric_side {
    ($f:ident) => {
        Side { num: $f, sym: None }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    /// Summation bound or index; always an integer.
    Int,
    /// Enters polynomially; may be left free.
    Formal,
}

/// Values a parameter takes in a sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    Range(i64, i64),
    Values(Vec<Rational>),
}

impl Grid {
    pub fn values(&self) -> Vec<Rational> {
        match self {
            Grid::Range(lo, hi) => (*lo..=*hi).map(rat).collect(),
            Grid::Values(v) => v.clone(),
        }
    }

    /// `lo..hi` or a comma list of rationals.
    pub fn parse(text: &str) -> Result<Grid> {
        if let Some((lo, hi)) = text.split_once("..") {
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad range bound `{s}`")))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(Error::invalid(format!("empty range {lo}..{hi}")));
            }
            return Ok(Grid::Range(lo, hi));
        }
        let values = text.split(',').map(|v| parse_rational(v.trim())).collect::<Result<Vec<_>>>()?;
        Ok(Grid::Values(values))
    }
}

#[derive(Clone, Debug)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
    pub grid: Grid,
}

fn int(name: &'static str, lo: i64, hi: i64) -> Param {
    Param {
        name,
        kind: ParamKind::Int,
        grid: Grid::Range(lo, hi),
    }
}

fn formal(name: &'static str, values: Vec<Rational>) -> Param {
    Param {
        name,
        kind: ParamKind::Formal,
        grid: Grid::Values(values),
    }
}

fn ints(lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(rat).collect()
}

fn x_samples() -> Vec<Rational> {
    vec![rat(-3), rat(-1), rat(0), rat(1), rat(2), rat(5), ratio(1, 2)]
}

fn z_samples() -> Vec<Rational> {
    vec![rat(-2), rat(-1), ratio(1, 3), rat(1), rat(2)]
}

type Constraint = fn(&Point) -> std::result::Result<(), String>;
type DegreeBound = fn(&Point, &str) -> usize;

#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: Vec<Param>,
    constraint: Constraint,
    degree: Option<DegreeBound>,
    lhs: Side,
    rhs: Side,
}

impl Identity {
    pub fn formal_params(&self) -> Vec<&'static str> {
        self.params.iter().filter(|p| p.kind == ParamKind::Formal).map(|p| p.name).collect()
    }

    pub fn supports_polynomial(&self) -> bool {
        self.lhs.sym.is_some() && self.rhs.sym.is_some()
    }

    /// Checks integrality, presence of every parameter except `free`, and the constraint.
    fn validate(&self, point: &Point, free: &[&str]) -> Result<()> {
        let violation = |detail: String| Error::ConstraintViolation {
            id: self.id.to_string(),
            point: format_point(point),
            detail,
        };
        for name in point.keys() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(Error::invalid(format!("`{}` has no parameter `{name}`", self.id)));
            }
        }
        for p in &self.params {
            if free.contains(&p.name) {
                if p.kind != ParamKind::Formal {
                    return Err(Error::invalid(format!("`{}` is an integer parameter and cannot be free", p.name)));
                }
                if point.contains_key(p.name) {
                    return Err(Error::invalid(format!("`{}` is both free and fixed", p.name)));
                }
                continue;
            }
            let Some(v) = point.get(p.name) else {
                return Err(Error::invalid(format!("`{}` needs a value for `{}`", self.id, p.name)));
            };
            if p.kind == ParamKind::Int && !v.is_integer() {
                return Err(violation(format!("`{}` must be an integer, got {v}", p.name)));
            }
        }
        for f in free {
            if !self.params.iter().any(|p| p.name == *f) {
                return Err(Error::invalid(format!("`{}` has no parameter `{f}`", self.id)));
            }
        }
        // Constraints only involve integer parameters, so free ones are never consulted.
        (self.constraint)(point).map_err(violation)
    }
}

pub fn format_point(point: &Point) -> String {
    point.iter().map(|(k, v)| format!("{k}={v}")).join(",")
}

/// `n=3,x=1/2`; an empty string gives the empty point.
pub fn parse_point(text: &str) -> Result<Point> {
    let mut out = Point::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got `{part}`")))?;
        out.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: String,
    pub points: usize,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// A numeric evaluation of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Evaluation {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialEvaluation {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
}

/// Adds a constant to the right side; used to confirm a check can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Perturbation(pub i64);

fn params_of(point: &Point) -> BTreeMap<String, String> {
    point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

pub fn lookup(id: &str) -> Result<Identity> {
    registry()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify_numeric(id: &str, point: &Point) -> Result<Evaluation> {
    verify_numeric_perturbed(id, point, Perturbation::default())
}

pub fn verify_numeric_perturbed(id: &str, point: &Point, perturb: Perturbation) -> Result<Evaluation> {
    let identity = lookup(id)?;
    identity.validate(point, &[])?;
    eval_numeric(&identity, point, perturb)
}

fn eval_numeric(identity: &Identity, point: &Point, perturb: Perturbation) -> Result<Evaluation> {
    let free = BTreeMap::new();
    let env = Env { point, free: &free };
    Ok(Evaluation {
        lhs: (identity.lhs.num)(&env)?,
        rhs: (identity.rhs.num)(&env)? + rat(perturb.0),
    })
}

pub fn verify_polynomial(id: &str, fixed: &Point, free: &[&str]) -> Result<PolynomialEvaluation> {
    verify_polynomial_perturbed(id, fixed, free, Perturbation::default())
}

pub fn verify_polynomial_perturbed(
    id: &str,
    fixed: &Point,
    free: &[&str],
    perturb: Perturbation,
) -> Result<PolynomialEvaluation> {
    let identity = lookup(id)?;
    let (Some(lhs_sym), Some(rhs_sym)) = (identity.lhs.sym, identity.rhs.sym) else {
        return Err(Error::invalid(format!("`{id}` has no polynomial form")));
    };
    identity.validate(fixed, free)?;
    let vars: BTreeMap<String, Polynomial> = free.iter().map(|v| (v.to_string(), Polynomial::var(v))).collect();
    let env = Env { point: fixed, free: &vars };
    let lhs = lhs_sym(&env)?;
    let rhs = rhs_sym(&env)? + Polynomial::int(perturb.0);

    if let Some(bound) = identity.degree {
        let names: Vec<String> = free.iter().map(|v| v.to_string()).collect();
        let bounds: Vec<usize> = names.iter().map(|v| bound(fixed, v)).collect();
        for (side, poly, num) in [("left", &lhs, identity.lhs.num), ("right", &rhs, identity.rhs.num)] {
            for (v, b) in names.iter().zip(&bounds) {
                let d = poly.degree_in(v);
                if d > *b {
                    return Err(Error::invalid(format!("{id}: {side} side has degree {d} in {v}, bound {b}")));
                }
            }
            let nodes: Vec<Vec<Rational>> = bounds.iter().map(|b| (0..=*b as i64).map(rat).collect()).collect();
            let shift = if side == "right" { perturb.0 } else { 0 };
            let rebuilt = Polynomial::interpolate_grid(&names, &nodes, &|values: &[Rational]| {
                let mut point = fixed.clone();
                for (v, x) in names.iter().zip(values) {
                    point.insert(v.clone(), x.clone());
                }
                let empty = BTreeMap::new();
                num(&Env { point: &point, free: &empty }).map(|r| r + rat(shift))
            })?;
            if !poly_equal(&rebuilt, poly) {
                return Err(Error::invalid(format!(
                    "{id}: {side} side disagrees between symbolic build ({poly}) and interpolation ({rebuilt})"
                )));
            }
        }
    }
    let equal = poly_equal(&lhs, &rhs);
    Ok(PolynomialEvaluation { lhs, rhs, equal })
}

fn single_report(id: &str, point: &Point, lhs: String, rhs: String, equal: bool, start: Instant) -> Report {
    let counterexamples = if equal {
        Vec::new()
    } else {
        vec![Counterexample {
            params: params_of(point),
            lhs,
            rhs,
        }]
    };
    Report {
        id: id.to_string(),
        points: 1,
        status: if equal { Status::Verified } else { Status::Counterexample },
        counterexamples,
        ms: start.elapsed().as_millis(),
    }
}

/// [`verify_numeric`] packaged as a one-point report.
pub fn report_numeric(id: &str, point: &Point) -> Result<(Report, Evaluation)> {
    let start = Instant::now();
    let e = verify_numeric(id, point)?;
    let r = single_report(id, point, e.lhs.to_string(), e.rhs.to_string(), e.holds(), start);
    Ok((r, e))
}

/// [`verify_polynomial`] packaged as a one-point report.
pub fn report_polynomial(id: &str, fixed: &Point, free: &[&str]) -> Result<(Report, PolynomialEvaluation)> {
    let start = Instant::now();
    let e = verify_polynomial(id, fixed, free)?;
    let r = single_report(id, fixed, e.lhs.to_string(), e.rhs.to_string(), e.equal, start);
    Ok((r, e))
}

/// All grid points, in parameter order, that satisfy the constraint.
pub fn grid_points(identity: &Identity, overrides: &BTreeMap<String, Grid>) -> Result<Vec<Point>> {
    for name in overrides.keys() {
        if !identity.params.iter().any(|p| p.name == name) {
            return Err(Error::invalid(format!("`{}` has no parameter `{name}`", identity.id)));
        }
    }
    let axes: Vec<Vec<Rational>> = identity
        .params
        .iter()
        .map(|p| overrides.get(p.name).unwrap_or(&p.grid).values())
        .collect();
    let mut out = Vec::new();
    for combo in axes.iter().map(|a| a.iter()).multi_cartesian_product() {
        let point: Point = identity.params.iter().zip(combo).map(|(p, v)| (p.name.to_string(), v.clone())).collect();
        if identity.validate(&point, &[]).is_ok() {
            out.push(point);
        }
    }
    Ok(out)
}

pub fn sweep(id: &str, overrides: &BTreeMap<String, Grid>) -> Result<Report> {
    sweep_perturbed(id, overrides, Perturbation::default())
}

pub fn sweep_perturbed(id: &str, overrides: &BTreeMap<String, Grid>, perturb: Perturbation) -> Result<Report> {
    let start = Instant::now();
    let identity = lookup(id)?;
    let points = grid_points(&identity, overrides)?;
    let results: Vec<Result<Evaluation>> = points.par_iter().map(|p| eval_numeric(&identity, p, perturb)).collect();
    let mut counterexamples = Vec::new();
    for (point, result) in points.iter().zip(results) {
        let e = result?;
        if !e.holds() {
            counterexamples.push(Counterexample {
                params: params_of(point),
                lhs: e.lhs.to_string(),
                rhs: e.rhs.to_string(),
            });
        }
    }
    Ok(Report {
        id: id.to_string(),
        points: points.len(),
        status: if counterexamples.is_empty() { Status::Verified } else { Status::Counterexample },
        counterexamples,
        ms: start.elapsed().as_millis(),
    })
}

fn ok() -> std::result::Result<(), String> {
    Ok(())
}

fn need(cond: bool, msg: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn iv(p: &Point, name: &str) -> i64 {
    p.get(name).and_then(|v| to_i64(v).ok()).unwrap_or(0)
}

fn nonneg(d: i64) -> usize {
    d.max(0) as usize
}

fn rou_eval_lhs(e: &Env<Rational>) -> Result<Rational> {
    rou_eval_frozen(e).map(|(l, _)| l)
}

fn rou_eval_rhs(e: &Env<Rational>) -> Result<Rational> {
    rou_eval_frozen(e).map(|(_, r)| r)
}

fn rou_eval_frozen(e: &Env<Rational>) -> Result<(Rational, Rational)> {
    let case = RouCase::from_index(e.int("case")).expect("validated case");
    rou_eval_sides(case, e.int("k"), e.int("n"), e.int("t"), FROZEN_NORMALIZATION, FROZEN_SCOPE)
}

fn even_odd_lhs(e: &Env<Rational>) -> Result<Rational> {
    let p = e.int("parity");
    Ok(even_odd_sides(p, e.int("n"), FROZEN_EVEN_ODD[p as usize]).0)
}

fn even_odd_rhs(e: &Env<Rational>) -> Result<Rational> {
    let p = e.int("parity");
    Ok(even_odd_sides(p, e.int("n"), FROZEN_EVEN_ODD[p as usize]).1)
}

pub fn registry() -> Vec<Identity> {
    use formulas::*;
    vec![
        Identity {
            id: "stanley",
            summary: "Σ C(n,k)² z^k = Σ C(n,j) C(2n−j,n) (z−1)^j",
            params: vec![int("n", 0, 8), formal("z", ints(-3, 3))],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n"))),
            lhs: generic_side!(stanley_lhs),
            rhs: generic_side!(stanley_rhs),
        },
        Identity {
            id: "narayana-new",
            summary: "Σ N(n,k) z^k = Σ (1/(n+1)) C(n+1,k) C(2n−k,n) (z−1)^k",
            params: vec![int("n", 1, 10), formal("z", ints(-2, 4))],
            constraint: |p| need(iv(p, "n") >= 1, "n >= 1"),
            degree: Some(|p, _| nonneg(iv(p, "n"))),
            lhs: generic_side!(narayana_new_lhs),
            rhs: generic_side!(narayana_new_rhs),
        },
        Identity {
            id: "vandermonde",
            summary: "Σ C(r,k) C(m,n−k) = C(r+m,n)",
            params: vec![int("n", 0, 6), formal("r", x_samples()), formal("m", vec![rat(-2), rat(0), rat(3), ratio(-1, 3)])],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n"))),
            lhs: generic_side!(vandermonde_lhs),
            rhs: generic_side!(vandermonde_rhs),
        },
        Identity {
            id: "general-binomial",
            summary: "Σ (−1)^{n−k} C(n,k) C(k+r,n+q) = C(r,q)",
            params: vec![int("n", 0, 6), int("q", -8, 6), formal("r", x_samples())],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n") + iv(p, "q"))),
            lhs: generic_side!(general_binomial_lhs),
            rhs: generic_side!(general_binomial_rhs),
        },
        Identity {
            id: "gamma-signed",
            summary: "Σ (−1)^{n−k} C(n,k) C(k+n+x+q−2,n+q−1) = C(n+x+q−2,q−1)",
            params: vec![int("n", 0, 6), int("q", -3, 4), formal("x", x_samples())],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n") + iv(p, "q") - 1)),
            lhs: generic_side!(gamma_signed_lhs),
            rhs: generic_side!(gamma_signed_rhs),
        },
        Identity {
            id: "gamma-sign-count",
            summary: "signed count of Γ(n,x,q) over (n+x+q−1)! = C(n+x+q−2,q−1)",
            params: vec![int("n", 0, 6), int("x", 0, 6), int("q", 0, 6)],
            constraint: |p| {
                let s = iv(p, "n") + iv(p, "x") + iv(p, "q");
                need(iv(p, "n") >= 0 && iv(p, "x") >= 0 && iv(p, "q") >= 0, "n, x, q >= 0")?;
                need((2..=6).contains(&s), "2 <= n+x+q <= 6")
            },
            degree: None,
            lhs: numeric_side!(gamma_sign_weighted),
            rhs: Side {
                num: |e| gamma_signed_rhs::<Rational>(e),
                sym: None,
            },
        },
        Identity {
            id: "two-weight",
            summary: "Σ C(n,k) C(2n+x+q−k−2,n+q−1) z^k = Σ C(n,k) C(n+x+q−2,k+q−1) (z+1)^k",
            params: vec![int("n", 0, 6), int("q", 0, 3), formal("x", x_samples()), formal("z", z_samples())],
            constraint: |p| need(iv(p, "n") >= 0 && iv(p, "q") >= 0, "n, q >= 0"),
            degree: Some(|p, v| if v == "z" { nonneg(iv(p, "n")) } else { nonneg(iv(p, "n") + iv(p, "q") - 1) }),
            lhs: generic_side!(two_weight_lhs),
            rhs: generic_side!(two_weight_rhs),
        },
        Identity {
            id: "schroeder-eval",
            summary: "plane trees with bicolored leaves = Σ N(n,k) 2^k",
            params: vec![int("n", 1, 10)],
            constraint: |p| need(iv(p, "n") >= 1, "n >= 1"),
            degree: None,
            lhs: numeric_side!(schroeder_eval_lhs),
            rhs: numeric_side!(schroeder_eval_rhs),
        },
        Identity {
            id: "t-schroeder",
            summary: "T(n+1) = C(n+1,2) S(n)",
            params: vec![int("n", 1, 8)],
            constraint: |p| need(iv(p, "n") >= 1, "n >= 1"),
            degree: None,
            lhs: numeric_side!(t_schroeder_lhs),
            rhs: numeric_side!(t_schroeder_rhs),
        },
        Identity {
            id: "t-recurrence",
            summary: "3(2n−1)(n−1)(n+2) T(n+1) = n(n−1)(n+1) T(n+2) + (n−2)(n+1)(n+2) T(n)",
            params: vec![int("n", 1, 8)],
            constraint: |p| need(iv(p, "n") >= 1, "n >= 1"),
            degree: None,
            lhs: numeric_side!(t_recurrence_lhs),
            rhs: numeric_side!(t_recurrence_rhs),
        },
        Identity {
            id: "t-recurrence-derived",
            summary: "3(2n+1) T(n+1) = n T(n+2) + (n+1) T(n)",
            params: vec![int("n", 1, 8)],
            constraint: |p| need(iv(p, "n") >= 1, "n >= 1"),
            degree: None,
            lhs: numeric_side!(t_recurrence_derived_lhs),
            rhs: numeric_side!(t_recurrence_derived_rhs),
        },
        Identity {
            id: "hz-equivalence",
            summary: "(2n−1)!! Σ_{k≥1} 2^{k−1} C(n,k−1) C(x,k) = (2n−1)!! Σ_k C(n,k) C(x+n−k,n+1)",
            params: vec![int("n", 0, 10), formal("x", x_samples())],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n") + 1)),
            lhs: generic_side!(hz_classic),
            rhs: generic_side!(hz_new),
        },
        Identity {
            id: "lehman-walsh",
            summary: "[x^{n+1−2g}] of the Harer–Zagier polynomial = (2n)! O(n+1,g) / ((n+1)! n! 2^{2g})",
            params: vec![int("n", 0, 8), int("g", 0, 4)],
            constraint: |p| need(iv(p, "g") >= 0 && 2 * iv(p, "g") <= iv(p, "n"), "0 <= 2g <= n"),
            degree: None,
            lhs: numeric_side!(hz_coefficient),
            rhs: numeric_side!(lehman_walsh_value),
        },
        Identity {
            id: "gamma-count",
            summary: "#{T ∈ Γ(n,x,q) : |int| + |lev_Y| = k+x} = C(n,k) C(k+n+x+q−2,n+q−1) (n+x+q−1)!",
            params: vec![int("n", 0, 6), int("x", 0, 6), int("q", 0, 6), int("k", 0, 6)],
            constraint: |p| {
                let (n, x, q, k) = (iv(p, "n"), iv(p, "x"), iv(p, "q"), iv(p, "k"));
                need(n >= 0 && x >= 0 && q >= 0, "n, x, q >= 0")?;
                need((2..=6).contains(&(n + x + q)), "2 <= n+x+q <= 6")?;
                need((0..=n).contains(&k), "0 <= k <= n")
            },
            degree: None,
            lhs: numeric_side!(gamma_count_enumerated),
            rhs: numeric_side!(gamma_count_closed),
        },
        Identity {
            id: "abar-odd",
            summary: "Σ_k C(n,k) Σ_{i+j=n+2−2g} c(n−k+1,i) (−1)^{k+1−j} c(k+1,j) = 2^{n−2g} O(n+1,g)",
            params: vec![int("n", 0, 8), int("g", 0, 4)],
            constraint: |p| need(iv(p, "g") >= 0 && 2 * iv(p, "g") <= iv(p, "n"), "0 <= 2g <= n"),
            degree: None,
            lhs: numeric_side!(abar_sum),
            rhs: numeric_side!(abar_odd),
        },
        Identity {
            id: "abar-pairs",
            summary: "signed count of permutation pairs (α, β) with n+1−2g cycles = 2^{n−2g} O(n+1,g)",
            params: vec![int("n", 0, 6), int("g", 0, 3)],
            constraint: |p| need(iv(p, "g") >= 0 && 2 * iv(p, "g") <= iv(p, "n"), "0 <= 2g <= n"),
            degree: None,
            lhs: numeric_side!(pair_total_weight),
            rhs: numeric_side!(abar_odd),
        },
        Identity {
            id: "partial-sum",
            summary: "Σ_{k≤n1} C(n,k) C(n+x+q+k−2,n+q−1) z^{n−k} = Σ_{k≤n1} C(n,k) C(n+x+q−2,q+n−1−k) Σ_{i≤n1−k} C(n−k,i) z^{n−k−i}",
            params: vec![int("n", 0, 6), int("n1", 0, 6), int("q", 0, 3), formal("x", x_samples()), formal("z", z_samples())],
            constraint: |p| {
                need(iv(p, "q") >= 0, "q >= 0")?;
                need(0 <= iv(p, "n1") && iv(p, "n1") <= iv(p, "n"), "0 <= n1 <= n")
            },
            degree: Some(|p, v| if v == "z" { nonneg(iv(p, "n")) } else { nonneg(iv(p, "n") + iv(p, "q") - 1) }),
            lhs: generic_side!(partial_sum_lhs),
            rhs: generic_side!(partial_sum_rhs),
        },
        Identity {
            id: "partial-signed",
            summary: "Σ_{k≤n1} (−1)^{n−k} C(n,k) C(k+x+q+n−2,q+n−1) = Σ_{k≤n1} (−1)^{n−n1} C(n,k) C(x+q+n−2,q+n−1−k) C(n−k−1,n1−k)",
            params: vec![int("n", 0, 7), int("n1", 0, 7), int("q", 0, 3), formal("x", x_samples())],
            constraint: |p| {
                need(iv(p, "q") >= 0, "q >= 0")?;
                need(0 <= iv(p, "n1") && iv(p, "n1") <= iv(p, "n"), "0 <= n1 <= n")
            },
            degree: Some(|p, _| nonneg(iv(p, "n") + iv(p, "q") - 1)),
            lhs: generic_side!(partial_signed_lhs),
            rhs: generic_side!(partial_signed_rhs),
        },
        Identity {
            id: "partial-pair",
            summary: "which=1: Σ (−1)^{n1+k} C(n,k) C(k+n,n) = Σ C(n,k)² C(n−k−1,n1−k); which=2: Σ N(n,k+1) C(n−k−1,n1−k) = Σ (−1)^{k+n1} C(n,k) C(k+n+1,n)/(k+n+1)",
            params: vec![int("which", 1, 2), int("n", 0, 8), int("n1", 0, 8)],
            constraint: |p| {
                let w = iv(p, "which");
                need(w == 1 || w == 2, "which is 1 or 2")?;
                need(0 <= iv(p, "n1") && iv(p, "n1") <= iv(p, "n"), "0 <= n1 <= n")?;
                need(w == 1 || iv(p, "n") >= 1, "which=2 needs n >= 1")
            },
            degree: None,
            lhs: numeric_side!(partial_pair_lhs),
            rhs: numeric_side!(partial_pair_rhs),
        },
        Identity {
            id: "alt-partial",
            summary: "Σ_{k≤n} (−1)^k C(x,k) = (−1)^n C(x−1,n)",
            params: vec![int("n", 0, 10), formal("x", x_samples())],
            constraint: |p| need(iv(p, "n") >= 0, "n >= 0"),
            degree: Some(|p, _| nonneg(iv(p, "n"))),
            lhs: generic_side!(alt_partial_lhs),
            rhs: generic_side!(alt_partial_rhs),
        },
        Identity {
            id: "rou-general",
            summary: "z^t Σ_l C(kn+t,kl+t) C(kl+x+q+kn+2t−2,q+kn+t−1) z^{kl} = (1/k) Σ_i C(kn+t,i) C(x+q+kn+t−2,q+kn+t−1−i) z^i Σ_l (1+zω^l)^{kn+t−i} ω^{l(i−t)}",
            params: vec![
                int("k", 1, 6),
                int("n", 0, 3),
                int("t", 0, 5),
                int("q", -2, 2),
                formal("x", vec![rat(-1), rat(2), ratio(1, 2)]),
                formal("z", vec![rat(-2), rat(-1), rat(1), rat(2)]),
            ],
            constraint: |p| {
                let (k, n, t, q) = (iv(p, "k"), iv(p, "n"), iv(p, "t"), iv(p, "q"));
                need(k >= 1, "k >= 1")?;
                need(n >= 0, "n >= 0")?;
                need(0 <= t && t < k, "0 <= t < k")?;
                need(q <= 2, "q <= 2")
            },
            degree: Some(|p, v| {
                let m = iv(p, "k") * iv(p, "n") + iv(p, "t");
                if v == "z" {
                    nonneg(m)
                } else {
                    nonneg(m + iv(p, "q") - 1)
                }
            }),
            lhs: generic_side!(rou_general_lhs),
            rhs: generic_side!(rou_general_rhs),
        },
        Identity {
            id: "rou-k1",
            summary: "Σ C(n,l) C(n+x+q+l−2,n+q−1) z^l = Σ C(n,l) C(x+q+n−2,q+n−1−l) z^l (1+z)^{n−l}",
            params: vec![int("n", 0, 6), int("q", -2, 2), formal("x", x_samples()), formal("z", z_samples())],
            constraint: |p| need(iv(p, "n") >= 0 && iv(p, "q") <= 2, "n >= 0, q <= 2"),
            degree: Some(|p, v| if v == "z" { nonneg(iv(p, "n")) } else { nonneg(iv(p, "n") + iv(p, "q") - 1) }),
            lhs: generic_side!(rou_k1_lhs),
            rhs: generic_side!(rou_k1_rhs),
        },
        Identity {
            id: "rou-k2",
            summary: "2 z^t Σ C(2n+t,2l+t) C(2l+x+q+2n+2t−2,q+2n+t−1) z^{2l} = Σ C(2n+t,l) C(x+q+2n+t−2,q+2n+t−1−l) ((z−1)^{2n+t−l} + (z+1)^{2n+t−l}) z^l",
            params: vec![int("n", 0, 4), int("t", 0, 1), int("q", -2, 2), formal("x", x_samples()), formal("z", z_samples())],
            constraint: |p| {
                need(iv(p, "n") >= 0 && iv(p, "q") <= 2, "n >= 0, q <= 2")?;
                need((0..2).contains(&iv(p, "t")), "t in {0, 1}")
            },
            degree: Some(|p, v| {
                let m = 2 * iv(p, "n") + iv(p, "t");
                if v == "z" {
                    nonneg(m)
                } else {
                    nonneg(m + iv(p, "q") - 1)
                }
            }),
            lhs: generic_side!(rou_k2_lhs),
            rhs: generic_side!(rou_k2_rhs),
        },
        Identity {
            id: "rou-k4",
            summary: "4 z^t Σ C(4n+t,4l+t) C(4l+x+q+4n+2t−2,q+4n+t−1) z^{4l} = Σ C(4n+t,l) C(x+q+4n+t−2,q+4n+t−1−l) Σ_{c∈{±1,±j}} (z+c)^{4n+t−l} z^l",
            params: vec![int("n", 0, 4), int("t", 0, 3), int("q", -2, 2), formal("x", vec![rat(-1), rat(2), ratio(1, 2)]), formal("z", z_samples())],
            constraint: |p| {
                need(iv(p, "n") >= 0 && iv(p, "q") <= 2, "n >= 0, q <= 2")?;
                need((0..4).contains(&iv(p, "t")), "t in 0..4")
            },
            degree: Some(|p, v| {
                let m = 4 * iv(p, "n") + iv(p, "t");
                if v == "z" {
                    nonneg(m)
                } else {
                    nonneg(m + iv(p, "q") - 1)
                }
            }),
            lhs: generic_side!(rou_k4_lhs),
            rhs: generic_side!(rou_k4_rhs),
        },
        Identity {
            id: "rou-evals",
            summary: "special values of the multisected identity; case 0..5 = squares, narayana, squares-k2, narayana-k2, narayana-k4, squares-k4",
            params: vec![int("case", 0, 5), int("k", 1, 6), int("n", 0, 4), int("t", 0, 5)],
            constraint: |p| {
                let (k, n, t) = (iv(p, "k"), iv(p, "n"), iv(p, "t"));
                let Some(case) = RouCase::from_index(iv(p, "case")) else {
                    return Err("case must be in 0..=5".into());
                };
                need(k >= 1 && n >= 0, "k >= 1, n >= 0")?;
                need(0 <= t && t < k, "0 <= t < k")?;
                if let Some(fixed) = case.fixed_k() {
                    need(k == fixed, "case pins k")?;
                }
                if case.uses_normalization() {
                    need(k * n + t >= 1, "kn+t >= 1")?;
                }
                ok()
            },
            degree: None,
            lhs: numeric_side!(rou_eval_lhs),
            rhs: numeric_side!(rou_eval_rhs),
        },
        Identity {
            id: "even-odd-pair",
            summary: "parity=0: Σ C(2n,2l) C(2l+2n,2n) = Σ_{l<n} C(2n,2l+1) C(2n+2l+1,2n) + 1; parity=1: Σ C(2n+1,2l) C(2l+2n+1,2n+1) = Σ C(2n+1,2l+1) C(2n+2l+2,2n+1) − 1",
            params: vec![int("parity", 0, 1), int("n", 0, 8)],
            constraint: |p| {
                need((0..2).contains(&iv(p, "parity")), "parity is 0 or 1")?;
                need(iv(p, "n") >= 0, "n >= 0")
            },
            degree: None,
            lhs: numeric_side!(even_odd_lhs),
            rhs: numeric_side!(even_odd_rhs),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(text: &str) -> Point {
        parse_point(text).unwrap()
    }

    #[test]
    fn worked_examples() {
        let e = verify_numeric("general-binomial", &pt("n=1,q=1,r=2")).unwrap();
        assert_eq!((e.lhs.clone(), e.rhs.clone()), (rat(2), rat(2)));
        let e = verify_numeric("abar-odd", &pt("n=3,g=1")).unwrap();
        assert_eq!((e.lhs, e.rhs), (rat(16), rat(16)));
        let p = verify_polynomial("hz-equivalence", &pt("n=2"), &["x"]).unwrap();
        assert!(p.equal);
        assert_eq!(p.lhs.to_string(), "2*x^3 + x");
    }

    #[test]
    fn ids_are_unique_and_resolvable() {
        let ids: Vec<_> = registry().iter().map(|i| i.id).collect();
        assert_eq!(ids.iter().unique().count(), ids.len());
        for id in ids {
            lookup(id).unwrap();
        }
        assert!(matches!(lookup("nope"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn constraint_violations_are_reported() {
        assert!(matches!(
            verify_numeric("partial-sum", &pt("n=2,n1=3,q=0,x=1,z=1")),
            Err(Error::ConstraintViolation { .. })
        ));
        assert!(matches!(
            verify_numeric("stanley", &pt("n=1/2,z=1")),
            Err(Error::ConstraintViolation { .. })
        ));
        assert!(verify_numeric("stanley", &pt("n=2")).is_err());
        assert!(verify_numeric("stanley", &pt("n=2,z=1,w=3")).is_err());
        assert!(verify_polynomial("stanley", &pt(""), &["n"]).is_err());
    }

    #[test]
    fn failing_recurrence_reports_counterexamples() {
        let r = sweep("t-recurrence", &BTreeMap::new()).unwrap();
        assert!(!r.passed());
        let derived = sweep("t-recurrence-derived", &BTreeMap::new()).unwrap();
        assert!(derived.passed(), "{derived:?}");
    }

    #[test]
    fn report_json_shape() {
        let mut grid = BTreeMap::new();
        grid.insert("n".to_string(), Grid::Range(0, 3));
        let r = sweep("stanley", &grid).unwrap();
        assert_eq!(r.points, 4 * 7);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "verified");
        assert_eq!(v["id"], "stanley");
        assert!(v["counterexamples"].as_array().unwrap().is_empty());
    }

    #[test]
    fn perturbation_breaks_polynomial_check() {
        let p = verify_polynomial_perturbed("stanley", &pt("n=3"), &["z"], Perturbation(1)).unwrap();
        assert!(!p.equal);
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(Grid::parse("-2..3").unwrap(), Grid::Range(-2, 3));
        assert_eq!(Grid::parse("1/2, 3").unwrap(), Grid::Values(vec![ratio(1, 2), rat(3)]));
        assert!(Grid::parse("3..1").is_err());
    }
}
