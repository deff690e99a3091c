//! Dense exact polynomials in a handful of named variables.
//!
//! Coefficients live in a row-major box whose extent per variable is the
//! degree in that variable plus one. The representation is kept canonical:
//! variables are sorted by name, a variable of degree zero is dropped, and
//! the box is trimmed so that the outermost hyperplane in every direction
//! holds a nonzero coefficient. Structural equality is therefore equality of
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    dims: Vec<usize>,
    coeffs: Vec<Rational>,
}

type Terms = BTreeMap<Vec<usize>, Rational>;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * dims[i + 1];
    }
    out
}

fn unflatten(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut exps = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        exps[i] = index % dims[i];
        index /= dims[i];
    }
    exps
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            vars: Vec::new(),
            dims: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(Vec::new(), [(Vec::new(), c)])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// The monomial `name`.
    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1, Rational::one())
    }

    pub fn monomial(name: &str, exp: usize, coeff: Rational) -> Self {
        Self::from_terms(vec![name.to_string()], [(vec![exp], coeff)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs indexed by `vars`.
    /// Repeated exponent tuples are summed.
    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Self {
        let mut acc: Terms = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent tuple does not match variables");
            if c.is_zero() {
                continue;
            }
            let slot = acc.entry(exps).or_insert_with(Rational::zero);
            *slot += c;
        }
        Self::build(vars, acc)
    }

    fn build(vars: Vec<String>, terms: Terms) -> Self {
        // Sort variables, merging duplicate names, then keep only those that occur.
        let mut order: Vec<String> = vars.clone();
        order.sort();
        order.dedup();
        let position: Vec<usize> = vars
            .iter()
            .map(|v| order.iter().position(|o| o == v).unwrap())
            .collect();
        let mut sorted: Terms = BTreeMap::new();
        for (exps, c) in terms {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; order.len()];
            for (i, x) in exps.iter().enumerate() {
                e[position[i]] += x;
            }
            let slot = sorted.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        sorted.retain(|_, c| !c.is_zero());
        if sorted.is_empty() {
            return Self::zero();
        }
        let mut degree = vec![0usize; order.len()];
        for exps in sorted.keys() {
            for (d, e) in degree.iter_mut().zip(exps) {
                *d = (*d).max(*e);
            }
        }
        let keep: Vec<usize> = (0..order.len()).filter(|&i| degree[i] > 0).collect();
        let vars: Vec<String> = keep.iter().map(|&i| order[i].clone()).collect();
        let dims: Vec<usize> = keep.iter().map(|&i| degree[i] + 1).collect();
        let stride = strides(&dims);
        let mut coeffs = vec![Rational::zero(); dims.iter().product()];
        for (exps, c) in sorted {
            let index: usize = keep.iter().zip(&stride).map(|(&i, s)| exps[i] * s).sum();
            coeffs[index] = c;
        }
        Polynomial { vars, dims, coeffs }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant value, when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.vars.is_empty() {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn degree_in(&self, var: &str) -> usize {
        self.vars
            .iter()
            .position(|v| v == var)
            .map_or(0, |i| self.dims[i] - 1)
    }

    /// Nonzero terms as `(exponents over self.vars(), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (unflatten(i, &self.dims), c))
    }

    fn terms_over(&self, vars: &[String]) -> Vec<(Vec<usize>, Rational)> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing from union"))
            .collect();
        self.terms()
            .map(|(exps, c)| {
                let mut e = vec![0; vars.len()];
                for (i, x) in exps.into_iter().enumerate() {
                    e[map[i]] = x;
                }
                (e, c.clone())
            })
            .collect()
    }

    /// Coefficient of the monomial described by `(var, exponent)` pairs;
    /// unlisted variables have exponent zero.
    pub fn coeff(&self, monomial: &[(&str, usize)]) -> Rational {
        let mut exps = vec![0; self.vars.len()];
        for (name, e) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => exps[i] = *e,
                None if *e == 0 => {}
                None => return Rational::zero(),
            }
        }
        if self.is_zero() {
            return Rational::zero();
        }
        if exps.iter().zip(&self.dims).any(|(e, d)| e >= d) {
            return Rational::zero();
        }
        let index: usize = exps.iter().zip(strides(&self.dims)).map(|(e, s)| e * s).sum();
        self.coeffs[index].clone()
    }

    /// `[var^exp] self`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: &str, exp: usize) -> Polynomial {
        let Some(pos) = self.vars.iter().position(|v| v == var) else {
            return if exp == 0 { self.clone() } else { Self::zero() };
        };
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let terms = self.terms().filter(|(e, _)| e[pos] == exp).map(|(mut e, c)| {
            e.remove(pos);
            (e, c.clone())
        });
        Self::from_terms(rest, terms)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Self::zero();
        }
        Polynomial {
            vars: self.vars.clone(),
            dims: self.dims.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a full assignment of the polynomial's variables.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let value = point
                .get(v)
                .ok_or_else(|| Error::invalid(format!("no value for variable `{v}`")))?;
            values.push(value);
        }
        let powers: Vec<Vec<Rational>> = values
            .iter()
            .zip(&self.dims)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d);
                let mut acc = Rational::one();
                for _ in 0..d {
                    p.push(acc.clone());
                    acc *= *x;
                }
                p
            })
            .collect();
        let mut total = Rational::zero();
        for (exps, c) in self.terms() {
            let mut term = c.clone();
            for (i, e) in exps.iter().enumerate() {
                term *= &powers[i][*e];
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluates a univariate polynomial (or constant) at `value`.
    pub fn eval_at(&self, var: &str, value: &Rational) -> Result<Rational> {
        let mut point = BTreeMap::new();
        point.insert(var.to_string(), value.clone());
        self.eval(&point)
    }

    /// Replaces `var` by the polynomial `by`.
    pub fn substitute(&self, var: &str, by: &Polynomial) -> Polynomial {
        let Some(pos) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let rest: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let mut powers = vec![Self::one()];
        for i in 1..self.dims[pos] {
            let next = &powers[i - 1] * by;
            powers.push(next);
        }
        let mut total = Self::zero();
        for (e, power) in powers.iter().enumerate() {
            let inner = self.coefficient_of(var, e);
            if inner.is_zero() {
                continue;
            }
            debug_assert!(inner.vars.iter().all(|v| rest.contains(v)));
            total = &total + &(&inner * power);
        }
        total
    }

    /// `p(var + offset)`.
    pub fn shift(&self, var: &str, offset: &Rational) -> Polynomial {
        self.substitute(var, &(&Self::var(var) + &Self::constant(offset.clone())))
    }

    /// `Δ^order p` in `var`, where `(Δp)(X) = p(X+1) - p(X)`.
    pub fn finite_difference(&self, order: usize, var: &str) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..order {
            if p.is_zero() {
                break;
            }
            p = &p.shift(var, &Rational::one()) - &p;
        }
        p
    }

    /// Lagrange interpolation through `(node, value)` pairs with distinct nodes.
    pub fn interpolate(var: &str, points: &[(Rational, Rational)]) -> Result<Polynomial> {
        let nodes: Vec<Rational> = points.iter().map(|(x, _)| x.clone()).collect();
        let values: Vec<Polynomial> = points
            .iter()
            .map(|(_, y)| Self::constant(y.clone()))
            .collect();
        Self::lagrange(var, &nodes, &values)
    }

    fn lagrange(var: &str, nodes: &[Rational], values: &[Polynomial]) -> Result<Polynomial> {
        for (i, a) in nodes.iter().enumerate() {
            if nodes[..i].contains(a) {
                return Err(Error::invalid(format!("repeated interpolation node {a}")));
            }
        }
        let x = Self::var(var);
        let mut total = Self::zero();
        for (i, xi) in nodes.iter().enumerate() {
            if values[i].is_zero() {
                continue;
            }
            let mut basis = Self::one();
            let mut denom = Rational::one();
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    basis = &basis * &(&x - &Self::constant(xj.clone()));
                    denom *= xi - xj;
                }
            }
            total = &total + &(&basis.scale(&denom.recip()) * &values[i]);
        }
        Ok(total)
    }

    /// Tensor-product interpolation: `nodes[i]` are the sample points of
    /// `vars[i]`, and `f` is evaluated at every grid point (in `vars` order).
    pub fn interpolate_grid<F>(vars: &[String], nodes: &[Vec<Rational>], f: &F) -> Result<Polynomial>
    where
        F: Fn(&[Rational]) -> Result<Rational>,
    {
        fn go<F>(
            vars: &[String],
            nodes: &[Vec<Rational>],
            prefix: &mut Vec<Rational>,
            f: &F,
        ) -> Result<Polynomial>
        where
            F: Fn(&[Rational]) -> Result<Rational>,
        {
            let depth = prefix.len();
            if depth == vars.len() {
                return Ok(Polynomial::constant(f(prefix)?));
            }
            let mut slices = Vec::with_capacity(nodes[depth].len());
            for x in &nodes[depth] {
                prefix.push(x.clone());
                slices.push(go(vars, nodes, prefix, f)?);
                prefix.pop();
            }
            Polynomial::lagrange(&vars[depth], &nodes[depth], &slices)
        }
        if vars.len() != nodes.len() {
            return Err(Error::invalid("one node list per interpolation variable"));
        }
        go(vars, nodes, &mut Vec::new(), f)
    }
}

/// `C(X + offset, k)` as a degree-`k` polynomial in `var`.
pub fn binomial_poly(offset: i64, k: i64, var: &str) -> Result<Polynomial> {
    if k < 0 {
        return Err(Error::invalid(format!("binomial_poly needs k >= 0, got {k}")));
    }
    Ok(Polynomial::var(var).binomial_of(&rat(offset), k))
}

impl Polynomial {
    /// `C(self + shift, k)` via the falling factorial; zero for `k < 0`.
    pub fn binomial_of(&self, shift: &Rational, k: i64) -> Polynomial {
        if k < 0 {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return Self::constant(binomial(&(c + shift), k));
        }
        let mut acc = Self::one();
        for i in 0..k {
            acc = &acc * &(self + &Self::constant(shift - rat(i)));
        }
        let mut fact = Rational::one();
        for i in 1..=k {
            fact *= rat(i);
        }
        acc.scale(&fact.recip())
    }
}

/// Exact equality, cross-checked by evaluation on a `(deg+1)`-point grid in
/// every variable. Both checks must agree for a `true` answer.
pub fn poly_equal(lhs: &Polynomial, rhs: &Polynomial) -> bool {
    let structural = lhs == rhs;
    let pointwise = pointwise_equal(lhs, rhs);
    debug_assert_eq!(structural, pointwise, "structural and pointwise equality disagree");
    structural && pointwise
}

fn pointwise_equal(lhs: &Polynomial, rhs: &Polynomial) -> bool {
    let vars = union_vars(&lhs.vars, &rhs.vars);
    let degrees: Vec<usize> = vars
        .iter()
        .map(|v| lhs.degree_in(v).max(rhs.degree_in(v)))
        .collect();
    let total: usize = degrees.iter().map(|d| d + 1).product();
    let mut point = BTreeMap::new();
    for flat in 0..total {
        let idx = unflatten(flat, &degrees.iter().map(|d| d + 1).collect::<Vec<_>>());
        for (v, i) in vars.iter().zip(idx) {
            point.insert(v.clone(), rat(i as i64));
        }
        match (lhs.eval(&point), rhs.eval(&point)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => return false,
        }
    }
    true
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let vars = union_vars(&self.vars, &rhs.vars);
        let terms = self.terms_over(&vars).into_iter().chain(rhs.terms_over(&vars));
        Polynomial::from_terms(vars, terms)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            dims: self.dims.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let vars = union_vars(&self.vars, &rhs.vars);
        let a = self.terms_over(&vars);
        let b = rhs.terms_over(&vars);
        let mut acc: Terms = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = acc.entry(e).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        Polynomial::build(vars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Vec<usize>, &Rational)> = self.terms().collect();
        terms.sort_by(|a, b| {
            let da: usize = a.0.iter().sum();
            let db: usize = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(&a.0))
        });
        for (i, (exps, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let monomial: Vec<String> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn x() -> Polynomial {
        Polynomial::var("X")
    }

    #[test]
    fn binomial_poly_examples() {
        let expected = (&(&x().pow(2) + &x().scale(&rat(3))) + &Polynomial::int(2)).scale(&ratio(1, 2));
        let got = binomial_poly(2, 2, "X").unwrap();
        assert!(poly_equal(&got, &expected));
        assert_eq!(binomial_poly(0, 0, "X").unwrap(), Polynomial::one());
        assert_eq!(binomial_poly(1, 3, "X").unwrap().eval_at("X", &rat(2)).unwrap(), rat(1));
        assert!(binomial_poly(0, -1, "X").is_err());
    }

    #[test]
    fn binomial_poly_matches_scalar_binomial() {
        for offset in -3..=3 {
            for k in 0..=8 {
                let p = binomial_poly(offset, k, "X").unwrap();
                assert_eq!(p.degree_in("X"), k as usize);
                for m in -10..=10 {
                    assert_eq!(
                        p.eval_at("X", &rat(m)).unwrap(),
                        binomial(&rat(m + offset), k),
                        "offset={offset} k={k} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn finite_difference_examples() {
        let sq = x().pow(2);
        let once = sq.finite_difference(1, "X");
        assert_eq!(once, &x().scale(&rat(2)) + &Polynomial::one());
        assert_eq!(sq.finite_difference(2, "X"), Polynomial::int(2));
        assert!(sq.finite_difference(3, "X").is_zero());
    }

    #[test]
    fn equality_and_display() {
        let p = &x() + &Polynomial::one();
        assert!(!poly_equal(&x(), &p));
        assert_eq!(format!("{p}"), "X + 1");
        let q = &x().pow(3).scale(&rat(2)) + &x();
        assert_eq!(format!("{q}"), "2*X^3 + X");
        let neg = -&q;
        assert_eq!(format!("{neg}"), "-2*X^3 - X");
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn interpolation_round_trip() {
        let p = &x().pow(3).scale(&rat(2)) + &x();
        let pts: Vec<(Rational, Rational)> = [-1, 0, 2, 5]
            .iter()
            .map(|&v| (rat(v), p.eval_at("X", &rat(v)).unwrap()))
            .collect();
        let back = Polynomial::interpolate("X", &pts).unwrap();
        assert!(poly_equal(&back, &p));
        let dup = vec![(rat(1), rat(1)), (rat(1), rat(2))];
        assert!(Polynomial::interpolate("X", &dup).is_err());
    }

    #[test]
    fn bivariate_grid_interpolation() {
        let xz = &Polynomial::var("x") * &Polynomial::var("z").pow(2);
        let p = &xz + &Polynomial::var("x").scale(&ratio(-1, 3));
        let vars = vec!["x".to_string(), "z".to_string()];
        let nodes = vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0), rat(2)]];
        let back = Polynomial::interpolate_grid(&vars, &nodes, &|v: &[Rational]| {
            let mut pt = BTreeMap::new();
            pt.insert("x".to_string(), v[0].clone());
            pt.insert("z".to_string(), v[1].clone());
            p.eval(&pt)
        })
        .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn alignment_and_substitution() {
        let a = &Polynomial::var("z") + &Polynomial::var("x");
        let b = &Polynomial::var("x") + &Polynomial::var("z");
        assert!(poly_equal(&a, &b));
        assert_eq!(a.vars(), ["x".to_string(), "z".to_string()]);
        let shifted = x().pow(2).shift("X", &rat(-1));
        assert_eq!(shifted, &(&x().pow(2) - &x().scale(&rat(2))) + &Polynomial::one());
        assert_eq!(a.coefficient_of("z", 1), Polynomial::one());
        assert_eq!(a.coeff(&[("x", 1)]), rat(1));
        assert_eq!(a.coeff(&[("x", 2)]), rat(0));
    }
}
