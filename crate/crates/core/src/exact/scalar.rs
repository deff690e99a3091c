use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::exact::poly::Polynomial;
use crate::exact::rational::{binomial, Rational};

/// The arithmetic both sides of an identity need, so that a single
/// formula can be evaluated at a rational point or built as a polynomial.
pub trait Scalar: Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    fn from_rational(r: Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, factor: &Rational) -> Self;
    fn is_nil(&self) -> bool;
    /// `C(self, k)`, zero for `k < 0`.
    fn choose(&self, k: i64) -> Self;

    fn nil() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn unit() -> Self {
        Self::from_rational(Rational::one())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_int(&self, n: i64) -> Self {
        self.add(&Self::from_int(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::unit();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Rational) -> Self {
        self * factor
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn choose(&self, k: i64) -> Self {
        binomial(self, k)
    }
}

impl Scalar for Polynomial {
    fn from_rational(r: Rational) -> Self {
        Polynomial::constant(r)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Rational) -> Self {
        Polynomial::scale(self, factor)
    }
    fn is_nil(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn choose(&self, k: i64) -> Self {
        self.binomial_of(&Rational::zero(), k)
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
}

/// `Σ_{k=lo}^{hi} term(k)`; empty when `hi < lo`.
pub fn sum_range<S: Scalar>(lo: i64, hi: i64, mut term: impl FnMut(i64) -> S) -> S {
    let mut acc = S::nil();
    for k in lo..=hi {
        let t = term(k);
        if !t.is_nil() {
            acc = acc.add(&t);
        }
    }
    acc
}
