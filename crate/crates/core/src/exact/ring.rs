//! Elements of ℚ[x]/(x^k − 1) with x standing for the primitive root ω_k.
//!
//! Products are cyclic convolutions. After every operation the element is
//! reduced modulo the cyclotomic polynomial Φ_k, the kernel of evaluation at
//! ω_k. Without that step `1 + ω + … + ω^{k-1}` would be a nonzero element of
//! the group ring although it is zero as a complex number, and sums over all
//! k-th roots would not come out rational.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::exact::scalar::Scalar;

/// Integer coefficients of Φ_k, constant term first.
pub fn cyclotomic(k: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return hit.clone();
    }
    // x^k - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; k + 1];
    p[0] = -1;
    p[k] = 1;
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = divide_exact(&p, &cyclotomic(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(k, p.clone());
    p
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; num.len() - dl + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "cyclotomic division left a remainder");
    quot
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingElement<S: Scalar = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> RingElement<S> {
    pub fn zero(k: usize) -> Self {
        assert!(k >= 1, "ring order must be positive");
        RingElement {
            coeffs: vec![S::nil(); k],
        }
    }

    pub fn from_scalar(k: usize, c: S) -> Self {
        let mut out = Self::zero(k);
        out.coeffs[0] = c;
        out
    }

    pub fn one(k: usize) -> Self {
        Self::from_scalar(k, S::unit())
    }

    /// `ω_k^e`; negative exponents wrap around since ω^{-1} = ω^{k-1}.
    pub fn omega_pow(k: usize, e: i64) -> Self {
        let mut out = Self::zero(k);
        out.coeffs[e.rem_euclid(k as i64) as usize] = S::unit();
        out.reduce()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    fn reduce(mut self) -> Self {
        let k = self.order();
        let phi = cyclotomic(k);
        let d = phi.len() - 1;
        // Φ_k is monic, so each top coefficient can be cleared in turn.
        for e in (d..k).rev() {
            if self.coeffs[e].is_nil() {
                continue;
            }
            let f = self.coeffs[e].clone();
            for (j, p) in phi.iter().enumerate() {
                if *p != 0 {
                    let idx = e - d + j;
                    self.coeffs[idx] = self.coeffs[idx].sub(&f.mul(&S::from_int(*p)));
                }
            }
        }
        self
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "mixing roots of unity of different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        RingElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement {
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let k = self.order();
        let mut out = vec![S::nil(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_nil() {
                    let slot = (i + j) % k;
                    out[slot] = out[slot].add(&a.mul(b));
                }
            }
        }
        RingElement { coeffs: out }.reduce()
    }

    pub fn scale(&self, factor: &S) -> Self {
        RingElement {
            coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
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

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Scalar::is_nil)
    }

    /// The constant coefficient, provided nothing else survives.
    pub fn to_scalar(&self) -> Result<S> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }
}

impl<S: Scalar> fmt::Display for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_nil())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*w"),
                _ => format!("({c})*w^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    type R = RingElement<Rational>;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn omega_has_order_k() {
        for k in 1..=8 {
            let w = R::omega_pow(k, 1);
            assert_eq!(w.pow(k as u32), R::one(k), "k={k}");
        }
    }

    #[test]
    fn power_sums_of_roots() {
        for k in 1..=8usize {
            for m in -9i64..=9 {
                let mut total = R::zero(k);
                for l in 1..=k as i64 {
                    total = total.add(&R::omega_pow(k, l * m));
                }
                let expected = if m.rem_euclid(k as i64) == 0 { rat(k as i64) } else { rat(0) };
                assert_eq!(total.to_scalar().unwrap(), expected, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn gaussian_integers() {
        let j = R::omega_pow(4, 1);
        assert_eq!(j.mul(&j), R::from_scalar(4, rat(-1)));
        let one_plus_j = R::one(4).add(&j);
        // (1+j)^4 = -4
        assert_eq!(one_plus_j.pow(4).to_scalar().unwrap(), rat(-4));
        assert!(matches!(j.to_scalar(), Err(Error::NotRational(_))));
    }
}
