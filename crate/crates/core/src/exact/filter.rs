//! Multisection of the binomial expansion by averaging over k-th roots of unity:
//! `Σ_{i≥0} C(n, a+ki) x^{a+ki} = (1/k) Σ_{i=1}^{k} ω^{-ai} (1 + xω^i)^n`.

use crate::error::{Error, Result};
use crate::exact::rational::{ratio, Rational};
use crate::exact::ring::RingElement;
use crate::exact::scalar::Scalar;

fn check(a: i64, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("filter order k must be positive"));
    }
    if a > k as i64 - 1 {
        return Err(Error::invalid(format!("filter offset a={a} exceeds k-1={}", k - 1)));
    }
    Ok(())
}

/// Right-hand side, evaluated in the ring of k-th roots of unity. Negative
/// offsets are allowed.
pub fn filter_ring<S: Scalar>(n: u32, a: i64, k: u32, x: &S) -> Result<S> {
    check(a, k)?;
    let order = k as usize;
    let one = RingElement::<S>::one(order);
    let mut total = RingElement::<S>::zero(order);
    for i in 1..=k as i64 {
        let w = RingElement::<S>::omega_pow(order, i);
        let base = one.add(&w.scale(x));
        let term = base.pow(n).mul(&RingElement::omega_pow(order, -a * i));
        total = total.add(&term);
    }
    Ok(total.to_scalar()?.scale(&ratio(1, k as i64)))
}

/// Left-hand side summed term by term; indices below zero contribute nothing.
pub fn filter_direct_sum<S: Scalar>(n: u32, a: i64, k: u32, x: &S) -> Result<S> {
    check(a, k)?;
    let mut total = S::nil();
    let mut j = a;
    while j <= n as i64 {
        if j >= 0 {
            let term = S::from_int(n as i64).choose(j).mul(&x.pow(j as u32));
            total = total.add(&term);
        }
        j += k as i64;
    }
    Ok(total)
}

pub fn roots_of_unity_filter(n: u32, a: i64, k: u32, x: &Rational) -> Result<Rational> {
    filter_ring(n, a, k, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Polynomial;
    use crate::exact::rational::rat;

    #[test]
    fn examples() {
        assert_eq!(roots_of_unity_filter(2, 0, 2, &rat(1)).unwrap(), rat(2));
        assert_eq!(roots_of_unity_filter(3, 0, 1, &rat(1)).unwrap(), rat(8));
        assert_eq!(roots_of_unity_filter(4, 0, 4, &rat(1)).unwrap(), rat(2));
    }

    #[test]
    fn matches_direct_sum_on_grid() {
        for n in 0..=12 {
            for k in 1..=6u32 {
                for a in 0..k as i64 {
                    for x in [-2, -1, 1, 2, 3] {
                        let x = rat(x);
                        assert_eq!(
                            roots_of_unity_filter(n, a, k, &x).unwrap(),
                            filter_direct_sum(n, a, k, &x).unwrap(),
                            "n={n} a={a} k={k} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn negative_offsets_and_symbolic_x() {
        let x = Polynomial::var("x");
        for k in 1..=5u32 {
            for a in -4..k as i64 {
                for n in 0..=7 {
                    assert_eq!(
                        filter_ring(n, a, k, &x).unwrap(),
                        filter_direct_sum(n, a, k, &x).unwrap(),
                        "n={n} a={a} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_bad_offset() {
        assert!(roots_of_unity_filter(3, 2, 2, &rat(1)).is_err());
        assert!(roots_of_unity_filter(3, 0, 0, &rat(1)).is_err());
    }
}
