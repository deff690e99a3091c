//! Exact scalars: arbitrary-precision rationals and generalized binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `7`, `-3`, or `1/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{text}` is not an exact rational")))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("`{text}` has a zero denominator")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Returns the integer value, failing loudly on a fractional remainder.
pub fn to_integer(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NotInteger(r.to_string()))
    }
}

pub fn to_i64(r: &Rational) -> Result<i64> {
    to_integer(r)?
        .to_i64()
        .ok_or_else(|| Error::invalid(format!("{r} does not fit a machine integer")))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(r, k)` through the falling factorial: `r(r-1)...(r-k+1)/k!`, zero for `k < 0`.
pub fn binomial(r: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut numer = Rational::one();
    let mut term = r.clone();
    for _ in 0..k {
        if term.is_zero() {
            return Rational::zero();
        }
        numer *= &term;
        term -= Rational::one();
    }
    numer / Rational::from_integer(factorial(k as u64))
}

/// Integer binomial with the same conventions (upper index may be negative).
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        if k > n {
            return BigInt::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    } else {
        // C(-m, k) = (-1)^k C(m+k-1, k)
        let magnitude = binomial_int(-n + k - 1, k);
        if k.is_odd() {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// `(-1)^e` for any integer exponent.
pub fn sign_power(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `base^e` for a possibly negative exponent; `base` must be nonzero when `e < 0`.
pub fn pow_i(base: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        Ok(num_traits::pow(base.clone(), e as usize))
    } else if base.is_zero() {
        Err(Error::invalid("zero raised to a negative power"))
    } else {
        Ok(num_traits::pow(base.recip(), e.unsigned_abs() as usize))
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&rat(-1), 2), rat(1));
        assert_eq!(binomial(&rat(5), -1), rat(0));
        assert_eq!(binomial(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(binomial(&rat(3), 5), rat(0));
        assert_eq!(binomial(&rat(0), 0), rat(1));
    }

    #[test]
    fn pascal_on_grid() {
        let mut uppers: Vec<Rational> = (-3..=3).map(rat).collect();
        uppers.push(ratio(1, 2));
        uppers.push(ratio(-1, 2));
        for r in &uppers {
            for k in -2..=6 {
                let lhs = binomial(r, k);
                let rhs = binomial(&(r - rat(1)), k - 1) + binomial(&(r - rat(1)), k);
                assert_eq!(lhs, rhs, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn integer_binomial_agrees_with_rational() {
        for n in -6..=9 {
            for k in -2..=10 {
                assert_eq!(int_to_rat(&binomial_int(n, k)), binomial(&rat(n), k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn parse_and_integrality() {
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 12 ").unwrap(), rat(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(to_integer(&ratio(6, 3)).unwrap(), BigInt::from(2));
        assert!(matches!(to_integer(&ratio(1, 3)), Err(Error::NotInteger(_))));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i(&rat(2), -3).unwrap(), ratio(1, 8));
        assert_eq!(pow_i(&rat(-3), 3).unwrap(), rat(-27));
        assert!(pow_i(&rat(0), -1).is_err());
        assert_eq!(sign_power(-3), rat(-1));
    }
}
