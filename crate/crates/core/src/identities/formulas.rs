//! Both sides of every registered identity, written once over [`Scalar`] so
//! the same code evaluates at rational points and builds polynomials.

use num_bigint::BigInt;

use crate::error::Result;
use crate::exact::rational::{binomial, int_to_rat, rat, ratio, Rational};
use crate::exact::ring::RingElement;
use crate::exact::scalar::{sum_range, Scalar};
use crate::numbers::{self, narayana};
use crate::parity;
use crate::trees::{self, CountMode, StatFilter, Weight};

use super::readings::{ConstantScope, Normalization, RouCase};
use super::Env;

pub(super) type SideResult<S> = Result<S>;

/// `C(n, k)` for integer arguments, lifted into the scalar type.
fn ci<S: Scalar>(n: i64, k: i64) -> S {
    S::from_rational(binomial(&rat(n), k))
}

fn big<S: Scalar>(v: BigInt) -> S {
    S::from_rational(int_to_rat(&v))
}

fn nar<S: Scalar>(n: i64, k: i64) -> Result<S> {
    Ok(big(narayana(n, k)?))
}

fn sign<S: Scalar>(e: i64) -> S {
    if e.rem_euclid(2) == 0 {
        S::unit()
    } else {
        S::from_int(-1)
    }
}

fn zpow<S: Scalar>(z: &S, e: i64) -> S {
    assert!(e >= 0, "negative power {e} after Laurent normalisation");
    z.pow(e as u32)
}

// Σ C(n,k)² z^k  =  Σ C(n,j) C(2n−j,n) (z−1)^j
pub(super) fn stanley_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, z) = (e.int("n"), e.var("z"));
    Ok(sum_range(0, n, |k| ci::<S>(n, k).pow(2).mul(&zpow(&z, k))))
}

pub(super) fn stanley_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, z) = (e.int("n"), e.var("z"));
    let zm1 = z.add_int(-1);
    Ok(sum_range(0, n, |j| ci::<S>(n, j).mul(&ci(2 * n - j, n)).mul(&zpow(&zm1, j))))
}

// Σ_{k≥1} N_{n,k} z^k  =  Σ (1/(n+1)) C(n+1,k) C(2n−k,n) (z−1)^k
pub(super) fn narayana_new_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, z) = (e.int("n"), e.var("z"));
    let mut acc = S::nil();
    for k in 1..=n {
        acc = acc.add(&nar::<S>(n, k)?.mul(&zpow(&z, k)));
    }
    Ok(acc)
}

pub(super) fn narayana_new_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, z) = (e.int("n"), e.var("z"));
    let zm1 = z.add_int(-1);
    Ok(sum_range(0, n, |k| ci::<S>(n + 1, k).mul(&ci(2 * n - k, n)).mul(&zpow(&zm1, k)))
        .scale(&ratio(1, n + 1)))
}

// Σ C(r,k) C(m,n−k)  =  C(r+m, n)
pub(super) fn vandermonde_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, r, m) = (e.int("n"), e.var("r"), e.var("m"));
    Ok(sum_range(0, n, |k| r.choose(k).mul(&m.choose(n - k))))
}

pub(super) fn vandermonde_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, r, m) = (e.int("n"), e.var("r"), e.var("m"));
    Ok(r.add(&m).choose(n))
}

// Σ (−1)^{n−k} C(n,k) C(k+r, n+q)  =  C(r, q)
pub(super) fn general_binomial_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, r) = (e.int("n"), e.int("q"), e.var("r"));
    Ok(sum_range(0, n, |k| sign::<S>(n - k).mul(&ci(n, k)).mul(&r.add_int(k).choose(n + q))))
}

pub(super) fn general_binomial_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    Ok(e.var("r").choose(e.int("q")))
}

// Σ (−1)^{n−k} C(n,k) C(k+n+x+q−2, n+q−1)  =  C(n+x+q−2, q−1)
pub(super) fn gamma_signed_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x) = (e.int("n"), e.int("q"), e.var("x"));
    Ok(sum_range(0, n, |k| {
        sign::<S>(n - k).mul(&ci(n, k)).mul(&x.add_int(k + n + q - 2).choose(n + q - 1))
    }))
}

pub(super) fn gamma_signed_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x) = (e.int("n"), e.int("q"), e.var("x"));
    Ok(x.add_int(n + q - 2).choose(q - 1))
}

// Σ C(n,k) C(2n+x+q−k−2, n+q−1) z^k  =  Σ C(n,k) C(n+x+q−2, k+q−1) (z+1)^k
pub(super) fn two_weight_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x, z) = (e.int("n"), e.int("q"), e.var("x"), e.var("z"));
    Ok(sum_range(0, n, |k| {
        ci::<S>(n, k).mul(&x.add_int(2 * n + q - k - 2).choose(n + q - 1)).mul(&zpow(&z, k))
    }))
}

pub(super) fn two_weight_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x, z) = (e.int("n"), e.int("q"), e.var("x"), e.var("z"));
    let zp1 = z.add_int(1);
    Ok(sum_range(0, n, |k| {
        ci::<S>(n, k).mul(&x.add_int(n + q - 2).choose(k + q - 1)).mul(&zpow(&zp1, k))
    }))
}

fn rat_of(v: BigInt) -> Rational {
    int_to_rat(&v)
}

fn n_arg(e: &Env<Rational>) -> u32 {
    e.int("n") as u32
}

// Bicolored-leaf plane trees counted shape by shape, against Σ N_{n,k} 2^k.
pub(super) fn schroeder_eval_lhs(e: &Env<Rational>) -> SideResult<Rational> {
    Ok(rat_of(trees::bicolored_tree_count(n_arg(e) as usize)?))
}

pub(super) fn schroeder_eval_rhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    let mut acc = Rational::from_integer(0.into());
    for k in 1..=n {
        acc += rat_of(narayana(n, k)? << k as usize);
    }
    Ok(acc)
}

fn marked(n: i64) -> Result<Rational> {
    Ok(rat_of(trees::marked_bicolored_count(n as usize)?))
}

// T_{n+1} = C(n+1, 2) S_n
pub(super) fn t_schroeder_lhs(e: &Env<Rational>) -> SideResult<Rational> {
    marked(e.int("n") + 1)
}

pub(super) fn t_schroeder_rhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    Ok(binomial(&rat(n + 1), 2) * rat_of(numbers::schroeder(n as u32)))
}

// 3(2n−1)(n−1)(n+2) T_{n+1}  =  n(n−1)(n+1) T_{n+2} + (n−2)(n+1)(n+2) T_n
pub(super) fn t_recurrence_lhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    Ok(rat(3 * (2 * n - 1) * (n - 1) * (n + 2)) * marked(n + 1)?)
}

pub(super) fn t_recurrence_rhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    Ok(rat(n * (n - 1) * (n + 1)) * marked(n + 2)? + rat((n - 2) * (n + 1) * (n + 2)) * marked(n)?)
}

// 3(2n+1) T_{n+1}  =  n T_{n+2} + (n+1) T_n
pub(super) fn t_recurrence_derived_lhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    Ok(rat(3 * (2 * n + 1)) * marked(n + 1)?)
}

pub(super) fn t_recurrence_derived_rhs(e: &Env<Rational>) -> SideResult<Rational> {
    let n = e.int("n");
    Ok(rat(n) * marked(n + 2)? + rat(n + 1) * marked(n)?)
}

fn hz_prefactor(n: i64) -> Rational {
    let n = n as u64;
    Rational::new(
        crate::exact::rational::factorial(2 * n),
        crate::exact::rational::factorial(n) << n as usize,
    )
}

pub(super) fn hz_classic<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let n = e.int("n");
    Ok(numbers::hz_classic_sum(n as u32, &e.var("x")).scale(&hz_prefactor(n)))
}

pub(super) fn hz_new<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let n = e.int("n");
    Ok(numbers::hz_new_sum(n as u32, &e.var("x")).scale(&hz_prefactor(n)))
}

// [x^{n+1−2g}] of the Harer–Zagier polynomial against the Lehman–Walsh closed form.
pub(super) fn hz_coefficient(e: &Env<Rational>) -> SideResult<Rational> {
    let (n, g) = (e.int("n") as u32, e.int("g") as u32);
    Ok(numbers::hz_polynomial_classic(n).coeff(&[("x", (n + 1 - 2 * g) as usize)]))
}

pub(super) fn lehman_walsh_value(e: &Env<Rational>) -> SideResult<Rational> {
    Ok(rat_of(numbers::lehman_walsh(e.int("n") as u32, e.int("g") as u32)?))
}

// Explicitly enumerated members of Γ_{n,x,q} with |int|+|lev_Y| = k+x, against the closed form.
pub(super) fn gamma_count_enumerated(e: &Env<Rational>) -> SideResult<Rational> {
    let (n, x, q, k) = (e.int("n"), e.int("x"), e.int("q"), e.int("k"));
    let profile = trees::gamma_profile(n as u32, x as u32, q as u32)?;
    Ok(rat_of(profile.get(k as usize).cloned().unwrap_or_default()))
}

pub(super) fn gamma_count_closed(e: &Env<Rational>) -> SideResult<Rational> {
    let (n, x, q, k) = (e.int("n"), e.int("x"), e.int("q"), e.int("k"));
    Ok(rat_of(trees::gamma_count_formula(n as u32, x as u32, q as u32, k as u32)))
}

// Signed count of Γ_{n,x,q} from the trees, over (n+x+q−1)!.
pub(super) fn gamma_sign_weighted(e: &Env<Rational>) -> SideResult<Rational> {
    let (n, x, q) = (e.int("n") as u32, e.int("x") as u32, e.int("q") as u32);
    let total = trees::gamma_count_weighted(n, x, q, StatFilter::All, &Weight::Sign, CountMode::ShapeWeighted)?;
    Ok(total / rat_of(crate::exact::rational::factorial((n + x + q - 1) as u64)))
}

// Ā(n,g) as a Stirling double sum against 2^{n−2g} O(n+1, g).
pub(super) fn abar_sum(e: &Env<Rational>) -> SideResult<Rational> {
    Ok(rat_of(numbers::abar(e.int("n") as u32, e.int("g") as u32)))
}

pub(super) fn abar_odd(e: &Env<Rational>) -> SideResult<Rational> {
    let (n, g) = (e.int("n") as u32, e.int("g") as u32);
    Ok(rat_of(numbers::odd_cycle_count(n + 1, g)? << (n - 2 * g) as usize))
}

pub(super) fn pair_total_weight(e: &Env<Rational>) -> SideResult<Rational> {
    Ok(rat(parity::total_weight(e.int("n") as u32, e.int("g") as u32)?))
}

// Σ_{k≤n₁} C(n,k) C(n+x+q+k−2, n+q−1) z^{n−k}
//   = Σ_{k≤n₁} C(n,k) C(n+x+q−2, q+n−1−k) Σ_{i≤n₁−k} C(n−k,i) z^{n−k−i}
pub(super) fn partial_sum_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, n1, q, x, z) = (e.int("n"), e.int("n1"), e.int("q"), e.var("x"), e.var("z"));
    Ok(sum_range(0, n1, |k| {
        ci::<S>(n, k).mul(&x.add_int(n + q + k - 2).choose(n + q - 1)).mul(&zpow(&z, n - k))
    }))
}

pub(super) fn partial_sum_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, n1, q, x, z) = (e.int("n"), e.int("n1"), e.int("q"), e.var("x"), e.var("z"));
    Ok(sum_range(0, n1, |k| {
        let inner = sum_range(0, n1 - k, |i| ci::<S>(n - k, i).mul(&zpow(&z, n - k - i)));
        ci::<S>(n, k).mul(&x.add_int(n + q - 2).choose(q + n - 1 - k)).mul(&inner)
    }))
}

// Σ_{k≤n₁} (−1)^{n−k} C(n,k) C(k+x+q+n−2, q+n−1)
//   = Σ_{k≤n₁} (−1)^{n−n₁} C(n,k) C(x+q+n−2, q+n−1−k) C(n−k−1, n₁−k)
pub(super) fn partial_signed_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, n1, q, x) = (e.int("n"), e.int("n1"), e.int("q"), e.var("x"));
    Ok(sum_range(0, n1, |k| {
        sign::<S>(n - k).mul(&ci(n, k)).mul(&x.add_int(k + q + n - 2).choose(q + n - 1))
    }))
}

pub(super) fn partial_signed_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, n1, q, x) = (e.int("n"), e.int("n1"), e.int("q"), e.var("x"));
    Ok(sum_range(0, n1, |k| partial_signed_rhs_term(n, n1, q, &x, k)))
}

pub fn partial_signed_rhs_term<S: Scalar>(n: i64, n1: i64, q: i64, x: &S, k: i64) -> S {
    sign::<S>(n - n1)
        .mul(&ci(n, k))
        .mul(&x.add_int(q + n - 2).choose(q + n - 1 - k))
        .mul(&ci(n - k - 1, n1 - k))
}

// which=1: Σ (−1)^{n₁+k} C(n,k) C(k+n,n) = Σ C(n,k)² C(n−k−1, n₁−k)
// which=2: Σ N_{n,k+1} C(n−k−1, n₁−k) = Σ (−1)^{k+n₁}/(k+n+1) C(n,k) C(k+n+1,n)
pub(super) fn partial_pair_lhs(e: &Env<Rational>) -> SideResult<Rational> {
    let (which, n, n1) = (e.int("which"), e.int("n"), e.int("n1"));
    if which == 1 {
        Ok(sum_range(0, n1, |k| sign::<Rational>(n1 + k) * ci::<Rational>(n, k) * ci::<Rational>(k + n, n)))
    } else {
        let mut acc = rat(0);
        for k in 0..=n1 {
            acc += nar::<Rational>(n, k + 1)? * ci::<Rational>(n - k - 1, n1 - k);
        }
        Ok(acc)
    }
}

pub(super) fn partial_pair_rhs(e: &Env<Rational>) -> SideResult<Rational> {
    let (which, n, n1) = (e.int("which"), e.int("n"), e.int("n1"));
    Ok(if which == 1 {
        sum_range(0, n1, |k| ci::<Rational>(n, k).pow(2) * ci::<Rational>(n - k - 1, n1 - k))
    } else {
        sum_range(0, n1, |k| {
            sign::<Rational>(k + n1) * ratio(1, k + n + 1) * ci::<Rational>(n, k) * ci::<Rational>(k + n + 1, n)
        })
    })
}

// Σ_{k≤n} (−1)^k C(x,k) = (−1)^n C(x−1, n)
pub(super) fn alt_partial_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, x) = (e.int("n"), e.var("x"));
    Ok(sum_range(0, n, |k| sign::<S>(k).mul(&x.choose(k))))
}

pub(super) fn alt_partial_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, x) = (e.int("n"), e.var("x"));
    Ok(sign::<S>(n).mul(&x.add_int(-1).choose(n)))
}

/// `Σ_{l=1}^{k} (1 + zω^l)^{p} ω^{l·e}` as a ring element.
fn root_sum<S: Scalar>(k: usize, z: &S, p: i64, e: i64) -> RingElement<S> {
    let mut total = RingElement::zero(k);
    for l in 1..=k as i64 {
        let w = RingElement::<S>::omega_pow(k, l);
        let base = RingElement::one(k).add(&w.scale(z));
        total = total.add(&base.pow(p as u32).mul(&RingElement::omega_pow(k, l * e)));
    }
    total
}

// Multisected two-weight identity, both sides multiplied by z^t:
// z^t Σ_l C(kn+t, kl+t) C(kl+x+q+kn+2t−2, q+kn+t−1) z^{kl}
//   = (1/k) Σ_i C(kn+t, i) C(x+q+kn+t−2, q+kn+t−1−i) z^i Σ_l (1+zω^l)^{kn+t−i} ω^{l(i−t)}
pub(super) fn rou_general_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (k, n, t, q) = (e.int("k"), e.int("n"), e.int("t"), e.int("q"));
    let (x, z) = (e.var("x"), e.var("z"));
    let m = k * n + t;
    Ok(sum_range(0, n, |l| {
        ci::<S>(m, k * l + t)
            .mul(&x.add_int(k * l + q + k * n + 2 * t - 2).choose(q + m - 1))
            .mul(&zpow(&z, k * l + t))
    }))
}

pub(super) fn rou_general_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (k, n, t, q) = (e.int("k"), e.int("n"), e.int("t"), e.int("q"));
    let (x, z) = (e.var("x"), e.var("z"));
    let m = k * n + t;
    let mut total = RingElement::<S>::zero(k as usize);
    for i in 0..=m {
        let coeff = ci::<S>(m, i).mul(&x.add_int(q + m - 2).choose(q + m - 1 - i)).mul(&zpow(&z, i));
        if coeff.is_nil() {
            continue;
        }
        total = total.add(&root_sum(k as usize, &z, m - i, i - t).scale(&coeff));
    }
    Ok(total.to_scalar()?.scale(&ratio(1, k)))
}

// k = 1:  Σ C(n,l) C(n+x+q+l−2, n+q−1) z^l = Σ C(n,l) C(x+q+n−2, q+n−1−l) z^l (1+z)^{n−l}
pub(super) fn rou_k1_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x, z) = (e.int("n"), e.int("q"), e.var("x"), e.var("z"));
    Ok(sum_range(0, n, |l| ci::<S>(n, l).mul(&x.add_int(n + q + l - 2).choose(n + q - 1)).mul(&zpow(&z, l))))
}

pub(super) fn rou_k1_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, q, x, z) = (e.int("n"), e.int("q"), e.var("x"), e.var("z"));
    let zp1 = z.add_int(1);
    Ok(sum_range(0, n, |l| {
        ci::<S>(n, l)
            .mul(&x.add_int(q + n - 2).choose(q + n - 1 - l))
            .mul(&zpow(&z, l))
            .mul(&zpow(&zp1, n - l))
    }))
}

// k = 2, times z^t:
// z^t Σ 2 C(2n+t, 2l+t) C(2l+x+q+2n+2t−2, q+2n+t−1) z^{2l}
//   = Σ C(2n+t, l) C(x+q+2n+t−2, q+2n+t−1−l) [(z−1)^{2n+t−l} + (z+1)^{2n+t−l}] z^l
pub(super) fn rou_k2_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, t, q, x, z) = (e.int("n"), e.int("t"), e.int("q"), e.var("x"), e.var("z"));
    let m = 2 * n + t;
    Ok(sum_range(0, n, |l| {
        ci::<S>(m, 2 * l + t)
            .mul(&x.add_int(2 * l + q + 2 * n + 2 * t - 2).choose(q + m - 1))
            .mul(&zpow(&z, 2 * l + t))
            .scale(&rat(2))
    }))
}

pub(super) fn rou_k2_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, t, q, x, z) = (e.int("n"), e.int("t"), e.int("q"), e.var("x"), e.var("z"));
    let m = 2 * n + t;
    let (zm1, zp1) = (z.add_int(-1), z.add_int(1));
    Ok(sum_range(0, m, |l| {
        let bracket = zpow(&zm1, m - l).add(&zpow(&zp1, m - l));
        ci::<S>(m, l).mul(&x.add_int(q + m - 2).choose(q + m - 1 - l)).mul(&bracket).mul(&zpow(&z, l))
    }))
}

// k = 4, times z^s, with j = ω_4:
// z^s Σ 4 C(4n+s, 4l+s) C(4l+x+q+4n+2s−2, q+4n+s−1) z^{4l}
//   = Σ C(4n+s, l) C(x+q+4n+s−2, q+4n+s−1−l) [(z−1)^p + (z+1)^p + (z+j)^p + (z−j)^p] z^l,  p = 4n+s−l
pub(super) fn rou_k4_lhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, s, q, x, z) = (e.int("n"), e.int("t"), e.int("q"), e.var("x"), e.var("z"));
    let m = 4 * n + s;
    Ok(sum_range(0, n, |l| {
        ci::<S>(m, 4 * l + s)
            .mul(&x.add_int(4 * l + q + 4 * n + 2 * s - 2).choose(q + m - 1))
            .mul(&zpow(&z, 4 * l + s))
            .scale(&rat(4))
    }))
}

pub(super) fn rou_k4_rhs<S: Scalar>(e: &Env<S>) -> SideResult<S> {
    let (n, s, q, x, z) = (e.int("n"), e.int("t"), e.int("q"), e.var("x"), e.var("z"));
    let m = 4 * n + s;
    let zr = RingElement::from_scalar(4, z.clone());
    let j = RingElement::<S>::omega_pow(4, 1);
    let bases = [
        zr.add(&RingElement::from_scalar(4, S::from_int(-1))),
        zr.add(&RingElement::one(4)),
        zr.add(&j),
        zr.sub(&j),
    ];
    let mut total = RingElement::<S>::zero(4);
    for l in 0..=m {
        let coeff = ci::<S>(m, l).mul(&x.add_int(q + m - 2).choose(q + m - 1 - l)).mul(&zpow(&z, l));
        if coeff.is_nil() {
            continue;
        }
        let mut bracket = RingElement::zero(4);
        for b in &bases {
            bracket = bracket.add(&b.pow((m - l) as u32));
        }
        total = total.add(&bracket.scale(&coeff));
    }
    total.to_scalar()
}

fn ring_rat(k: usize, v: Rational) -> RingElement<Rational> {
    RingElement::from_scalar(k, v)
}

fn nar_r(m: i64, k: i64) -> Result<Rational> {
    nar::<Rational>(m, k)
}

/// Left and right sides of the special evaluations at x = q = 1 or q = 0, x = 2, z = 1.
pub fn rou_eval_sides(
    case: RouCase,
    k: i64,
    n: i64,
    t: i64,
    norm: Normalization,
    scope: ConstantScope,
) -> Result<(Rational, Rational)> {
    let m = k * n + t;
    let ku = k as usize;
    let c = |a: i64, b: i64| ci::<Rational>(a, b);
    let factor = |k: i64| -> Result<Rational> {
        match norm {
            Normalization::Printed if n == 0 => Err(crate::error::Error::invalid("printed factor 1/n at n = 0")),
            Normalization::Printed => Ok(ratio(1, n)),
            Normalization::Derived => Ok(ratio(k, m)),
        }
    };
    let with_constant = |terms: Vec<Rational>| -> Rational {
        match scope {
            ConstantScope::OutsideSum => terms.iter().sum::<Rational>() - rat(1),
            ConstantScope::PerTerm => terms.iter().map(|v| v - rat(1)).sum(),
        }
    };
    let one = Rational::from_integer(1.into());
    match case {
        // Σ_i C(m,i)² Σ_l (1+ω^l)^{m−i} ω^{l(i−t)} = Σ_l k C(m, kl+t) C(kn+kl+2t, kn+t)
        RouCase::Squares => {
            let mut lhs = RingElement::zero(ku);
            for i in 0..=m {
                lhs = lhs.add(&root_sum(ku, &one, m - i, i - t).scale(&c(m, i).pow(2)));
            }
            let rhs = sum_range(0, n, |l| rat(k) * c(m, k * l + t) * c(k * n + k * l + 2 * t, k * n + t));
            Ok((lhs.to_scalar()?, rhs))
        }
        // Σ_i N_{m,i+1} Σ_l (1+ω^l)^{m−i} ω^{l(i−t)} = factor · Σ_l C(m, kl+t) C(kn+kl+2t, kl+t+1)
        RouCase::Narayana => {
            let mut lhs = RingElement::zero(ku);
            for i in 0..=m {
                lhs = lhs.add(&root_sum(ku, &one, m - i, i - t).scale(&nar_r(m, i + 1)?));
            }
            let rhs = sum_range(0, n, |l| c(m, k * l + t) * c(k * n + k * l + 2 * t, k * l + t + 1));
            Ok((lhs.to_scalar()?, factor(k)? * rhs))
        }
        // Σ_l 2 C(m, 2l+s) C(2l+2n+2s, 2n+s) − 1 = Σ_l C(m,l)² 2^{m−l}
        RouCase::SquaresHalf => {
            let terms = (0..=n).map(|l| rat(2) * c(m, 2 * l + t) * c(2 * l + 2 * n + 2 * t, 2 * n + t)).collect();
            let rhs = sum_range(0, m, |l| c(m, l).pow(2) * rat(2).pow((m - l) as i32));
            Ok((with_constant(terms), rhs))
        }
        // Σ_l N_{m,l+1} 2^{m−l} = factor · Σ_l C(m, 2l+s) C(2n+2l+2s, 2l+s+1)
        RouCase::NarayanaHalf => {
            let mut lhs = rat(0);
            for l in 0..=m {
                lhs += nar_r(m, l + 1)? * rat(2).pow((m - l) as i32);
            }
            let rhs = sum_range(0, n, |l| c(m, 2 * l + t) * c(2 * n + 2 * l + 2 * t, 2 * l + t + 1));
            Ok((lhs, factor(2)? * rhs))
        }
        // Σ_l N_{m,l+1} [2^{m−l} + (1 + j^{l−s}) (1+j)^{m−l}] = factor · Σ_l C(m, 4l+s) C(4n+4l+2s, 4l+s+1)
        RouCase::NarayanaQuarter => {
            let mut lhs = RingElement::zero(4);
            for l in 0..=m {
                let bracket = quarter_bracket(m, l, t);
                lhs = lhs.add(&bracket.scale(&nar_r(m, l + 1)?));
            }
            let rhs = sum_range(0, n, |l| c(m, 4 * l + t) * c(4 * n + 4 * l + 2 * t, 4 * l + t + 1));
            Ok((lhs.to_scalar()?, factor(4)? * rhs))
        }
        // Σ_l C(m,l)² [2^{4n}/2^{l−s} + (1 + j^{l−s}) (1+j)^{m−l}] = Σ_l 4 C(m, 4l+s) C(4l+4n+2s, 4n+s) − 1
        RouCase::SquaresQuarter => {
            let mut lhs = RingElement::zero(4);
            for l in 0..=m {
                lhs = lhs.add(&quarter_bracket(m, l, t).scale(&c(m, l).pow(2)));
            }
            let terms = (0..=n).map(|l| rat(4) * c(m, 4 * l + t) * c(4 * l + 4 * n + 2 * t, 4 * n + t)).collect();
            Ok((lhs.to_scalar()?, with_constant(terms)))
        }
    }
}

/// `2^{m−l} + (1 + j^{l−s}) (1+j)^{m−l}` in ℚ[j].
fn quarter_bracket(m: i64, l: i64, s: i64) -> RingElement<Rational> {
    let j = RingElement::<Rational>::omega_pow(4, 1);
    let one = RingElement::<Rational>::one(4);
    let power_of_two = ring_rat(4, rat(2).pow((m - l) as i32));
    let twist = one.add(&RingElement::omega_pow(4, l - s));
    power_of_two.add(&twist.mul(&one.add(&j).pow((m - l) as u32)))
}

/// Even (`parity = 0`) and odd (`parity = 1`) splittings, with the constant on the right.
pub fn even_odd_sides(parity: i64, n: i64, constant: i64) -> (Rational, Rational) {
    let c = |a: i64, b: i64| ci::<Rational>(a, b);
    if parity == 0 {
        let lhs = sum_range(0, n, |l| c(2 * n, 2 * l) * c(2 * l + 2 * n, 2 * n));
        let rhs = sum_range(0, n - 1, |l| c(2 * n, 2 * l + 1) * c(2 * n + 2 * l + 1, 2 * n));
        (lhs, rhs + rat(constant))
    } else {
        let lhs = sum_range(0, n, |l| c(2 * n + 1, 2 * l) * c(2 * l + 2 * n + 1, 2 * n + 1));
        let rhs = sum_range(0, n, |l| c(2 * n + 1, 2 * l + 1) * c(2 * n + 2 * l + 2, 2 * n + 1));
        (lhs, rhs + rat(constant))
    }
}
