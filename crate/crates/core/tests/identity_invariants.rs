use treelab_core::exact::rational::int_to_rat;
use treelab_core::exact::{factorial, rat, ratio, Polynomial, Rational};
use treelab_core::identities::{grid_points, partial_signed_rhs_term, registry, verify_numeric, verify_polynomial, Point};
use treelab_core::numbers::{hz_classic_sum, hz_new_sum};
use treelab_core::trees::{gamma_count_weighted, CountMode, StatFilter, Weight};

fn point(pairs: &[(&str, Rational)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn ip(pairs: &[(&str, i64)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), rat(*v))).collect()
}

#[test]
fn every_entry_evaluates_at_its_smallest_point() {
    let all = registry();
    assert!(all.len() >= 20);
    for identity in all {
        let points = grid_points(&identity, &Default::default()).unwrap();
        let first = points.first().unwrap_or_else(|| panic!("{} has an empty grid", identity.id));
        verify_numeric(identity.id, first).unwrap();
    }
}

#[test]
fn documented_examples() {
    let e = verify_numeric("stanley", &ip(&[("n", 2), ("z", 2)])).unwrap();
    assert_eq!((e.lhs, e.rhs), (rat(13), rat(13)));
    assert!(verify_polynomial("two-weight", &ip(&[("n", 3), ("q", 1)]), &["x", "z"]).unwrap().equal);
    let g = verify_polynomial("general-binomial", &ip(&[("n", 2), ("q", -1)]), &["r"]).unwrap();
    assert!(g.equal && g.lhs.is_zero() && g.rhs.is_zero());
}

#[test]
fn signed_gamma_matches_tree_weights() {
    // Explicit enumeration here, independent of the shape-weighted engine used by the registry.
    for size in 2..=6u32 {
        for n in 0..=size {
            for x in 0..=size - n {
                let q = size - n - x;
                let signed = gamma_count_weighted(n, x, q, StatFilter::All, &Weight::Sign, CountMode::Explicit).unwrap();
                let scaled = signed / int_to_rat(&factorial((size - 1) as u64));
                let rhs = verify_numeric("gamma-signed", &point(&[("n", rat(n as i64)), ("q", rat(q as i64)), ("x", rat(x as i64))]))
                    .unwrap()
                    .rhs;
                assert_eq!(scaled, rhs, "n={n} x={x} q={q}");
            }
        }
    }
}

#[test]
fn two_weight_at_z_one_is_harer_zagier() {
    // q = 2, z = 1, then x → x − n.
    for n in 0..=8 {
        let e = verify_polynomial("two-weight", &point(&[("n", rat(n)), ("q", rat(2)), ("z", rat(1))]), &["x"]).unwrap();
        assert!(e.equal);
        let shifted = |p: &Polynomial| p.shift("x", &rat(-n));
        let x = Polynomial::var("x");
        assert_eq!(shifted(&e.lhs), hz_new_sum(n as u32, &x), "n={n}");
        assert_eq!(shifted(&e.rhs), hz_classic_sum(n as u32, &x), "n={n}");
    }
}

#[test]
fn multisection_at_k_one_is_the_k1_form() {
    for n in 0..=6 {
        for q in -2..=2 {
            let general = verify_polynomial("rou-general", &ip(&[("k", 1), ("n", n), ("t", 0), ("q", q)]), &["x", "z"]).unwrap();
            let k1 = verify_polynomial("rou-k1", &ip(&[("n", n), ("q", q)]), &["x", "z"]).unwrap();
            assert_eq!(general.lhs, k1.lhs, "n={n} q={q}");
            assert_eq!(general.rhs, k1.rhs, "n={n} q={q}");
        }
    }
}

#[test]
fn k1_form_is_two_weight_reversed() {
    // two-weight(z) = z^n · rou-k1(1/z), on both sides.
    for n in 0..=6i64 {
        for q in 0..=2 {
            for z in [rat(-2), rat(-1), ratio(1, 3), rat(2)] {
                for x in [rat(-1), rat(0), ratio(3, 2), rat(4)] {
                    let tw = verify_numeric("two-weight", &point(&[("n", rat(n)), ("q", rat(q)), ("x", x.clone()), ("z", z.clone())])).unwrap();
                    let inv = rat(1) / z.clone();
                    let k1 = verify_numeric("rou-k1", &point(&[("n", rat(n)), ("q", rat(q)), ("x", x.clone()), ("z", inv)])).unwrap();
                    let zn = z.pow(n as i32);
                    assert_eq!(tw.lhs, &zn * &k1.lhs);
                    assert_eq!(tw.rhs, &zn * &k1.rhs);
                }
            }
        }
    }
}

#[test]
fn partial_signed_terms_share_one_sign() {
    for n in 0..=8i64 {
        for n1 in 0..=n {
            for q in 0..=3 {
                for x in 1..=4 {
                    let sign = if (n - n1) % 2 == 0 { 1 } else { -1 };
                    let xs = rat(x);
                    for k in 0..=n1 {
                        let term: Rational = partial_signed_rhs_term(n, n1, q, &xs, k);
                        assert!(term.clone() * rat(sign) >= rat(0), "n={n} n1={n1} q={q} x={x} k={k}: {term}");
                    }
                    let lhs = verify_numeric("partial-signed", &ip(&[("n", n), ("n1", n1), ("q", q), ("x", x)])).unwrap().lhs;
                    assert!(lhs * rat(sign) >= rat(0));
                }
            }
        }
    }
}
