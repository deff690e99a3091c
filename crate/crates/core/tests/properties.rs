use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::sample::Index;

use treelab_core::exact::{
    binomial, filter_direct_sum, rat, ratio, roots_of_unity_filter, Polynomial, Rational, RingElement,
};
use treelab_core::identities::{parse_point, verify_numeric, Point};
use treelab_core::matches::{chen_decode, chen_encode, enum_match_sets};
use treelab_core::parity::{enum_pairs, phi, varphi, CyclePair, Direction};
use treelab_core::trees::{enum_plane_trees, LabeledTree};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..7).prop_map(|(a, b)| ratio(a, b))
}

fn point(pairs: &[(&str, Rational)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pascal_rule(r in small_rational(), k in 0i64..12) {
        let lhs = binomial(&r, k) + binomial(&r, k + 1);
        prop_assert_eq!(lhs, binomial(&(r + rat(1)), k + 1));
    }

    #[test]
    fn finite_difference_kills_degree_plus_one(coeffs in prop::collection::vec(-9i64..9, 1..7)) {
        let mut p = Polynomial::zero();
        for (e, c) in coeffs.iter().enumerate() {
            p = p + Polynomial::monomial("x", e, rat(*c));
        }
        let d = p.degree_in("x");
        prop_assert!(p.finite_difference(d + 1, "x").is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial(coeffs in prop::collection::vec(-9i64..9, 1..7)) {
        let mut p = Polynomial::zero();
        for (e, c) in coeffs.iter().enumerate() {
            p = p + Polynomial::monomial("x", e, rat(*c));
        }
        let nodes: Vec<(Rational, Rational)> = (0..coeffs.len() as i64)
            .map(|i| (rat(i), p.eval_at("x", &rat(i)).unwrap()))
            .collect();
        prop_assert_eq!(Polynomial::interpolate("x", &nodes).unwrap(), p);
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(
        a in prop::collection::vec(-5i64..5, 1..5),
        b in prop::collection::vec(-5i64..5, 1..5),
        x in small_rational(),
    ) {
        let build = |cs: &[i64]| cs.iter().enumerate().fold(Polynomial::zero(), |acc, (e, c)| acc + Polynomial::monomial("x", e, rat(*c)));
        let (p, q) = (build(&a), build(&b));
        let at = |f: &Polynomial| f.eval_at("x", &x).unwrap();
        prop_assert_eq!(at(&(&p * &q)), at(&p) * at(&q));
        prop_assert_eq!(at(&(&p + &q)), at(&p) + at(&q));
    }

    #[test]
    fn filter_matches_direct_sum(n in 0u32..18, k in 1u32..7, a_off in 0i64..7, x in small_rational()) {
        let a = a_off % k as i64;
        prop_assert_eq!(
            roots_of_unity_filter(n, a, k, &x).unwrap(),
            filter_direct_sum(n, a, k, &x).unwrap()
        );
    }

    #[test]
    fn root_power_sums(k in 1usize..9, m in -20i64..20) {
        let mut total = RingElement::<Rational>::zero(k);
        for l in 1..=k as i64 {
            total = total.add(&RingElement::omega_pow(k, l * m));
        }
        let expected = if m.rem_euclid(k as i64) == 0 { rat(k as i64) } else { rat(0) };
        prop_assert_eq!(total.to_scalar().unwrap(), expected);
    }

    #[test]
    fn stanley_at_rational_points(n in 0i64..12, z in small_rational()) {
        let e = verify_numeric("stanley", &point(&[("n", rat(n)), ("z", z)])).unwrap();
        prop_assert!(e.holds());
    }

    #[test]
    fn vandermonde_at_rational_points(n in 0i64..10, r in small_rational(), m in small_rational()) {
        let e = verify_numeric("vandermonde", &point(&[("n", rat(n)), ("r", r), ("m", m)])).unwrap();
        prop_assert!(e.holds());
    }

    #[test]
    fn two_weight_at_rational_points(n in 0i64..8, q in 0i64..5, x in small_rational(), z in small_rational()) {
        let e = verify_numeric("two-weight", &point(&[("n", rat(n)), ("q", rat(q)), ("x", x), ("z", z)])).unwrap();
        prop_assert!(e.holds());
    }

    #[test]
    fn multisection_at_rational_points(
        k in 1i64..7, n in 0i64..3, t_raw in 0i64..6, q in -3i64..3,
        x in small_rational(), z in small_rational(),
    ) {
        let t = t_raw % k;
        let p = point(&[("k", rat(k)), ("n", rat(n)), ("t", rat(t)), ("q", rat(q)), ("x", x), ("z", z)]);
        prop_assert!(verify_numeric("rou-general", &p).unwrap().holds());
    }

    #[test]
    fn chen_round_trip_on_random_trees(edges in 1usize..8, shape in any::<Index>(), seed in any::<u64>()) {
        let shapes = enum_plane_trees(edges).unwrap();
        let shape = shape.get(&shapes).clone();
        let mut labels: Vec<u32> = (1..=edges as u32 + 1).collect();
        let mut s = seed;
        for i in (1..labels.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            labels.swap(i, (s >> 33) as usize % (i + 1));
        }
        let tree = LabeledTree::new(shape, labels).unwrap();
        let ms = chen_encode(&tree).unwrap();
        prop_assert_eq!(ms.unstarred_roots(), tree.internal_labels());
        prop_assert_eq!(ms.unstarred_leaves(), tree.leaf_labels());
        prop_assert_eq!(chen_decode(&ms).unwrap(), tree);
    }

    #[test]
    fn chen_round_trip_on_random_match_sets(n in 1u32..5, pick in any::<Index>()) {
        let sets = enum_match_sets(n).unwrap();
        let ms = pick.get(&sets);
        prop_assert_eq!(&chen_encode(&chen_decode(ms).unwrap()).unwrap(), ms);
    }

    #[test]
    fn phi_and_varphi_reverse_weight(n in 0u32..6, g_raw in 0u32..3, pick in any::<Index>()) {
        let g = g_raw.min(n / 2);
        let pairs = enum_pairs(n, g).unwrap();
        let p: &CyclePair = pick.get(&pairs);
        if p.in_x() {
            let img = phi(p, Direction::Forward).unwrap();
            prop_assert_eq!(img.weight(), -p.weight());
            prop_assert_eq!(&phi(&img, Direction::Inverse).unwrap(), p);
        }
        if p.in_u() && !p.all_cycles_odd() {
            let img = varphi(p).unwrap();
            prop_assert_eq!(img.weight(), -p.weight());
            prop_assert_eq!(&varphi(&img).unwrap(), p);
        }
        let text = p.to_string();
        prop_assert_eq!(&text.parse::<CyclePair>().unwrap(), p);
    }
}

#[test]
fn point_syntax() {
    let p = parse_point("n=3, x=-1/2").unwrap();
    let mut expected = BTreeMap::new();
    expected.insert("n".to_string(), rat(3));
    expected.insert("x".to_string(), ratio(-1, 2));
    assert_eq!(p, expected);
    assert!(parse_point("n3").is_err());
}
