mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use urysohn::independence::{self as ind, Bound, Certificate, IndependenceError, Verdict};
use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::space::{free_amalgam, RMetricSpace};

fn space<'a>(m: &'a FiniteDistanceMonoid, names: &[&str], rows: &[&[u16]]) -> RMetricSpace<&'a FiniteDistanceMonoid> {
    RMetricSpace::new(
        m,
        names.iter().map(|s| s.to_string()).collect(),
        rows.iter().map(|r| r.iter().map(|&v| Elem(v)).collect()).collect(),
    )
    .unwrap()
}

/// `a, b1, b2, c` over `R_3` with `ab1 = ac = ab2 = b2c = 1`, `b1c = b1b2 = 2`.
fn four_point(m: &FiniteDistanceMonoid) -> RMetricSpace<&FiniteDistanceMonoid> {
    space(m, &["a", "b1", "b2", "c"], &[&[0, 1, 1, 1], &[1, 0, 2, 2], &[1, 2, 0, 1], &[1, 2, 1, 0]])
}

#[test]
fn dmax_examples() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let pair = space(&r3, &["b1", "b2"], &[&[0, 1], &[1, 0]]);
    assert_eq!(ind::dmax(&pair, 0, 1, &[]), Elem(3));
    let tri = space(&r3, &["b1", "b2", "c"], &[&[0, 3, 1], &[3, 0, 2], &[1, 2, 0]]);
    assert_eq!(ind::dmax(&tri, 0, 1, &[2]), Elem(3));
    let w = four_point(&r3);
    assert_eq!(ind::dmax(&w, 1, 2, &[0, 3]), Elem(2));
    assert_eq!(ind::dmax(&w, 1, 2, &[3]), Elem(3));
}

#[test]
fn dmin_examples() {
    let r2 = FiniteDistanceMonoid::make_rn(2);
    let pair = space(&r2, &["b1", "b2"], &[&[0, 1], &[1, 0]]);
    assert_eq!(ind::dmin(&pair, 0, 1, &[]), Elem(1));
    assert_eq!(ind::dmin(&pair, 0, 0, &[1]), Elem(0));
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let tri = space(&r3, &["b1", "b2", "c"], &[&[0, 2, 1], &[2, 0, 3], &[1, 3, 0]]);
    assert_eq!(ind::dmin(&tri, 0, 1, &[2]), Elem(2));
}

#[test]
fn forking_examples() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let w = four_point(&r3);
    let report = ind::forks(&w, &[0], &[1, 2], &[3]);
    assert_eq!(report.verdict, Verdict::Forks);
    match report.certificate {
        Certificate::Pair { b1, b2, failing, over_ac, over_c } => {
            // The first pair that moves is (b1, b1): 2·d(b1, ac) drops from 3 to 2.
            assert_eq!((b1.as_str(), b2.as_str()), ("b1", "b1"));
            assert_eq!(failing, Bound::Dmax);
            assert_eq!((over_ac.as_str(), over_c.as_str()), ("2", "3"));
        }
        other => panic!("expected a pair certificate, got {other:?}"),
    }
    // Forking is not symmetric here.
    assert_eq!(ind::forks(&w, &[1, 2], &[0], &[3]).verdict, Verdict::Independent);

    assert!(!ind::forks(&w, &[0], &[3], &[1, 2, 3]).forks());
    let r2 = FiniteDistanceMonoid::make_rn(2);
    let ab = space(&r2, &["a", "b"], &[&[0, 1], &[1, 0]]);
    assert!(!ind::forks(&ab, &[0], &[1], &[]).forks());
    assert!(ind::forks(&ab, &[0], &[0], &[]).forks());
}

#[test]
fn auxiliary_relation_examples() {
    let r2 = FiniteDistanceMonoid::make_rn(2);
    let edge = |a: &str, b: &str| space(&r2, &[a, b], &[&[0, 1], &[1, 0]]);
    let glued = free_amalgam(&edge("c", "a"), &edge("c", "b"), &[(0, 0)]).unwrap();
    assert!(ind::rel_otimes(&glued, &[1], &[2], &[0]));

    let acb = space(&r2, &["a", "c", "b"], &[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
    assert!(ind::rel_dist(&acb, &[0], &[2], &[1]));

    let ab = edge("a", "b");
    assert_eq!(ind::simple_criterion(&ab, &[0], &[1], &[]), Ok(true));
    assert_eq!(ind::simple_criterion(&ab, &[0], &[1], &[0]), Ok(true));
    assert_eq!(ind::simple_criterion(&ab, &[0], &[0], &[]), Ok(false));
    let r3 = FiniteDistanceMonoid::make_rn(3);
    assert_eq!(
        ind::simple_criterion(&four_point(&r3), &[0], &[1], &[3]),
        Err(IndependenceError::MonoidNotSimple)
    );
    assert!(ind::monoid_is_simple(&&r2));
    assert!(!ind::monoid_is_simple(&&r3));
}

#[test]
fn u_value_examples() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let t = Table::of(&r3);
    let w = four_point(&r3);
    let d = to_matrix(&w);
    // b* in BC: U(a) ≤ d(a, b*).
    for b_star in [1, 2, 3] {
        let u = ind::u_value(&w, 0, &[1, 2], &[3], b_star).unwrap();
        assert!(u.index() <= d[0][b_star]);
    }
    // Single point: U(a) = d(a, b) ⊕ ⅓d(b*, b).
    for b_star in 0..4 {
        let u = ind::u_value(&w, 0, &[2], &[], b_star).unwrap();
        assert_eq!(u.index(), t.add(d[0][2], t.one_third(d[b_star][2])));
    }
    assert_eq!(ind::u_value(&w, 0, &[], &[], 1), Err(IndependenceError::EmptyBC));

    // A copy a' of a placed freely over C = {c} is independent of B over C,
    // so U lies in the d_min/d_max bracket.
    let ext = w
        .extend(&urysohn::space::KatetovMap::new(vec![3], vec![Elem(1)]), "a'")
        .unwrap();
    let d = to_matrix(&ext);
    assert!(!ind::forks(&ext, &[4], &[1, 2], &[3]).forks());
    for b_star in 0..5 {
        let u = ind::u_value(&ext, 4, &[1, 2], &[3], b_star).unwrap().index();
        let bc = [1, 2, 3];
        assert!(dmin(&t, &d, 4, b_star, &bc) <= u && u <= dmax(&t, &d, 4, b_star, &bc));
    }
}

#[test]
fn pair_search_examples() {
    let r3 = FiniteDistanceMonoid::make_rn(3);
    let w = four_point(&r3);
    let found = ind::pair_sequence_search(&w, 1, 2, &[3], &Elem(2)).expect("constant sequence");
    assert_eq!(found.alpha, Elem(2));
    assert_eq!(ind::dmax(&w, 1, 2, &[0, 3]), Elem(2));
    assert!(ind::pair_sequence_search(&w, 1, 2, &[0, 3], &Elem(3)).is_none());

    let pair = space(&r3, &["b1", "b2"], &[&[0, 3], &[3, 0]]);
    assert_eq!(ind::dmin(&pair, 0, 1, &[]), Elem(1));
    assert!(ind::pair_sequence_search(&pair, 0, 1, &[], &Elem(2)).is_some());
}

/// In a simple monoid forking is symmetric; every non-simple one has an
/// asymmetric four-point configuration.
#[test]
fn symmetry_tracks_simplicity() {
    let mut rng = StdRng::seed_from_u64(11);
    for m in (1..=4).flat_map(urysohn::enumeration::enumerate_monoids) {
        let t = Table::of(&m);
        let simple = t.is_simple();
        for _ in 0..300 {
            let n = rng.gen_range(2..=5);
            let d = random_space(&t, n, &mut rng);
            let sp = to_space(&m, &d);
            let pick = |rng: &mut StdRng| subset(rng.gen_range(0..1usize << n), n);
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let ab = ind::forks(&sp, &a, &b, &c).forks();
            let ba = ind::forks(&sp, &b, &a, &c).forks();
            if simple {
                assert_eq!(ab, ba, "{:?} d = {d:?} A = {a:?} B = {b:?} C = {c:?}", m.rows());
            }
        }
        if !simple {
            let (r, s) = t.nonsimple_pair().unwrap();
            let w = urysohn::sequences::witness_nonsimple(&m, &Elem(r as u16), &Elem(s as u16), urysohn::sequences::NonsimpleVariant::FourPoint)
                .unwrap();
            assert!(ind::forks(&w, &[0], &[1, 2], &[3]).forks());
            assert!(!ind::forks(&w, &[1, 2], &[0], &[3]).forks());
        }
    }
}

proptest! {
    /// Library forking, `d_max`/`d_min` and the auxiliary relations agree
    /// with the oracles on random spaces up to 6 points over every monoid of
    /// size at most 4.
    #[test]
    fn relations_match_oracles(i in 0usize..31, n in 1usize..=6, seed in any::<u64>(), masks in (0usize..64, 0usize..64, 0usize..64)) {
        let ms = props::small_monoids();
        let m = &ms[i % ms.len()];
        let t = Table::of(m);
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_space(&t, n, &mut rng);
        let sp = to_space(m, &d);
        let full = (1usize << n) - 1;
        let (a, b, c) = (subset(masks.0 & full, n), subset(masks.1 & full, n), subset(masks.2 & full, n));
        prop_assert_eq!(!ind::forks(&sp, &a, &b, &c).forks(), independent(&t, &d, &a, &b, &c));
        prop_assert_eq!(ind::rel_dmax(&sp, &a, &b, &c), rel_dmax(&t, &d, &a, &b, &c));
        prop_assert_eq!(ind::rel_dist(&sp, &a, &b, &c), rel_dist(&t, &d, &a, &b, &c));
        prop_assert_eq!(ind::rel_otimes(&sp, &a, &b, &c), rel_otimes(&t, &d, &a, &b, &c));
        for &x in &b {
            for &y in &b {
                prop_assert_eq!(ind::dmax(&sp, x, y, &c).index(), dmax(&t, &d, x, y, &c));
                prop_assert_eq!(ind::dmin(&sp, x, y, &c).index(), dmin(&t, &d, x, y, &c));
            }
        }
        if t.is_simple() {
            let sc = ind::simple_criterion(&sp, &a, &b, &c).unwrap();
            prop_assert_eq!(sc, simple_criterion(&t, &d, &a, &b, &c));
            prop_assert_eq!(sc, independent(&t, &d, &a, &b, &c));
        }
        if t.is_metrically_trivial() {
            let meet_in_c = a.iter().all(|x| !b.contains(x) || c.contains(x));
            prop_assert_eq!(independent(&t, &d, &a, &b, &c), meet_in_c);
        }
        if t.is_ultrametric() {
            prop_assert_eq!(independent(&t, &d, &a, &b, &c), rel_dist(&t, &d, &a, &b, &c));
        }
        // Implications valid over every monoid.
        if rel_otimes(&t, &d, &a, &b, &c) {
            prop_assert!(independent(&t, &d, &a, &b, &c));
        }
        if independent(&t, &d, &a, &b, &c) {
            prop_assert!(rel_dmax(&t, &d, &a, &b, &c));
        }
    }
}
