//! Property checks shared by the proptest suites and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::rngs::StdRng;
use rand::SeedableRng;
use urysohn::enumeration::enumerate_monoids;
use urysohn::monoid::{DistanceMonoid, Elem, ExtRational, FiniteDistanceMonoid, ParametricMonoid};
use urysohn::space::free_amalgam;

use super::{is_metric, random_space, to_matrix, to_space, Table};

/// Every enumerated monoid with 1 to 4 nonzero elements.
pub fn small_monoids() -> Vec<FiniteDistanceMonoid> {
    (1..=4).flat_map(enumerate_monoids).collect()
}

/// `|a ⊖ c| ≤ |a ⊖ b| ⊕ |b ⊖ c|`.
pub fn abs_diff_triangle<M: DistanceMonoid>(
    m: &M,
    a: &M::Value,
    b: &M::Value,
    c: &M::Value,
) -> Result<(), TestCaseError> {
    let lhs = m.abs_diff(a, c);
    let rhs = m.oplus(&m.abs_diff(a, b), &m.abs_diff(b, c));
    prop_assert!(lhs <= rhs, "|a⊖c| = {:?} > {:?}", lhs, rhs);
    Ok(())
}

/// `k ↦ k·a` is nondecreasing, constant once it repeats, and stable from
/// `k = |R|` on; it also matches repeated addition in the table.
pub fn nfold_stabilizes(m: &FiniteDistanceMonoid, a: Elem) -> Result<(), TestCaseError> {
    let t = Table::of(m);
    let size = m.len();
    let seq: Vec<Elem> = (1..=size as u64 + 3).map(|k| m.nfold_elem(a, k)).collect();
    for (k, w) in seq.windows(2).enumerate() {
        prop_assert!(w[0] <= w[1]);
        if w[0] == w[1] {
            prop_assert!(seq[k..].iter().all(|&x| x == w[0]));
        }
    }
    prop_assert_eq!(seq[size - 1], *seq.last().unwrap());
    for (k, &x) in seq.iter().enumerate() {
        prop_assert_eq!(x.index(), t.times(a.index(), k + 1));
    }
    Ok(())
}

/// The grid `{0, 1/D, …, cap}` computes the same `⊕`, `⊖` and `⌈r/s⌉` as
/// the family on grid points.
pub fn grid_agrees(
    family: &ParametricMonoid,
    d: u64,
    i: usize,
    j: usize,
) -> Result<(), TestCaseError> {
    let grid = family.grid_restrict(d).expect("grid closes");
    let top = grid.max_elem().index();
    let (i, j) = (i % (top + 1), j % (top + 1));
    let val = |e: Elem| -> ExtRational {
        family
            .parse_value(grid.elem_label(e))
            .expect("grid labels are family values")
    };
    let (x, y) = (Elem(i as u16), Elem(j as u16));
    prop_assert_eq!(val(grid.op(x, y)), family.oplus(&val(x), &val(y)));
    prop_assert_eq!(val(grid.abs_diff_elem(x, y)), family.abs_diff(&val(x), &val(y)));
    if j > 0 {
        prop_assert_eq!(grid.ceil_div_elem(x, y), family.ceil_div(&val(x), &val(y)));
    }
    Ok(())
}

/// Gluing `C ∪ {a}` and `C ∪ {b}` freely gives `d(a, b)` equal to the
/// largest value any valid completion can use.
pub fn amalgam_is_maximal(
    m: &FiniteDistanceMonoid,
    base: usize,
    seed: u64,
) -> Result<(), TestCaseError> {
    let t = Table::of(m);
    let mut rng = StdRng::seed_from_u64(seed);
    let full = random_space(&t, base + 2, &mut rng);
    let (a_pt, b_pt) = (base, base + 1);
    let pick = |extra: usize| -> Vec<usize> { (0..base).chain([extra]).collect() };
    let whole = to_space(m, &full);
    let sa = whole.subspace(&pick(a_pt));
    let sb = whole.subspace(&pick(b_pt));
    let common: Vec<(usize, usize)> = (0..base).map(|c| (c, c)).collect();
    let glued = free_amalgam(&sa, &sb, &common).expect("amalgam exists for finite monoids");
    prop_assert_eq!(glued.len(), base + 2);
    let gm = to_matrix(&glued);
    // Restrictions are the original spaces.
    let ma = to_matrix(&sa);
    for (row, expected) in gm.iter().zip(&ma) {
        prop_assert_eq!(&row[..=base], &expected[..]);
    }
    let valid: Vec<usize> = (1..=t.top())
        .filter(|&v| {
            let mut d = full.clone();
            d[a_pt][b_pt] = v;
            d[b_pt][a_pt] = v;
            is_metric(&t, &d)
        })
        .collect();
    prop_assert!(!valid.is_empty());
    prop_assert_eq!(gm[a_pt][b_pt], *valid.iter().max().unwrap());
    Ok(())
}

/// A family together with a value sampler.
pub fn family_values(
    family: &ParametricMonoid,
    raw: (i64, i64),
) -> ExtRational {
    let (num, den) = (raw.0.abs(), raw.1.abs().max(1));
    let v = family
        .parse_value(&format!("{num}/{den}"))
        .or_else(|| family.parse_value(&num.to_string()));
    match v {
        Some(v) => v,
        None => family.top(),
    }
}

pub fn families() -> Vec<ParametricMonoid> {
    ["R:1", "R:3", "R:6", "MAX:4", "Q1", "QT:5/2", "Q", "N"]
        .iter()
        .map(|tag| match urysohn::Monoid::from_tag(tag).unwrap() {
            urysohn::Monoid::Family(f) => f,
            urysohn::Monoid::Finite(_) => unreachable!("plain family tags"),
        })
        .collect()
}
