//! Distance monoids: finite Cayley tables, whitelisted parametric families,
//! and the arithmetic every other module is built on.
//!
//! A distance monoid is a commutative monoid `(R, ⊕, ≤, 0)` whose order is
//! total, translation invariant, and has `0` as least element. Finite monoids
//! are stored as validated tables over the chain `0 < r_1 < … < r_n`, so an
//! element is just its rank and order-isomorphism is table equality.

mod family;
mod finite;
mod rank;
pub mod text;
mod value;

pub use family::{ExtRational, ParametricMonoid};
pub use finite::{Elem, FiniteDistanceMonoid};
pub use rank::Rank;
pub use value::{ArchClass, DistanceValue, Monoid};

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

/// Errors raised while building or combining monoid data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table must be a non-empty square matrix matching {labels} labels")]
    NotSquare { labels: usize },
    #[error("table entry ({i},{j}) = {value} is out of range")]
    IndexOutOfRange { i: usize, j: usize, value: usize },
    #[error("labels must be distinct and non-empty (offending label `{0}`)")]
    BadLabels(String),
    #[error("0 is not an identity: 0 ⊕ r_{j} = r_{found} (or its transpose)")]
    BadIdentity { j: usize, found: usize },
    #[error("not commutative: r_{i} ⊕ r_{j} = r_{ij} but r_{j} ⊕ r_{i} = r_{ji}")]
    NotCommutative { i: usize, j: usize, ij: usize, ji: usize },
    #[error(
        "not monotone: r_{i} ≤ r_{i_prime} but r_{i} ⊕ r_{j} = r_{lhs} > r_{i_prime} ⊕ r_{j} = r_{rhs}"
    )]
    NotMonotone { i: usize, i_prime: usize, j: usize, lhs: usize, rhs: usize },
    #[error("not associative: (r_{i} ⊕ r_{j}) ⊕ r_{k} = r_{lhs} but r_{i} ⊕ (r_{j} ⊕ r_{k}) = r_{rhs}")]
    NotAssociative { i: usize, j: usize, k: usize, lhs: usize, rhs: usize },
    #[error("values come from different carriers")]
    MixedCarriers,
    #[error("{0} is not an element of this monoid")]
    NotAnElement(String),
    #[error("grid with denominator {denominator} is not closed under ⊕ ({detail})")]
    GridNotClosed { denominator: u64, detail: String },
    #[error("invalid family: {0}")]
    BadFamily(String),
    #[error("reals must start at 0 and be strictly increasing")]
    BadReals,
}

/// The operations generic algorithms need from a distance monoid.
///
/// `top` is `sup R*`: the maximum for finite monoids and bounded families,
/// the formal infinity for `N` and `Q`. It is what an empty infimum means.
pub trait DistanceMonoid: Sync {
    type Value: Clone + Ord + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Value;

    fn top(&self) -> Self::Value;

    fn oplus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// `|a ⊖ b|`: the least `x` with `a ≤ b ⊕ x` and `b ≤ a ⊕ x`.
    fn abs_diff(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// `⅓a = inf{x : a ≤ 3x}`.
    fn one_third(&self, a: &Self::Value) -> Self::Value;

    /// `a ⊕ … ⊕ a` (`k` times, `k ≥ 1`).
    fn nfold(&self, a: &Self::Value, k: u64) -> Self::Value {
        assert!(k >= 1, "nfold needs k >= 1");
        let mut acc = a.clone();
        for _ in 1..k {
            let next = self.oplus(&acc, a);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    /// `⌈r/s⌉ = inf{n ≥ 1 : r ≤ ns}`.
    fn ceil_div(&self, r: &Self::Value, s: &Self::Value) -> Rank;

    /// Every element, in increasing order, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Value>>;

    /// Whether `v` is an element of `R` (as opposed to only `R*`).
    fn contains(&self, v: &Self::Value) -> bool;

    fn label(&self, v: &Self::Value) -> String;

    fn parse_value(&self, s: &str) -> Option<Self::Value>;

    fn is_zero(&self, v: &Self::Value) -> bool {
        *v == self.zero()
    }

    /// Positive elements of a finite carrier, increasing.
    fn positive_elements(&self) -> Option<Vec<Self::Value>> {
        self.elements()
            .map(|els| els.into_iter().filter(|v| !self.is_zero(v)).collect())
    }

    fn sum<'a, I>(&self, values: I) -> Self::Value
    where
        I: IntoIterator<Item = &'a Self::Value>,
        Self::Value: 'a,
    {
        values
            .into_iter()
            .fold(self.zero(), |acc, v| self.oplus(&acc, v))
    }
}

impl<T: DistanceMonoid> DistanceMonoid for &T {
    type Value = T::Value;

    fn zero(&self) -> Self::Value {
        (**self).zero()
    }

    fn top(&self) -> Self::Value {
        (**self).top()
    }

    fn oplus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        (**self).oplus(a, b)
    }

    fn abs_diff(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        (**self).abs_diff(a, b)
    }

    fn one_third(&self, a: &Self::Value) -> Self::Value {
        (**self).one_third(a)
    }

    fn nfold(&self, a: &Self::Value, k: u64) -> Self::Value {
        (**self).nfold(a, k)
    }

    fn ceil_div(&self, r: &Self::Value, s: &Self::Value) -> Rank {
        (**self).ceil_div(r, s)
    }

    fn elements(&self) -> Option<Vec<Self::Value>> {
        (**self).elements()
    }

    fn contains(&self, v: &Self::Value) -> bool {
        (**self).contains(v)
    }

    fn label(&self, v: &Self::Value) -> String {
        (**self).label(v)
    }

    fn parse_value(&self, s: &str) -> Option<Self::Value> {
        (**self).parse_value(s)
    }
}
