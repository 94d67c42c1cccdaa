use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ArchClass, DistanceMonoid, FiniteDistanceMonoid, MonoidError, Rank};

/// A nonnegative rational or the formal symbol `INF`.
///
/// `INF` sorts above every rational and absorbs under addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtRational {
    Fin(Rational64),
    Inf,
}

impl ExtRational {
    pub fn int(n: i64) -> Self {
        ExtRational::Fin(Rational64::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRational::Fin(Rational64::new(num, den))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn as_rational(self) -> Option<Rational64> {
        match self {
            ExtRational::Fin(q) => Some(q),
            ExtRational::Inf => None,
        }
    }

    fn add(self, other: Self) -> Self {
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => ExtRational::Fin(a + b),
            _ => ExtRational::Inf,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Fin(q) => write!(f, "{q}"),
            ExtRational::Inf => f.write_str("INF"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = MonoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ExtRational::Inf);
        }
        let bad = || MonoidError::NotAnElement(s.to_string());
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.parse().map_err(|_| bad())?;
                let d: i64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Rational64::new(n, d)
            }
            None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
        };
        if q.is_negative() {
            return Err(bad());
        }
        Ok(ExtRational::Fin(q))
    }
}

/// The whitelisted countable (or closed-form finite) families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "param")]
pub enum ParametricMonoid {
    /// `R_n`: `{0, …, n}` with addition truncated at `n`.
    TruncatedIntegers(u64),
    /// `[0, q] ∩ Q` with addition truncated at `q`; `Q_1` is `q = 1`.
    TruncatedRationals(Rational64),
    /// `N` with ordinary addition.
    NonnegativeIntegers,
    /// `Q^{≥0}` with ordinary addition.
    NonnegativeRationals,
    /// `{0, …, k}` with `max`.
    MaxChain(u64),
}

impl ParametricMonoid {
    pub fn q1() -> Self {
        ParametricMonoid::TruncatedRationals(Rational64::from_integer(1))
    }

    /// Checks family parameters (a truncated-rational cap must be positive).
    pub fn checked(self) -> Result<Self, MonoidError> {
        match self {
            ParametricMonoid::TruncatedRationals(q) if !q.is_positive() => Err(
                MonoidError::BadFamily(format!("truncation cap must be positive, got {q}")),
            ),
            other => Ok(other),
        }
    }

    /// Short tag used on the command line.
    pub fn tag(&self) -> String {
        match self {
            ParametricMonoid::TruncatedIntegers(n) => format!("R:{n}"),
            ParametricMonoid::TruncatedRationals(q) if *q == Rational64::from_integer(1) => {
                "Q1".into()
            }
            ParametricMonoid::TruncatedRationals(q) => format!("QT:{q}"),
            ParametricMonoid::NonnegativeIntegers => "N".into(),
            ParametricMonoid::NonnegativeRationals => "Q".into(),
            ParametricMonoid::MaxChain(k) => format!("MAX:{k}"),
        }
    }

    fn cap(&self) -> ExtRational {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => ExtRational::int(n as i64),
            ParametricMonoid::TruncatedRationals(q) => ExtRational::Fin(q),
            ParametricMonoid::MaxChain(k) => ExtRational::int(k as i64),
            ParametricMonoid::NonnegativeIntegers | ParametricMonoid::NonnegativeRationals => {
                ExtRational::Inf
            }
        }
    }

    /// Whether the carrier has a maximum element.
    pub fn has_max(&self) -> bool {
        self.cap() != ExtRational::Inf
    }

    fn integral(&self) -> bool {
        !matches!(
            self,
            ParametricMonoid::TruncatedRationals(_) | ParametricMonoid::NonnegativeRationals
        )
    }

    fn is_max(&self) -> bool {
        matches!(self, ParametricMonoid::MaxChain(_))
    }

    fn is_trivial(&self) -> bool {
        matches!(
            self,
            ParametricMonoid::TruncatedIntegers(0) | ParametricMonoid::MaxChain(0)
        )
    }

    /// Positive elements in order, for the finite families.
    fn finite_positive(&self) -> Option<Vec<ExtRational>> {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) | ParametricMonoid::MaxChain(n) => {
                Some((1..=n as i64).map(ExtRational::int).collect())
            }
            _ => None,
        }
    }

    /// `[t]`, as a set for finite classes or "every positive element".
    pub fn arch_class(&self, t: &ExtRational) -> ArchClass<ExtRational> {
        if *t == ExtRational::zero() {
            return ArchClass::Finite(vec![ExtRational::zero()]);
        }
        match self {
            ParametricMonoid::MaxChain(_) => ArchClass::Finite(vec![*t]),
            ParametricMonoid::TruncatedIntegers(_) => {
                ArchClass::Finite(self.finite_positive().unwrap_or_default())
            }
            _ => ArchClass::AllPositive,
        }
    }

    /// `arch_R(t)`, with `1` for `t = 0`.
    pub fn arch_local(&self, t: &ExtRational) -> Rank {
        if *t == ExtRational::zero() {
            return Rank::Finite(1);
        }
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => Rank::Finite(n),
            ParametricMonoid::MaxChain(_) => Rank::Finite(1),
            _ => Rank::Omega,
        }
    }

    /// Archimedean complexity in closed form: `⌈sup / inf⌉` of the positive
    /// part for archimedean families, `1` for a nontrivial max-chain.
    pub fn arch(&self) -> Rank {
        if self.is_trivial() {
            return Rank::Finite(0);
        }
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => Rank::Finite(n),
            ParametricMonoid::MaxChain(_) => Rank::Finite(1),
            _ => Rank::Omega,
        }
    }

    pub fn eq_set(&self) -> Vec<ExtRational> {
        match *self {
            ParametricMonoid::MaxChain(k) => (0..=k as i64).map(ExtRational::int).collect(),
            _ if self.is_trivial() => vec![ExtRational::zero()],
            ParametricMonoid::TruncatedIntegers(_) | ParametricMonoid::TruncatedRationals(_) => {
                vec![ExtRational::zero(), self.cap()]
            }
            _ => vec![ExtRational::zero()],
        }
    }

    /// Idempotents other than `sup R`; equal to `eq` when there is no max.
    pub fn eq_lt_set(&self) -> Vec<ExtRational> {
        let cap = self.cap();
        self.eq_set().into_iter().filter(|v| *v != cap).collect()
    }

    pub fn is_ultrametric(&self) -> bool {
        self.is_max() || self.is_trivial()
    }

    pub fn is_metrically_trivial(&self) -> bool {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => n <= 2,
            ParametricMonoid::MaxChain(k) => k <= 1,
            _ => false,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        match *self {
            ParametricMonoid::MaxChain(k) => k <= 1,
            _ => true,
        }
    }

    /// `r ⊕ r ⊕ s = r ⊕ s` for all `r ≤ s`.
    pub fn is_simple(&self) -> bool {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => n <= 2,
            ParametricMonoid::MaxChain(_) => true,
            _ => false,
        }
    }

    /// First `(r, s)` with `r ≤ s` and `r ⊕ s < 2r ⊕ s`, when one can be named.
    pub fn simplicity_witness(&self) -> Option<(ExtRational, ExtRational)> {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) if n >= 3 => {
                Some((ExtRational::int(1), ExtRational::int(1)))
            }
            ParametricMonoid::TruncatedRationals(q) => {
                let third = ExtRational::Fin(q / 3);
                Some((third, third))
            }
            ParametricMonoid::NonnegativeIntegers | ParametricMonoid::NonnegativeRationals => {
                Some((ExtRational::int(1), ExtRational::int(1)))
            }
            _ => None,
        }
    }

    /// Materializes a finite family as a validated table.
    pub fn to_finite(&self) -> Option<FiniteDistanceMonoid> {
        match *self {
            ParametricMonoid::TruncatedIntegers(n) => {
                Some(FiniteDistanceMonoid::make_rn(n as usize))
            }
            ParametricMonoid::MaxChain(k) => Some(FiniteDistanceMonoid::make_maxchain(k as usize)),
            _ => None,
        }
    }

    /// The finite grid `{0, 1/D, 2/D, …, cap}` under the family's operation.
    ///
    /// The cap is the family maximum. Families without a maximum, and grids
    /// that do not land on the cap or leave the carrier, are rejected.
    pub fn grid_restrict(&self, denominator: u64) -> Result<FiniteDistanceMonoid, MonoidError> {
        if denominator == 0 {
            return Err(MonoidError::GridNotClosed {
                denominator,
                detail: "denominator must be positive".into(),
            });
        }
        let d = denominator as i64;
        let cap = match *self {
            ParametricMonoid::TruncatedRationals(q) => q,
            ParametricMonoid::TruncatedIntegers(n) => {
                if denominator != 1 {
                    return Err(MonoidError::GridNotClosed {
                        denominator,
                        detail: "grid points 1/D are not integers".into(),
                    });
                }
                Rational64::from_integer(n as i64)
            }
            _ => {
                return Err(MonoidError::BadFamily(format!(
                    "grid restriction needs a truncated family, got {}",
                    self.tag()
                )))
            }
        };
        let steps = cap * Rational64::from_integer(d);
        if !steps.is_integer() {
            return Err(MonoidError::GridNotClosed {
                denominator,
                detail: format!("cap {cap} is not a multiple of 1/{denominator}"),
            });
        }
        let m = steps.to_integer();
        let reals: Vec<Rational64> = (0..=m).map(|k| Rational64::new(k, d)).collect();
        FiniteDistanceMonoid::make_from_reals(&reals)
    }
}

impl fmt::Display for ParametricMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn ceil_ratio(r: Rational64, s: Rational64) -> u64 {
    let q = r / s;
    let (n, d) = (*q.numer(), *q.denom());
    Integer::div_ceil(&n, &d).max(1) as u64
}

impl DistanceMonoid for ParametricMonoid {
    type Value = ExtRational;

    fn zero(&self) -> ExtRational {
        ExtRational::zero()
    }

    fn top(&self) -> ExtRational {
        self.cap()
    }

    fn oplus(&self, a: &ExtRational, b: &ExtRational) -> ExtRational {
        if self.is_max() {
            return *a.max(b);
        }
        a.add(*b).min(self.cap())
    }

    fn abs_diff(&self, a: &ExtRational, b: &ExtRational) -> ExtRational {
        if a == b {
            return ExtRational::zero();
        }
        if self.is_max() {
            return *a.max(b);
        }
        match (a, b) {
            (ExtRational::Fin(x), ExtRational::Fin(y)) => ExtRational::Fin((x - y).abs()),
            _ => ExtRational::Inf,
        }
    }

    fn one_third(&self, a: &ExtRational) -> ExtRational {
        if self.is_max() {
            return *a;
        }
        match a {
            ExtRational::Inf => ExtRational::Inf,
            ExtRational::Fin(x) => {
                let third = x / 3;
                if self.integral() {
                    ExtRational::Fin(third.ceil())
                } else {
                    ExtRational::Fin(third)
                }
            }
        }
    }

    fn nfold(&self, a: &ExtRational, k: u64) -> ExtRational {
        assert!(k >= 1, "nfold needs k >= 1");
        if self.is_max() {
            return *a;
        }
        match a {
            ExtRational::Inf => ExtRational::Inf,
            ExtRational::Fin(x) => {
                ExtRational::Fin(x * Rational64::from_integer(k as i64)).min(self.cap())
            }
        }
    }

    fn ceil_div(&self, r: &ExtRational, s: &ExtRational) -> Rank {
        if *r <= *s {
            return Rank::Finite(1);
        }
        if s.is_zero_value() || self.is_max() {
            return Rank::Omega;
        }
        match (r, s) {
            (ExtRational::Fin(r), ExtRational::Fin(s)) => Rank::Finite(ceil_ratio(*r, *s)),
            // r = INF > s finite: no finite multiple of s reaches INF.
            _ => Rank::Omega,
        }
    }

    fn elements(&self) -> Option<Vec<ExtRational>> {
        self.finite_positive().map(|pos| {
            std::iter::once(ExtRational::zero()).chain(pos).collect()
        })
    }

    fn contains(&self, v: &ExtRational) -> bool {
        match v {
            ExtRational::Inf => false,
            ExtRational::Fin(q) => {
                !q.is_negative()
                    && (!self.integral() || q.is_integer())
                    && *v <= self.cap()
            }
        }
    }

    fn label(&self, v: &ExtRational) -> String {
        v.to_string()
    }

    fn parse_value(&self, s: &str) -> Option<ExtRational> {
        let v: ExtRational = s.parse().ok()?;
        (self.contains(&v) || v == self.top()).then_some(v)
    }
}

impl ExtRational {
    fn is_zero_value(&self) -> bool {
        matches!(self, ExtRational::Fin(q) if q.is_zero())
    }
}
