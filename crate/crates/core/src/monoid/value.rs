use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{
    DistanceMonoid, Elem, ExtRational, FiniteDistanceMonoid, MonoidError, ParametricMonoid, Rank,
};

/// An archimedean class: an explicit finite set, or every positive element of
/// an infinite archimedean family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchClass<V> {
    Finite(Vec<V>),
    AllPositive,
}

/// A distance value from either kind of carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceValue {
    Index(Elem),
    Rational(Rational64),
    Inf,
}

impl From<Elem> for DistanceValue {
    fn from(e: Elem) -> Self {
        DistanceValue::Index(e)
    }
}

impl From<ExtRational> for DistanceValue {
    fn from(v: ExtRational) -> Self {
        match v {
            ExtRational::Fin(q) => DistanceValue::Rational(q),
            ExtRational::Inf => DistanceValue::Inf,
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Index(e) => write!(f, "{e}"),
            DistanceValue::Rational(q) => write!(f, "{q}"),
            DistanceValue::Inf => f.write_str("INF"),
        }
    }
}

/// Either a validated table or a whitelisted family, behind one interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monoid {
    Finite(FiniteDistanceMonoid),
    Family(ParametricMonoid),
}

impl Monoid {
    /// Parses a family tag: `R:<n>`, `MAX:<k>`, `Q1`, `QT:<q>`, `Q`, `N`,
    /// or `GRID:Q1:<D>` (a finite grid of `Q_1`).
    pub fn from_tag(tag: &str) -> Result<Monoid, MonoidError> {
        let bad = || MonoidError::BadFamily(format!("unknown family tag `{tag}`"));
        let parts: Vec<&str> = tag.trim().split(':').collect();
        let family = match parts.as_slice() {
            ["R", n] => ParametricMonoid::TruncatedIntegers(n.parse().map_err(|_| bad())?),
            ["MAX", k] => ParametricMonoid::MaxChain(k.parse().map_err(|_| bad())?),
            ["Q1"] => ParametricMonoid::q1(),
            ["QT", q] => match q.parse::<ExtRational>().map_err(|_| bad())? {
                ExtRational::Fin(q) => ParametricMonoid::TruncatedRationals(q).checked()?,
                ExtRational::Inf => return Err(bad()),
            },
            ["Q"] => ParametricMonoid::NonnegativeRationals,
            ["N"] => ParametricMonoid::NonnegativeIntegers,
            ["GRID", inner, d] => {
                let d: u64 = d.parse().map_err(|_| bad())?;
                let base = match Monoid::from_tag(inner)? {
                    Monoid::Family(f) => f,
                    Monoid::Finite(_) => return Err(bad()),
                };
                return base.grid_restrict(d).map(Monoid::Finite);
            }
            _ => return Err(bad()),
        };
        Ok(Monoid::Family(family))
    }

    pub fn as_finite(&self) -> Option<&FiniteDistanceMonoid> {
        match self {
            Monoid::Finite(m) => Some(m),
            Monoid::Family(_) => None,
        }
    }

    /// A table for this monoid when its carrier is finite.
    pub fn to_finite(&self) -> Option<FiniteDistanceMonoid> {
        match self {
            Monoid::Finite(m) => Some(m.clone()),
            Monoid::Family(f) => f.to_finite(),
        }
    }

    fn elem(&self, v: &DistanceValue) -> Result<Elem, MonoidError> {
        match (self, v) {
            (Monoid::Finite(m), DistanceValue::Index(e)) if m.contains(e) => Ok(*e),
            (Monoid::Finite(_), DistanceValue::Index(e)) => {
                Err(MonoidError::NotAnElement(e.to_string()))
            }
            _ => Err(MonoidError::MixedCarriers),
        }
    }

    fn ext(&self, v: &DistanceValue) -> Result<ExtRational, MonoidError> {
        match (self, v) {
            (Monoid::Family(_), DistanceValue::Rational(q)) => Ok(ExtRational::Fin(*q)),
            (Monoid::Family(_), DistanceValue::Inf) => Ok(ExtRational::Inf),
            _ => Err(MonoidError::MixedCarriers),
        }
    }

    /// Checks that `v` belongs to this carrier (`R*` for families).
    pub fn check(&self, v: &DistanceValue) -> Result<(), MonoidError> {
        match self {
            Monoid::Finite(_) => self.elem(v).map(|_| ()),
            Monoid::Family(f) => {
                let x = self.ext(v)?;
                if f.contains(&x) || x == f.top() {
                    Ok(())
                } else {
                    Err(MonoidError::NotAnElement(x.to_string()))
                }
            }
        }
    }

    pub fn try_oplus(
        &self,
        a: &DistanceValue,
        b: &DistanceValue,
    ) -> Result<DistanceValue, MonoidError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.oplus(a, b))
    }

    pub fn try_abs_diff(
        &self,
        a: &DistanceValue,
        b: &DistanceValue,
    ) -> Result<DistanceValue, MonoidError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.abs_diff(a, b))
    }

    pub fn try_ceil_div(&self, r: &DistanceValue, s: &DistanceValue) -> Result<Rank, MonoidError> {
        self.check(r)?;
        self.check(s)?;
        Ok(self.ceil_div(r, s))
    }

    pub fn arch(&self) -> Rank {
        match self {
            Monoid::Finite(m) => m.arch(),
            Monoid::Family(f) => f.arch(),
        }
    }

    pub fn arch_class(&self, t: &DistanceValue) -> Result<ArchClass<DistanceValue>, MonoidError> {
        self.check(t)?;
        Ok(match self {
            Monoid::Finite(m) => ArchClass::Finite(
                m.arch_class(self.elem(t)?).into_iter().map(Into::into).collect(),
            ),
            Monoid::Family(f) => match f.arch_class(&self.ext(t)?) {
                ArchClass::Finite(v) => ArchClass::Finite(v.into_iter().map(Into::into).collect()),
                ArchClass::AllPositive => ArchClass::AllPositive,
            },
        })
    }

    pub fn arch_local(&self, t: &DistanceValue) -> Result<Rank, MonoidError> {
        self.check(t)?;
        Ok(match self {
            Monoid::Finite(m) => m.arch_local(self.elem(t)?),
            Monoid::Family(f) => f.arch_local(&self.ext(t)?),
        })
    }

    pub fn eq_set(&self) -> Vec<DistanceValue> {
        match self {
            Monoid::Finite(m) => m.eq_set().into_iter().map(Into::into).collect(),
            Monoid::Family(f) => f.eq_set().into_iter().map(Into::into).collect(),
        }
    }

    pub fn eq_lt_set(&self) -> Vec<DistanceValue> {
        match self {
            Monoid::Finite(m) => m.eq_lt_set().into_iter().map(Into::into).collect(),
            Monoid::Family(f) => f.eq_lt_set().into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_ultrametric(&self) -> bool {
        match self {
            Monoid::Finite(m) => m.is_ultrametric(),
            Monoid::Family(f) => f.is_ultrametric(),
        }
    }

    pub fn is_metrically_trivial(&self) -> bool {
        match self {
            Monoid::Finite(m) => m.is_metrically_trivial(),
            Monoid::Family(f) => f.is_metrically_trivial(),
        }
    }

    pub fn is_archimedean(&self) -> bool {
        match self {
            Monoid::Finite(m) => m.is_archimedean(),
            Monoid::Family(f) => f.is_archimedean(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Monoid::Finite(m) => format!("finite monoid {{{}}}", m.labels().join(", ")),
            Monoid::Family(f) => f.tag(),
        }
    }
}

impl From<FiniteDistanceMonoid> for Monoid {
    fn from(m: FiniteDistanceMonoid) -> Self {
        Monoid::Finite(m)
    }
}

impl From<ParametricMonoid> for Monoid {
    fn from(f: ParametricMonoid) -> Self {
        Monoid::Family(f)
    }
}

/// Values passed to the trait methods must come from this carrier; use the
/// `try_*` methods for unchecked input.
impl DistanceMonoid for Monoid {
    type Value = DistanceValue;

    fn zero(&self) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m.zero().into(),
            Monoid::Family(f) => f.zero().into(),
        }
    }

    fn top(&self) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m.top().into(),
            Monoid::Family(f) => f.top().into(),
        }
    }

    fn oplus(&self, a: &DistanceValue, b: &DistanceValue) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m.op(expect(self.elem(a)), expect(self.elem(b))).into(),
            Monoid::Family(f) => f.oplus(&expect(self.ext(a)), &expect(self.ext(b))).into(),
        }
    }

    fn abs_diff(&self, a: &DistanceValue, b: &DistanceValue) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m
                .abs_diff_elem(expect(self.elem(a)), expect(self.elem(b)))
                .into(),
            Monoid::Family(f) => f.abs_diff(&expect(self.ext(a)), &expect(self.ext(b))).into(),
        }
    }

    fn one_third(&self, a: &DistanceValue) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m.one_third_elem(expect(self.elem(a))).into(),
            Monoid::Family(f) => f.one_third(&expect(self.ext(a))).into(),
        }
    }

    fn nfold(&self, a: &DistanceValue, k: u64) -> DistanceValue {
        match self {
            Monoid::Finite(m) => m.nfold_elem(expect(self.elem(a)), k).into(),
            Monoid::Family(f) => f.nfold(&expect(self.ext(a)), k).into(),
        }
    }

    fn ceil_div(&self, r: &DistanceValue, s: &DistanceValue) -> Rank {
        match self {
            Monoid::Finite(m) => m.ceil_div_elem(expect(self.elem(r)), expect(self.elem(s))),
            Monoid::Family(f) => f.ceil_div(&expect(self.ext(r)), &expect(self.ext(s))),
        }
    }

    fn elements(&self) -> Option<Vec<DistanceValue>> {
        match self {
            Monoid::Finite(m) => Some(m.elems().map(Into::into).collect()),
            Monoid::Family(f) => f
                .elements()
                .map(|els| els.into_iter().map(Into::into).collect()),
        }
    }

    fn contains(&self, v: &DistanceValue) -> bool {
        match self {
            Monoid::Finite(m) => matches!(v, DistanceValue::Index(e) if m.contains(e)),
            Monoid::Family(f) => self.ext(v).map(|x| f.contains(&x)).unwrap_or(false),
        }
    }

    fn label(&self, v: &DistanceValue) -> String {
        match (self, v) {
            (Monoid::Finite(m), DistanceValue::Index(e)) if m.contains(e) => {
                m.elem_label(*e).to_string()
            }
            _ => v.to_string(),
        }
    }

    fn parse_value(&self, s: &str) -> Option<DistanceValue> {
        match self {
            Monoid::Finite(m) => m.elem_by_label(s).map(Into::into),
            Monoid::Family(f) => f.parse_value(s).map(Into::into),
        }
    }
}

fn expect<T>(r: Result<T, MonoidError>) -> T {
    r.unwrap_or_else(|e| panic!("value from a different carrier: {e}"))
}
