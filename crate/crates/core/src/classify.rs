//! Classification of the theory of the Urysohn space over a distance monoid.
//!
//! Every verdict is read off an algebraic criterion on the monoid. The
//! `citations` map records which criterion decided each field, and
//! [`explain`] pairs it with a concrete witness when one exists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{
    DistanceMonoid, ExtRational, FiniteDistanceMonoid, Monoid, ParametricMonoid, Rank,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the theory is not supersimple, so SU-rank is undefined")]
    NotSupersimple,
}

/// A yes/no/unknown verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

/// Concrete evidence behind negative (or rank) verdicts. Not serialized.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// `r` with `r < r ⊕ r`.
    pub not_ultrametric: Option<String>,
    /// `(r, s)` with `r ≤ s` and `r ⊕ s < r ⊕ r ⊕ s`, rendered.
    pub not_simple: Option<String>,
    /// A chain realizing `arch`.
    pub arch_chain: Option<String>,
    /// Positive `r, s` with `r ⊕ s < sup R`.
    pub not_metrically_trivial: Option<String>,
}

/// The classification record for one monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryProfile {
    pub monoid: String,
    pub is_urysohn: bool,
    pub stable: bool,
    pub simple: bool,
    pub supersimple: bool,
    pub su_rank: Option<u64>,
    pub superstable: bool,
    pub omega_stable: bool,
    pub so_rank: Rank,
    pub nfsop: bool,
    pub metrically_trivial: bool,
    pub wei: bool,
    pub ei: bool,
    pub heq_nonempty: TriState,
    pub arch: Rank,
    pub eq: Vec<String>,
    pub eq_lt: Vec<String>,
    pub citations: BTreeMap<String, String>,
    #[serde(skip)]
    pub witnesses: Witnesses,
}

/// Field names accepted by [`explain`], in serialization order.
pub const FIELDS: &[&str] = &[
    "is_urysohn",
    "stable",
    "simple",
    "supersimple",
    "su_rank",
    "superstable",
    "omega_stable",
    "so_rank",
    "nfsop",
    "metrically_trivial",
    "wei",
    "ei",
    "heq_nonempty",
    "arch",
    "eq",
    "eq_lt",
];

fn citations() -> BTreeMap<String, String> {
    let entries = [
        ("is_urysohn", "finite distance monoids and the whitelisted families are Urysohn monoids"),
        ("stable", "stable iff the monoid is ultrametric: r ⊕ s = max(r, s)"),
        ("simple", "simple iff r ⊕ r ⊕ s = r ⊕ s for all r ≤ s"),
        ("supersimple", "supersimple iff simple and the idempotents are well-ordered"),
        ("su_rank", "SU-rank is the order type of the non-maximal idempotents"),
        ("superstable", "superstable iff stable and the monoid is well-ordered"),
        ("omega_stable", "omega-stable iff stable and the monoid is well-ordered"),
        ("so_rank", "strong order rank equals archimedean complexity"),
        ("nfsop", "Urysohn space theories never have the finitary strong order property"),
        ("metrically_trivial", "r ⊕ s = sup R for all positive r, s"),
        ("wei", "weak elimination of imaginaries iff the non-maximal idempotents are exactly {0}"),
        ("ei", "elimination of imaginaries fails for every nontrivial monoid"),
        ("heq_nonempty", "nonempty heq obstructs elimination of hyperimaginaries; R* = R for finite monoids"),
        ("arch", "least n with r_0 ⊕ … ⊕ r_n = r_1 ⊕ … ⊕ r_n for every chain r_0 ≤ … ≤ r_n"),
        ("eq", "idempotents {r : r ⊕ r = r}"),
        ("eq_lt", "idempotents other than sup R"),
    ];
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn render_chain(m: &FiniteDistanceMonoid, chain: &[crate::monoid::Elem]) -> String {
    let labels: Vec<&str> = chain.iter().map(|&e| m.elem_label(e)).collect();
    let total = chain.iter().fold(m.zero(), |acc, &r| m.op(acc, r));
    let tail = chain[1..].iter().fold(m.zero(), |acc, &r| m.op(acc, r));
    format!(
        "chain {}: {} < {}",
        labels.join(" ≤ "),
        m.elem_label(tail),
        m.elem_label(total)
    )
}

fn finite_witnesses(m: &FiniteDistanceMonoid) -> Witnesses {
    let l = |e| m.elem_label(e).to_string();
    Witnesses {
        not_ultrametric: m
            .non_ultrametric_witness()
            .map(|r| format!("{} < {} ⊕ {} = {}", l(r), l(r), l(r), l(m.op(r, r)))),
        not_simple: m.simplicity_witness().map(|(r, s)| {
            let rs = m.op(r, s);
            format!(
                "({}, {}): {} ⊕ {} = {} < {} ⊕ {} ⊕ {} = {}",
                l(r),
                l(s),
                l(r),
                l(s),
                l(rs),
                l(r),
                l(r),
                l(s),
                l(m.op(r, rs))
            )
        }),
        arch_chain: m
            .arch()
            .finite()
            .filter(|&n| n >= 1)
            .and_then(|n| m.arch_witness(n as usize))
            .map(|c| render_chain(m, &c)),
        not_metrically_trivial: m.metric_triviality_witness().map(|(r, s)| {
            format!(
                "{} ⊕ {} = {} < {}",
                l(r),
                l(s),
                l(m.op(r, s)),
                l(m.max_elem())
            )
        }),
    }
}

/// Classifies a finite monoid given by its table.
pub fn classify_finite(m: &FiniteDistanceMonoid) -> TheoryProfile {
    let stable = m.is_ultrametric();
    let simple = m.simplicity_witness().is_none();
    let eq_lt = m.eq_lt_set();
    let arch = m.arch();
    let labels = |v: Vec<crate::monoid::Elem>| -> Vec<String> {
        v.into_iter().map(|e| m.elem_label(e).to_string()).collect()
    };
    TheoryProfile {
        monoid: format!("finite monoid {{{}}}", m.labels().join(", ")),
        is_urysohn: true,
        stable,
        simple,
        supersimple: simple,
        su_rank: simple.then_some(eq_lt.len() as u64),
        superstable: stable,
        omega_stable: stable,
        so_rank: arch,
        nfsop: true,
        metrically_trivial: m.is_metrically_trivial(),
        wei: eq_lt == [crate::monoid::Elem::ZERO],
        ei: m.is_trivial(),
        heq_nonempty: TriState::False,
        arch,
        eq: labels(m.eq_set()),
        eq_lt: labels(eq_lt),
        citations: citations(),
        witnesses: finite_witnesses(m),
    }
}

/// Classifies a whitelisted family from its closed forms.
pub fn classify_family(f: &ParametricMonoid) -> TheoryProfile {
    let stable = f.is_ultrametric();
    let simple = f.is_simple();
    // Every whitelisted family has finitely many idempotents.
    let supersimple = simple;
    let well_ordered = !matches!(
        f,
        ParametricMonoid::TruncatedRationals(_) | ParametricMonoid::NonnegativeRationals
    );
    let eq_lt = f.eq_lt_set();
    let heq_nonempty = match f {
        ParametricMonoid::TruncatedRationals(_) | ParametricMonoid::NonnegativeRationals => {
            TriState::True
        }
        ParametricMonoid::NonnegativeIntegers
        | ParametricMonoid::TruncatedIntegers(_)
        | ParametricMonoid::MaxChain(_) => TriState::False,
    };
    let witnesses = match f.to_finite() {
        Some(m) => finite_witnesses(&m),
        None => Witnesses {
            not_ultrametric: Some(format!("1 < 1 ⊕ 1 = {}", f.oplus(&one(), &one()))),
            not_simple: f.simplicity_witness().map(|(r, s)| {
                let rs = f.oplus(&r, &s);
                format!("({r}, {s}): {r} ⊕ {s} = {rs} < {r} ⊕ {r} ⊕ {s} = {}", f.oplus(&r, &rs))
            }),
            arch_chain: None,
            not_metrically_trivial: (!f.is_metrically_trivial()).then(|| {
                format!("1 ⊕ 1 = {} < {}", f.oplus(&one(), &one()), f.top())
            }),
        },
    };
    let labels = |v: Vec<ExtRational>| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
    let trivial = f.arch() == Rank::Finite(0);
    TheoryProfile {
        monoid: f.tag(),
        is_urysohn: true,
        stable,
        simple,
        supersimple,
        su_rank: supersimple.then_some(eq_lt.len() as u64),
        superstable: stable && well_ordered,
        omega_stable: stable && well_ordered,
        so_rank: f.arch(),
        nfsop: true,
        metrically_trivial: f.is_metrically_trivial(),
        wei: eq_lt == [ExtRational::zero()],
        ei: trivial,
        heq_nonempty,
        arch: f.arch(),
        eq: labels(f.eq_set()),
        eq_lt: labels(eq_lt),
        citations: citations(),
        witnesses,
    }
}

fn one() -> ExtRational {
    ExtRational::int(1)
}

pub fn classify(m: &Monoid) -> TheoryProfile {
    match m {
        Monoid::Finite(m) => classify_finite(m),
        Monoid::Family(f) => classify_family(f),
    }
}

pub fn su_rank(m: &Monoid) -> Result<u64, ClassifyError> {
    classify(m).su_rank.ok_or(ClassifyError::NotSupersimple)
}

/// A field's value, the criterion behind it, and a witness when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub field: String,
    pub value: serde_json::Value,
    pub citation: String,
    pub witness: Option<String>,
}

/// Explains one field of a profile; `None` for an unknown field name.
pub fn explain(profile: &TheoryProfile, field: &str) -> Option<Explanation> {
    let citation = profile.citations.get(field)?.clone();
    let json = serde_json::to_value(profile).expect("profile serializes");
    let value = json.get(field)?.clone();
    let w = &profile.witnesses;
    let witness = match field {
        "stable" | "superstable" | "omega_stable" if !profile.stable => w.not_ultrametric.clone(),
        "stable" => Some("ultrametric: r ⊕ s = max(r, s) throughout".into()),
        "simple" | "supersimple" if !profile.simple => w.not_simple.clone(),
        "su_rank" if profile.su_rank.is_some() => {
            Some(format!("non-maximal idempotents {{{}}}", profile.eq_lt.join(", ")))
        }
        "su_rank" => w.not_simple.clone(),
        "so_rank" | "arch" => w.arch_chain.clone(),
        "metrically_trivial" => w.not_metrically_trivial.clone(),
        "wei" => Some(format!("non-maximal idempotents {{{}}}", profile.eq_lt.join(", "))),
        _ => None,
    };
    Some(Explanation {
        field: field.to_string(),
        value,
        citation,
        witness,
    })
}

impl TheoryProfile {
    /// Human-readable report, one field per line with its criterion.
    pub fn to_text(&self) -> String {
        let json = serde_json::to_value(self).expect("profile serializes");
        let mut out = format!("theory profile for {}\n", self.monoid);
        for field in FIELDS {
            let value = match &json[*field] {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => "none".to_string(),
                serde_json::Value::Array(items) => format!(
                    "{{{}}}",
                    items
                        .iter()
                        .map(|v| v.as_str().unwrap_or_default().to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                other => other.to_string(),
            };
            out.push_str(&format!("{field:<20} {value:<10} [{}]\n", self.citations[*field]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    fn s_monoid() -> FiniteDistanceMonoid {
        let reals: Vec<Rational64> = [0, 1, 2, 5, 6, 7]
            .iter()
            .map(|&x| Rational64::from_integer(x))
            .collect();
        FiniteDistanceMonoid::make_from_reals(&reals).unwrap()
    }

    #[test]
    fn r2_profile() {
        let p = classify_finite(&FiniteDistanceMonoid::make_rn(2));
        assert!(!p.stable && p.simple && p.supersimple && p.wei && p.metrically_trivial);
        assert_eq!(p.su_rank, Some(1));
        assert_eq!(p.so_rank, Rank::Finite(2));
    }

    #[test]
    fn maxchain_profile() {
        let p = classify(&Monoid::Family(ParametricMonoid::MaxChain(3)));
        assert!(p.stable && p.superstable && p.omega_stable && !p.wei);
        assert_eq!(p.su_rank, Some(3));
        assert_eq!(p.so_rank, Rank::Finite(1));
    }

    #[test]
    fn q1_profile() {
        let p = classify(&Monoid::Family(ParametricMonoid::q1()));
        assert!(!p.stable && !p.simple && p.wei);
        assert_eq!(p.so_rank, Rank::Omega);
        assert_eq!(p.heq_nonempty, TriState::True);
        assert_eq!(su_rank(&Monoid::Family(ParametricMonoid::q1())), Err(ClassifyError::NotSupersimple));
    }

    #[test]
    fn su_rank_examples() {
        let m = FiniteDistanceMonoid::from_table(vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 2, 3],
            vec![2, 2, 3, 3],
            vec![3, 3, 3, 3],
        ])
        .unwrap();
        assert_eq!(su_rank(&Monoid::Finite(m)), Ok(2));
        assert_eq!(su_rank(&Monoid::Finite(FiniteDistanceMonoid::make_rn(2))), Ok(1));
        assert_eq!(su_rank(&Monoid::Finite(FiniteDistanceMonoid::trivial())), Ok(0));
    }

    #[test]
    fn explanations() {
        let p = classify_finite(&FiniteDistanceMonoid::make_rn(3));
        let e = explain(&p, "simple").unwrap();
        assert_eq!(e.witness.as_deref(), Some("(1, 1): 1 ⊕ 1 = 2 < 1 ⊕ 1 ⊕ 1 = 3"));
        let p = classify_finite(&FiniteDistanceMonoid::make_maxchain(2));
        assert!(explain(&p, "stable").unwrap().witness.unwrap().contains("ultrametric"));
        let p = classify_finite(&s_monoid());
        let e = explain(&p, "so_rank").unwrap();
        assert_eq!(e.witness.as_deref(), Some("chain 1 ≤ 1 ≤ 5: 6 < 7"));
        assert!(explain(&p, "nope").is_none());
    }

    #[test]
    fn text_lists_every_field() {
        let text = classify_finite(&FiniteDistanceMonoid::make_rn(2)).to_text();
        for field in FIELDS {
            assert!(text.contains(field));
        }
    }
}
