//! `d_max` / `d_min`, forking, and the auxiliary independence relations on
//! finite configurations.
//!
//! Forking is decided by its algebraic characterization: `A` is independent
//! from `B` over `C` iff for all `b1, b2 ∈ B`, both `d_max(b1,b2/·)` and
//! `d_min(b1,b2/·)` are the same over `AC` as over `C`.

use serde::Serialize;
use thiserror::Error;

use crate::monoid::DistanceMonoid;
use crate::space::RMetricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndependenceError {
    #[error("the monoid fails r ⊕ r ⊕ s = r ⊕ s for some r ≤ s")]
    MonoidNotSimple,
    #[error("B ∪ C must be nonempty")]
    EmptyBC,
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sorted(a: &[usize]) -> Vec<usize> {
    union(a, &[])
}

/// `d_max(b1,b2/C) = min over c ∈ C of d(b1,c) ⊕ d(c,b2)`; `sup R*` if `C = ∅`.
pub fn dmax<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    b1: usize,
    b2: usize,
    c: &[usize],
) -> M::Value {
    let m = space.monoid();
    c.iter()
        .map(|&x| m.oplus(space.d(b1, x), space.d(x, b2)))
        .min()
        .unwrap_or_else(|| m.top())
}

/// `d_min(b1,b2/C) = max(sup over c of |d(b1,c) ⊖ d(c,b2)|, ⅓ d(b1,b2))`.
pub fn dmin<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    b1: usize,
    b2: usize,
    c: &[usize],
) -> M::Value {
    let m = space.monoid();
    let spread = c
        .iter()
        .map(|&x| m.abs_diff(space.d(b1, x), space.d(x, b2)))
        .max()
        .unwrap_or_else(|| m.zero());
    spread.max(m.one_third(space.d(b1, b2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Independent,
    Forks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Dmax,
    Dmin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Certificate {
    /// The first pair of `B` (in point order) where a bound moves.
    Pair {
        b1: String,
        b2: String,
        failing: Bound,
        over_ac: String,
        over_c: String,
    },
    Checked { pairs_checked: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForkingReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl ForkingReport {
    pub fn forks(&self) -> bool {
        self.verdict == Verdict::Forks
    }
}

/// Decides whether `A` forks with `B` over `C`.
pub fn forks<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> ForkingReport {
    let m = space.monoid();
    let ac = union(a, c);
    let c = sorted(c);
    let b = sorted(b);
    let mut checked = 0;
    for (i, &b1) in b.iter().enumerate() {
        for &b2 in &b[i..] {
            checked += 1;
            let bounds = [
                (Bound::Dmax, dmax(space, b1, b2, &ac), dmax(space, b1, b2, &c)),
                (Bound::Dmin, dmin(space, b1, b2, &ac), dmin(space, b1, b2, &c)),
            ];
            for (failing, over_ac, over_c) in bounds {
                if over_ac != over_c {
                    return ForkingReport {
                        verdict: Verdict::Forks,
                        certificate: Certificate::Pair {
                            b1: space.label(b1).to_string(),
                            b2: space.label(b2).to_string(),
                            failing,
                            over_ac: m.label(&over_ac),
                            over_c: m.label(&over_c),
                        },
                    };
                }
            }
        }
    }
    ForkingReport {
        verdict: Verdict::Independent,
        certificate: Certificate::Checked {
            pairs_checked: checked,
        },
    }
}

/// `d(a, BC) = d(a, C)` for all `a ∈ A`.
pub fn rel_dist<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> bool {
    let bc = union(b, c);
    a.iter()
        .all(|&x| space.dist_to_set(x, &bc) == space.dist_to_set(x, c))
}

/// `d(a, b) = d_max(a, b/C)` for all `a ∈ A`, `b ∈ B`.
pub fn rel_otimes<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> bool {
    a.iter()
        .all(|&x| b.iter().all(|&y| *space.d(x, y) == dmax(space, x, y, c)))
}

/// `d_max(b1, b2/AC) = d_max(b1, b2/C)` for all `b1, b2 ∈ B`.
pub fn rel_dmax<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> bool {
    let ac = union(a, c);
    b.iter().all(|&b1| {
        b.iter()
            .all(|&b2| dmax(space, b1, b2, &ac) == dmax(space, b1, b2, c))
    })
}

/// Whether `r ⊕ r ⊕ s = r ⊕ s` for all `r ≤ s` in a finite carrier.
pub fn monoid_is_simple<M: DistanceMonoid>(m: &M) -> bool {
    let Some(els) = m.elements() else {
        return false;
    };
    els.iter().all(|r| {
        els.iter().filter(|s| *s >= r).all(|s| {
            let rs = m.oplus(r, s);
            m.oplus(r, &rs) == rs
        })
    })
}

/// `2 d(a, BC) = 2 d(a, C)` for all `a ∈ A`; meaningful for simple monoids.
pub fn simple_criterion<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<bool, IndependenceError> {
    let m = space.monoid();
    if !monoid_is_simple(m) {
        return Err(IndependenceError::MonoidNotSimple);
    }
    let bc = union(b, c);
    Ok(a.iter().all(|&x| {
        m.nfold(&space.dist_to_set(x, &bc), 2) == m.nfold(&space.dist_to_set(x, c), 2)
    }))
}

/// `U(a) = min over b ∈ BC of d(a, b) ⊕ d_min(b_*, b/C)`.
pub fn u_value<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    a: usize,
    b: &[usize],
    c: &[usize],
    b_star: usize,
) -> Result<M::Value, IndependenceError> {
    let m = space.monoid();
    union(b, c)
        .into_iter()
        .map(|x| m.oplus(space.d(a, x), &dmin(space, b_star, x, c)))
        .min()
        .ok_or(IndependenceError::EmptyBC)
}

/// Distances along an indiscernible sequence of pairs `(b1^l, b2^l)`:
/// for `i < j`, `d(b1^i, b1^j) = d11`, `d(b2^i, b2^j) = d22`,
/// `d(b1^i, b2^j) = alpha` and `d(b2^i, b1^j) = d21`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairPattern<V> {
    pub d11: V,
    pub d22: V,
    pub alpha: V,
    pub d21: V,
}

/// Searches for a `C`-indiscernible sequence of pairs starting at `(b1, b2)`
/// with `d(b1^0, b2^1) = alpha`.
///
/// Every triple of points in such a sequence lies in three consecutive
/// copies, so the search validates the (pseudo)metric on `C` plus three
/// copies of the pair. Slots may be 0: indiscernible sequences may repeat
/// points.
pub fn pair_sequence_search<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    b1: usize,
    b2: usize,
    c: &[usize],
    alpha: &M::Value,
) -> Option<PairPattern<M::Value>> {
    let m = space.monoid();
    let values = m.elements()?;
    let c = sorted(c);
    const COPIES: usize = 3;
    let nc = c.len();
    let n = nc + 2 * COPIES;
    // Points 0..nc are C; then (copy l, coordinate k) at nc + 2l + k.
    let mut d = vec![m.zero(); n * n];
    for (i, &x) in c.iter().enumerate() {
        for (j, &y) in c.iter().enumerate() {
            d[i * n + j] = space.d(x, y).clone();
        }
    }
    let coord = [b1, b2];
    for l in 0..COPIES {
        for k in 0..2 {
            let p = nc + 2 * l + k;
            for (i, &x) in c.iter().enumerate() {
                d[p * n + i] = space.d(coord[k], x).clone();
                d[i * n + p] = space.d(coord[k], x).clone();
            }
        }
        let (p, q) = (nc + 2 * l, nc + 2 * l + 1);
        d[p * n + q] = space.d(b1, b2).clone();
        d[q * n + p] = space.d(b1, b2).clone();
    }
    for d11 in &values {
        for d22 in &values {
            for d21 in &values {
                for i in 0..COPIES {
                    for j in (i + 1)..COPIES {
                        let (p1, p2) = (nc + 2 * i, nc + 2 * i + 1);
                        let (q1, q2) = (nc + 2 * j, nc + 2 * j + 1);
                        for (x, y, v) in [(p1, q1, d11), (p2, q2, d22), (p1, q2, alpha), (p2, q1, d21)]
                        {
                            d[x * n + y] = v.clone();
                            d[y * n + x] = v.clone();
                        }
                    }
                }
                if is_pseudometric(m, &d, n) {
                    return Some(PairPattern {
                        d11: d11.clone(),
                        d22: d22.clone(),
                        alpha: alpha.clone(),
                        d21: d21.clone(),
                    });
                }
            }
        }
    }
    None
}

fn is_pseudometric<M: DistanceMonoid>(m: &M, d: &[M::Value], n: usize) -> bool {
    (0..n).all(|x| {
        (x + 1..n).all(|z| {
            let xz = &d[x * n + z];
            (0..n).all(|y| *xz <= m.oplus(&d[x * n + y], &d[y * n + z]))
        })
    })
}
