//! Finite saturated approximations of the Urysohn space.

use rayon::prelude::*;
use thiserror::Error;

use super::{KatetovMap, RMetricSpace, SpaceError};
use crate::monoid::DistanceMonoid;

/// 64-bit linear congruential generator with Knuth's MMIX constants.
///
/// `next` returns the new state; `below(n)` uses the high bits,
/// `(state >> 33) % n`. Shuffles are Fisher–Yates from the last index down.
/// Fixing this protocol makes growth reproducible from a seed alone.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform-ish index in `0..n`, `n > 0`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() >> 33) % n as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum GrowError<M: DistanceMonoid + std::fmt::Debug> {
    #[error("point budget reached with {unrealized} Katětov maps still unrealized")]
    BudgetExceeded {
        partial: Box<RMetricSpace<M>>,
        unrealized: usize,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Subsets of `0..n` of size at most `k`, by size then lexicographically.
fn small_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=k.min(n) {
        rec(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

fn unrealized_over<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    domain: &[usize],
) -> Result<Vec<KatetovMap<M::Value>>, SpaceError> {
    Ok(space
        .enumerate_katetov(domain)?
        .into_iter()
        .filter(|f| !(0..space.len()).any(|p| space.realizes(p, f)))
        .collect())
}

fn all_unrealized<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    k: usize,
) -> Result<Vec<KatetovMap<M::Value>>, SpaceError> {
    let per_subset: Vec<_> = small_subsets(space.len(), k)
        .par_iter()
        .map(|domain| unrealized_over(space, domain))
        .collect::<Result<_, _>>()?;
    Ok(per_subset.into_iter().flatten().collect())
}

/// The first Katětov map over at most `k` points that no point realizes,
/// scanning domains by size then lexicographically. `Ok(None)` means the
/// space has the `k`-point extension property.
pub fn check_extension_property<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    k: usize,
) -> Result<Option<KatetovMap<M::Value>>, SpaceError> {
    let found = small_subsets(space.len(), k)
        .par_iter()
        .map(|domain| unrealized_over(space, domain).map(|v| v.into_iter().next()))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(None),
        Some(r) => r,
    }
}

/// Grows a space with the `k`-point extension property from a single point.
///
/// Each round lists the unrealized maps, shuffles them with the seeded
/// generator, and realizes each one still unrealized by a new point. The new
/// point's distances to the rest of the space are drawn uniformly among the
/// values that keep the map Katětov, one point at a time in index order.
/// Free placement alone never saturates (it only adds maximal distances), so
/// the random completion is what eventually realizes every type.
pub fn fraisse_grow<M: DistanceMonoid + Clone + std::fmt::Debug>(
    monoid: M,
    k: usize,
    budget: usize,
    seed: u64,
) -> Result<RMetricSpace<M>, GrowError<M>> {
    let positive = monoid
        .positive_elements()
        .ok_or(SpaceError::InfiniteCarrier)?;
    let mut rng = Lcg::new(seed);
    let mut space = RMetricSpace::new(monoid.clone(), vec!["p0".into()], vec![vec![monoid.zero()]])?;
    loop {
        let mut pending = all_unrealized(&space, k)?;
        if pending.is_empty() {
            return Ok(space);
        }
        rng.shuffle(&mut pending);
        for (i, map) in pending.iter().enumerate() {
            if (0..space.len()).any(|p| space.realizes(p, map)) {
                continue;
            }
            if space.len() >= budget {
                let unrealized = pending[i..]
                    .iter()
                    .filter(|f| !(0..space.len()).any(|p| space.realizes(p, f)))
                    .count();
                return Err(GrowError::BudgetExceeded {
                    partial: Box::new(space),
                    unrealized,
                });
            }
            let full = random_completion(&space, map, &positive, &mut rng);
            let label = format!("p{}", space.len());
            space = space.extend(&full, &label)?;
        }
    }
}

/// Extends `map` to a Katětov map on every point of the space.
fn random_completion<M: DistanceMonoid + Clone>(
    space: &RMetricSpace<M>,
    map: &KatetovMap<M::Value>,
    positive: &[M::Value],
    rng: &mut Lcg,
) -> KatetovMap<M::Value> {
    let mut domain = map.domain.clone();
    let mut values = map.values.clone();
    for x in 0..space.len() {
        if domain.contains(&x) {
            continue;
        }
        let options: Vec<&M::Value> = positive
            .iter()
            .filter(|v| space.compatible(&domain, &values, x, v))
            .collect();
        // A Katětov map always extends by one point (take the free value).
        assert!(!options.is_empty(), "Katětov map admits no one-point extension");
        let pick = options[rng.below(options.len())].clone();
        domain.push(x);
        values.push(pick);
    }
    KatetovMap::new(domain, values)
}
