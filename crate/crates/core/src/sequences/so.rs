//! Sequences built from nondecreasing chains, whose wrap tuples realize the
//! archimedean complexity.

use super::{DiagonalSpec, FiniteSequence, SequenceError};
use crate::monoid::{DistanceMonoid, Elem, FiniteDistanceMonoid};
use crate::space::{RMetricSpace, SpaceError};

/// A sequence of `m` tuples `(a^k_1, …, a^k_n)` built from a chain.
#[derive(Debug, Clone)]
pub struct SoSequence<M: DistanceMonoid> {
    pub sequence: FiniteSequence<M>,
    pub spec: DiagonalSpec<M>,
    /// `(α_2, …, α_n, β)` read off the space: `d(a^0_i, a^1_{i+1})` and
    /// the wrap distance `β = d(a^0_n, a^1_1)`.
    pub diagonal: Vec<M::Value>,
}

/// Builds the array
///
/// * `d(a^k_i, a^l_j) = α_j ⊕ … ⊕ α_i` for `k < l, i ≥ j` and for `k = l, i > j`,
/// * `d(a^k_i, a^l_j) = α_{i+1} ⊕ … ⊕ α_j` for `k < l, i < j`,
///
/// symmetrized, over `m` copies. Coordinates with `α_i = 0` are parameters
/// and collapse to one point. Points are labelled `a{k}_{i}` (`i` from 1).
pub fn build_so_sequence<M: DistanceMonoid + Clone>(
    monoid: M,
    chain: &[M::Value],
    m: usize,
) -> Result<SoSequence<M>, SequenceError> {
    if chain.is_empty() || chain.windows(2).any(|w| w[0] > w[1]) {
        return Err(SequenceError::ChainNotSorted);
    }
    if m < 2 {
        return Err(SequenceError::TooFewTuples { needed: 2, got: m });
    }
    if let Some(v) = chain.iter().find(|v| !monoid.contains(v)) {
        return Err(SpaceError::NotAnElement(monoid.label(v)).into());
    }
    let n = chain.len();
    let block = |lo: usize, hi: usize| monoid.sum(&chain[lo..=hi]);
    let pd = |p: usize, q: usize| -> M::Value {
        let ((k, i), (l, j)) = ((p / n, p % n), (q / n, q % n));
        let ((k, i), (l, j)) = if (k, i) <= (l, j) {
            ((k, i), (l, j))
        } else {
            ((l, j), (k, i))
        };
        if k == l {
            if i == j {
                monoid.zero()
            } else {
                block(i.min(j), i.max(j))
            }
        } else if i >= j {
            block(j, i)
        } else {
            block(i + 1, j)
        }
    };
    let total = m * n;
    for x in 0..total {
        for y in 0..total {
            for z in 0..total {
                if pd(x, z) > monoid.oplus(&pd(x, y), &pd(y, z)) {
                    return Err(SpaceError::TriangleViolation {
                        x: format!("a{}_{}", x / n, x % n + 1),
                        y: format!("a{}_{}", y / n, y % n + 1),
                        z: format!("a{}_{}", z / n, z % n + 1),
                    }
                    .into());
                }
            }
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut class = vec![0usize; total];
    for p in 0..total {
        match reps.iter().position(|&q| monoid.is_zero(&pd(q, p))) {
            Some(c) => class[p] = c,
            None => {
                class[p] = reps.len();
                reps.push(p);
            }
        }
    }
    let labels = reps
        .iter()
        .map(|&p| format!("a{}_{}", p / n, p % n + 1))
        .collect();
    let space = RMetricSpace::from_fn(monoid.clone(), labels, |x, y| pd(reps[x], reps[y]))?;
    let tuples: Vec<Vec<usize>> = (0..m)
        .map(|k| (0..n).map(|i| class[k * n + i]).collect())
        .collect();
    let sequence = FiniteSequence { space, tuples };
    let spec = sequence.diagonal_spec()?;
    let (t0, t1) = (&sequence.tuples[0], &sequence.tuples[1]);
    let mut diagonal: Vec<M::Value> = (0..n - 1)
        .map(|i| sequence.space.d(t0[i], t1[i + 1]).clone())
        .collect();
    diagonal.push(sequence.space.d(t0[n - 1], t1[0]).clone());
    Ok(SoSequence {
        sequence,
        spec,
        diagonal,
    })
}

/// `α_n ≤ α_1 ⊕ … ⊕ α_{n-1}`. A one-element tuple is transitive iff it is 0.
pub fn diag_transitive<M: DistanceMonoid>(monoid: &M, tuple: &[M::Value]) -> bool {
    match tuple.split_last() {
        None => true,
        Some((last, rest)) => *last <= monoid.sum(rest),
    }
}

/// A nondecreasing chain `r_1 ≤ … ≤ r_n` with
/// `r_2 ⊕ … ⊕ r_n < r_1 ⊕ … ⊕ r_n`, or `None` exactly when `arch < n`.
pub fn arch_witness(monoid: &FiniteDistanceMonoid, n: usize) -> Option<Vec<Elem>> {
    monoid.arch_witness(n)
}
