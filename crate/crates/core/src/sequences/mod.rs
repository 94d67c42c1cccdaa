//! Cyclicity of indiscernible sequences, explicit sequence constructions, and
//! the witness configurations for order, non-simplicity, and TP2.
//!
//! An indiscernible sequence of tuples is abstracted by its ε-matrix
//! `ε[i][j] = d(a^0_i, a^1_j)`. A sequence is `n`-cyclic iff
//! `ε[i_n][i_1] ≤ ε[i_1][i_2] ⊕ … ⊕ ε[i_{n-1}][i_n]` for every index chain,
//! which is decided with min-⊕ matrix powers.

mod so;
pub mod text;
mod witness;

pub use so::{arch_witness, build_so_sequence, diag_transitive, SoSequence};
pub use witness::{
    witness_nonsimple, witness_order_property, witness_tp2, NonsimpleVariant, OrderWitness,
    Tp2Report, Tp2Witness,
};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::monoid::DistanceMonoid;
use crate::space::{RMetricSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("chain must be nonempty and nondecreasing")]
    ChainNotSorted,
    #[error("need at least {needed} tuples, got {got}")]
    TooFewTuples { needed: usize, got: usize },
    #[error("r ⊕ r ⊕ s = r ⊕ s for r = {r}, s = {s} (or r > s): no witness exists")]
    SimplicityHolds { r: String, s: String },
    #[error("witness distances must be positive")]
    NonPositive,
    #[error("tuples do not follow one indiscernible pattern: {0}")]
    NotIndiscerniblePattern(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// The ε-matrix of an indiscernible sequence, with optional within-tuple
/// distances and non-parameter coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpec<M: DistanceMonoid> {
    pub monoid: M,
    pub eps: Vec<Vec<M::Value>>,
    pub within: Option<Vec<Vec<M::Value>>>,
    pub np: Option<Vec<usize>>,
}

impl<M: DistanceMonoid> DiagonalSpec<M> {
    pub fn new(monoid: M, eps: Vec<Vec<M::Value>>) -> Self {
        assert!(
            eps.iter().all(|row| row.len() == eps.len()),
            "ε must be square"
        );
        DiagonalSpec {
            monoid,
            eps,
            within: None,
            np: None,
        }
    }

    /// Tuple length `ℓ`.
    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }
}

/// Result of a cyclicity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Cyclicity<V> {
    Cyclic,
    /// Chain `i_1, …, i_n` (0-based coordinates) with
    /// `ε[i_n][i_1] > ε[i_1][i_2] ⊕ … ⊕ ε[i_{n-1}][i_n]`.
    Violation {
        chain: Vec<usize>,
        wrap: V,
        path_sum: V,
    },
}

impl<V> Cyclicity<V> {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, Cyclicity::Cyclic)
    }
}

/// Decides `n`-cyclicity.
///
/// For `n = 1` this is the constant-sequence test `ε[i][i] = 0`. For `n ≥ 2`
/// it computes `P = ε^(n-1)` in the min-⊕ semiring, keeping back-pointers,
/// and checks `ε[j][i] ≤ P[i][j]`. Monotonicity of ⊕ makes the minimum over
/// chains the only chain that matters.
pub fn cyclic_check<M: DistanceMonoid>(spec: &DiagonalSpec<M>, n: usize) -> Cyclicity<M::Value> {
    assert!(n >= 1, "cyclicity is defined for n >= 1");
    let m = &spec.monoid;
    let eps = &spec.eps;
    let l = spec.len();
    if n == 1 {
        return match (0..l).find(|&i| !m.is_zero(&eps[i][i])) {
            None => Cyclicity::Cyclic,
            Some(i) => Cyclicity::Violation {
                chain: vec![i],
                wrap: eps[i][i].clone(),
                path_sum: m.zero(),
            },
        };
    }
    // layers[k][i][j] = (min over chains i → j with k + 1 steps, last hop source).
    type Layer<V> = Vec<Vec<(V, usize)>>;
    let mut layers: Vec<Layer<M::Value>> = Vec::with_capacity(n - 1);
    layers.push(
        (0..l)
            .map(|i| (0..l).map(|j| (eps[i][j].clone(), i)).collect())
            .collect(),
    );
    for _ in 1..(n - 1) {
        let prev = layers.last().expect("first layer pushed");
        let next: Layer<M::Value> = (0..l)
            .into_par_iter()
            .map(|i| {
                (0..l)
                    .map(|j| {
                        (0..l)
                            .map(|t| (m.oplus(&prev[i][t].0, &eps[t][j]), t))
                            .min()
                            .expect("nonempty tuple")
                    })
                    .collect()
            })
            .collect();
        layers.push(next);
    }
    let last = layers.last().expect("at least one layer");
    for i in 0..l {
        for j in 0..l {
            if eps[j][i] > last[i][j].0 {
                let mut chain = vec![j];
                let mut cur = j;
                for layer in layers.iter().rev() {
                    cur = layer[i][cur].1;
                    chain.push(cur);
                }
                chain.reverse();
                debug_assert_eq!(chain[0], i);
                return Cyclicity::Violation {
                    chain,
                    wrap: eps[j][i].clone(),
                    path_sum: last[i][j].0.clone(),
                };
            }
        }
    }
    Cyclicity::Cyclic
}

/// Reference implementation: enumerates every chain of length `n`.
pub fn cyclic_check_exhaustive<M: DistanceMonoid>(
    spec: &DiagonalSpec<M>,
    n: usize,
) -> Option<Vec<usize>> {
    let m = &spec.monoid;
    let l = spec.len();
    if l == 0 {
        return None;
    }
    let mut chain = vec![0usize; n];
    loop {
        let sum = chain
            .windows(2)
            .fold(m.zero(), |acc, w| m.oplus(&acc, &spec.eps[w[0]][w[1]]));
        if spec.eps[chain[n - 1]][chain[0]] > sum {
            return Some(chain);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            chain[pos] += 1;
            if chain[pos] < l {
                break;
            }
            chain[pos] = 0;
        }
    }
}

/// Coordinates where two tuples differ.
pub fn np_indices(t0: &[usize], t1: &[usize]) -> Vec<usize> {
    assert_eq!(t0.len(), t1.len(), "tuples must have equal length");
    (0..t0.len()).filter(|&i| t0[i] != t1[i]).collect()
}

/// A finite sequence of tuples of points in a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSequence<M: DistanceMonoid> {
    pub space: RMetricSpace<M>,
    pub tuples: Vec<Vec<usize>>,
}

impl<M: DistanceMonoid + Clone> FiniteSequence<M> {
    /// Checks that every pair of tuples (in order) has the same distances,
    /// and every tuple the same internal distances.
    pub fn check_pattern(&self) -> Result<(), SequenceError> {
        if self.tuples.len() < 2 {
            return Err(SequenceError::TooFewTuples {
                needed: 2,
                got: self.tuples.len(),
            });
        }
        let l = self.tuples[0].len();
        if self.tuples.iter().any(|t| t.len() != l) {
            return Err(SequenceError::NotIndiscerniblePattern(
                "tuples have different lengths".into(),
            ));
        }
        let d = |p: usize, q: usize| self.space.d(p, q);
        let (t0, t1) = (&self.tuples[0], &self.tuples[1]);
        for (k, tk) in self.tuples.iter().enumerate() {
            for i in 0..l {
                for j in 0..l {
                    if d(tk[i], tk[j]) != d(t0[i], t0[j]) {
                        return Err(SequenceError::NotIndiscerniblePattern(format!(
                            "tuple {k} differs internally at ({i},{j})"
                        )));
                    }
                    for (k2, tl) in self.tuples.iter().enumerate().skip(k + 1) {
                        if d(tk[i], tl[j]) != d(t0[i], t1[j]) {
                            return Err(SequenceError::NotIndiscerniblePattern(format!(
                                "tuples {k} < {k2} differ at ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The ε-matrix, internal distances and NP set read off the first two tuples.
    pub fn diagonal_spec(&self) -> Result<DiagonalSpec<M>, SequenceError> {
        if self.tuples.len() < 2 {
            return Err(SequenceError::TooFewTuples {
                needed: 2,
                got: self.tuples.len(),
            });
        }
        let (t0, t1) = (&self.tuples[0], &self.tuples[1]);
        let grid = |a: &[usize], b: &[usize]| -> Vec<Vec<M::Value>> {
            a.iter()
                .map(|&p| b.iter().map(|&q| self.space.d(p, q).clone()).collect())
                .collect()
        };
        Ok(DiagonalSpec {
            monoid: self.space.monoid().clone(),
            eps: grid(t0, t1),
            within: Some(grid(t0, t0)),
            np: Some(np_indices(t0, t1)),
        })
    }
}

/// Outcome of the NP-bound check: the number of non-parameter coordinates
/// and whether the sequence is `(n + 1)`-cyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NpBoundReport {
    pub np_count: usize,
    pub cyclic: bool,
}

/// Checks that a sequence with `n` non-parameter coordinates is
/// `(n + 1)`-cyclic.
pub fn check_np_bound<M: DistanceMonoid + Clone>(
    seq: &FiniteSequence<M>,
) -> Result<NpBoundReport, SequenceError> {
    seq.check_pattern()?;
    let spec = seq.diagonal_spec()?;
    let n = spec.np.as_ref().map_or(0, Vec::len);
    Ok(NpBoundReport {
        np_count: n,
        cyclic: cyclic_check(&spec, n + 1).is_cyclic(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Elem, FiniteDistanceMonoid};

    fn spec<'a>(m: &'a FiniteDistanceMonoid, rows: &[&[u16]]) -> DiagonalSpec<&'a FiniteDistanceMonoid> {
        DiagonalSpec::new(
            m,
            rows.iter()
                .map(|r| r.iter().map(|&v| Elem(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn idempotent_singletons_are_cyclic() {
        let m = FiniteDistanceMonoid::make_maxchain(2);
        let s = spec(&m, &[&[1]]);
        for n in 2..6 {
            assert!(cyclic_check(&s, n).is_cyclic());
        }
        assert!(!cyclic_check(&s, 1).is_cyclic());
    }

    #[test]
    fn top_everywhere_is_cyclic() {
        let m = FiniteDistanceMonoid::make_rn(3);
        let s = spec(&m, &[&[3, 3], &[3, 3]]);
        for n in 2..6 {
            assert!(cyclic_check(&s, n).is_cyclic());
        }
    }

    #[test]
    fn dp_reports_valid_chains() {
        let m = FiniteDistanceMonoid::make_rn(3);
        // Rotating pattern: ε[i][i+1] = 1, wrap 3.
        let s = spec(&m, &[&[1, 1, 2], &[2, 1, 1], &[3, 2, 1]]);
        match cyclic_check(&s, 3) {
            Cyclicity::Violation { chain, wrap, path_sum } => {
                assert_eq!(chain.len(), 3);
                assert!(wrap > path_sum);
                let sum = m.op(s.eps[chain[0]][chain[1]], s.eps[chain[1]][chain[2]]);
                assert_eq!(sum, path_sum);
                assert_eq!(s.eps[chain[2]][chain[0]], wrap);
            }
            Cyclicity::Cyclic => panic!("expected a violation"),
        }
        assert!(cyclic_check_exhaustive(&s, 3).is_some());
        assert!(cyclic_check(&s, 4).is_cyclic());
        assert!(cyclic_check_exhaustive(&s, 4).is_none());
    }

    #[test]
    fn np_examples() {
        assert!(np_indices(&[1, 2, 3], &[1, 2, 3]).is_empty());
        assert_eq!(np_indices(&[1, 2, 3], &[1, 5, 3]), vec![1]);
        assert_eq!(np_indices(&[0, 1, 2, 3], &[4, 5, 6, 7]), vec![0, 1, 2, 3]);
    }
}
