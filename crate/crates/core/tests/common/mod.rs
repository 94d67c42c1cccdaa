//! Reference implementations used as oracles by the integration tests.
//!
//! Everything here works on raw Cayley tables (`Vec<Vec<usize>>`, elements
//! `0..=n` with `n` the maximum) and raw distance matrices, and recomputes
//! each notion straight from its definition.

#![allow(dead_code)]

pub mod props;

use rand::rngs::StdRng;
use rand::Rng;
use urysohn::monoid::{Elem, FiniteDistanceMonoid};
use urysohn::space::RMetricSpace;

/// A finite distance monoid as a bare table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub t: Vec<Vec<usize>>,
}

impl Table {
    pub fn of(m: &FiniteDistanceMonoid) -> Self {
        Table { t: m.rows() }
    }

    /// Floor-truncated sums of a set of reals (scaled to integers).
    pub fn from_scaled_reals(reals: &[i64]) -> Self {
        let t = reals
            .iter()
            .map(|a| {
                reals
                    .iter()
                    .map(|b| reals.iter().rposition(|x| *x <= a + b).unwrap())
                    .collect()
            })
            .collect();
        Table { t }
    }

    pub fn top(&self) -> usize {
        self.t.len() - 1
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.t[a][b]
    }

    pub fn sum(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.add(acc, x))
    }

    pub fn times(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn elems(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.top()
    }

    /// Least `x` with `a ≤ b ⊕ x` and `b ≤ a ⊕ x`.
    pub fn abs_diff(&self, a: usize, b: usize) -> usize {
        self.elems()
            .find(|&x| a <= self.add(b, x) && b <= self.add(a, x))
            .expect("x = max works")
    }

    /// Least `x` with `a ≤ 3x`.
    pub fn one_third(&self, a: usize) -> usize {
        self.elems().find(|&x| a <= self.times(x, 3)).expect("max works")
    }

    /// Least `k ≥ 1` with `r ≤ k s`, if any.
    pub fn ceil_div(&self, r: usize, s: usize) -> Option<usize> {
        (1..=self.t.len() + 1).find(|&k| r <= self.times(s, k))
    }

    /// Largest `n` with a nondecreasing chain `r_1 ≤ … ≤ r_n` and
    /// `r_2 ⊕ … ⊕ r_n < r_1 ⊕ … ⊕ r_n`, searching lengths up to `limit`.
    pub fn brute_arch(&self, limit: usize) -> usize {
        let mut best = 0;
        for len in 1..=limit {
            if nondecreasing_chains(self.top(), len)
                .iter()
                .any(|c| self.is_arch_chain(c))
            {
                best = len;
            }
        }
        best
    }

    pub fn is_arch_chain(&self, chain: &[usize]) -> bool {
        self.sum(&chain[1..]) < self.sum(chain)
    }

    pub fn idempotents_below_top(&self) -> Vec<usize> {
        self.elems()
            .filter(|&r| self.add(r, r) == r && r != self.top())
            .collect()
    }

    pub fn is_ultrametric(&self) -> bool {
        self.elems().all(|r| self.elems().all(|s| self.add(r, s) == r.max(s)))
    }

    pub fn is_metrically_trivial(&self) -> bool {
        (1..=self.top()).all(|r| (1..=self.top()).all(|s| self.add(r, s) == self.top()))
    }

    /// First `(r, s)` with `r ≤ s` and `r ⊕ s < r ⊕ r ⊕ s`.
    pub fn nonsimple_pair(&self) -> Option<(usize, usize)> {
        for r in self.elems() {
            for s in r..=self.top() {
                if self.add(r, s) < self.add(r, self.add(r, s)) {
                    return Some((r, s));
                }
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.nonsimple_pair().is_none()
    }
}

/// All nondecreasing sequences of length `len` over `0..=top`.
pub fn nondecreasing_chains(top: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(top: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for v in start..=top {
            cur.push(v);
            rec(top, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(top, len, &mut Vec::new(), &mut out);
    out
}

/// A distance matrix over a [`Table`].
pub type Matrix = Vec<Vec<usize>>;

pub fn is_metric(t: &Table, d: &Matrix) -> bool {
    let n = d.len();
    (0..n).all(|x| {
        d[x][x] == 0
            && (0..n).all(|y| {
                d[x][y] == d[y][x]
                    && (x == y || d[x][y] > 0)
                    && (0..n).all(|z| d[x][z] <= t.add(d[x][y], d[y][z]))
            })
    })
}

/// Every metric on `n` labelled points with values in `t`.
pub fn all_spaces(t: &Table, n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let top = t.top();
    let mut vals = vec![1usize; pairs.len()];
    let mut out = Vec::new();
    if top == 0 {
        return if n <= 1 { vec![vec![vec![0; n]; n]] } else { out };
    }
    loop {
        let mut d = vec![vec![0; n]; n];
        for (&(x, y), &v) in pairs.iter().zip(&vals) {
            d[x][y] = v;
            d[y][x] = v;
        }
        if is_metric(t, &d) {
            out.push(d);
        }
        let mut pos = pairs.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            vals[pos] += 1;
            if vals[pos] <= top {
                break;
            }
            vals[pos] = 1;
        }
    }
}

/// A random metric on `n` points: each new point gets, in turn, a uniform
/// choice among the positive values consistent with what is already fixed.
pub fn random_space(t: &Table, n: usize, rng: &mut StdRng) -> Matrix {
    let mut d = vec![vec![0; n]; n];
    for p in 1..n {
        for x in 0..p {
            let options: Vec<usize> = (1..=t.top())
                .filter(|&v| {
                    (0..x).all(|u| {
                        let (du, dx) = (d[p][u], d[u][x]);
                        v <= t.add(du, dx) && du <= t.add(v, dx) && dx <= t.add(v, du)
                    })
                })
                .collect();
            let v = options[rng.gen_range(0..options.len())];
            d[p][x] = v;
            d[x][p] = v;
        }
    }
    d
}

pub fn to_space<'a>(m: &'a FiniteDistanceMonoid, d: &Matrix) -> RMetricSpace<&'a FiniteDistanceMonoid> {
    let labels = (0..d.len()).map(|i| format!("p{i}")).collect();
    RMetricSpace::from_fn(m, labels, |x, y| Elem(d[x][y] as u16)).expect("oracle metric validates")
}

pub fn to_matrix(space: &RMetricSpace<&FiniteDistanceMonoid>) -> Matrix {
    space
        .matrix()
        .iter()
        .map(|row| row.iter().map(|e| e.index()).collect())
        .collect()
}

/// Subsets of `0..n` from a bitmask.
pub fn subset(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// `d(x, S)`, the maximum for empty `S`.
pub fn dist_to_set(t: &Table, d: &Matrix, x: usize, s: &[usize]) -> usize {
    s.iter().map(|&y| d[x][y]).min().unwrap_or(t.top())
}

pub fn dmax(t: &Table, d: &Matrix, b1: usize, b2: usize, c: &[usize]) -> usize {
    c.iter()
        .map(|&x| t.add(d[b1][x], d[x][b2]))
        .min()
        .unwrap_or(t.top())
}

pub fn dmin(t: &Table, d: &Matrix, b1: usize, b2: usize, c: &[usize]) -> usize {
    let spread = c
        .iter()
        .map(|&x| t.abs_diff(d[b1][x], d[x][b2]))
        .max()
        .unwrap_or(0);
    spread.max(t.one_third(d[b1][b2]))
}

pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Forking by its characterization: independent iff every `d_max` and
/// `d_min` on pairs of `B` is the same over `AC` as over `C`.
pub fn independent(t: &Table, d: &Matrix, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let ac = union(a, c);
    b.iter().all(|&b1| {
        b.iter().all(|&b2| {
            dmax(t, d, b1, b2, &ac) == dmax(t, d, b1, b2, c)
                && dmin(t, d, b1, b2, &ac) == dmin(t, d, b1, b2, c)
        })
    })
}

pub fn rel_dist(t: &Table, d: &Matrix, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let bc = union(b, c);
    a.iter().all(|&x| dist_to_set(t, d, x, &bc) == dist_to_set(t, d, x, c))
}

pub fn rel_otimes(t: &Table, d: &Matrix, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| d[x][y] == dmax(t, d, x, y, c)))
}

pub fn rel_dmax(t: &Table, d: &Matrix, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let ac = union(a, c);
    b.iter()
        .all(|&b1| b.iter().all(|&b2| dmax(t, d, b1, b2, &ac) == dmax(t, d, b1, b2, c)))
}

pub fn simple_criterion(t: &Table, d: &Matrix, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let bc = union(b, c);
    a.iter().all(|&x| {
        t.times(dist_to_set(t, d, x, &bc), 2) == t.times(dist_to_set(t, d, x, c), 2)
    })
}

/// `U(a) = min over b ∈ BC of d(a, b) ⊕ d_min(b_*, b/C)`.
pub fn u_value(t: &Table, d: &Matrix, a: usize, b: &[usize], c: &[usize], b_star: usize) -> usize {
    union(b, c)
        .into_iter()
        .map(|x| t.add(d[a][x], dmin(t, d, b_star, x, c)))
        .min()
        .expect("BC nonempty")
}

/// A map on `domain` is Katětov iff `|f(x) ⊖ f(y)| ≤ d(x,y) ≤ f(x) ⊕ f(y)`.
pub fn is_katetov(t: &Table, d: &Matrix, domain: &[usize], values: &[usize]) -> bool {
    domain.iter().zip(values).all(|(&x, &fx)| {
        fx > 0
            && domain.iter().zip(values).all(|(&y, &fy)| {
                d[x][y] <= t.add(fx, fy) && t.abs_diff(fx, fy) <= d[x][y]
            })
    })
}
