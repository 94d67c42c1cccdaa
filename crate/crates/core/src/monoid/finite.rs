use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{DistanceMonoid, MonoidError, Rank};

/// An element of a finite distance monoid, identified by its rank in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// A validated finite distance monoid.
///
/// Invariants (checked by [`FiniteDistanceMonoid::validate`]): row and column 0
/// are the identity, the table is symmetric, associative, and nondecreasing in
/// each argument. Together these force `r ⊕ s ≥ max(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteDistanceMonoid {
    labels: Vec<String>,
    size: usize,
    table: Vec<Elem>,
}

impl FiniteDistanceMonoid {
    /// Checks every distance-monoid axiom and reports the first violation.
    pub fn validate(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(MonoidError::NotSquare { labels: n });
        }
        if n > u16::MAX as usize {
            return Err(MonoidError::NotSquare { labels: n });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) || !seen.insert(label) {
                return Err(MonoidError::BadLabels(label.clone()));
            }
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(MonoidError::IndexOutOfRange { i, j, value: v });
                }
            }
        }

        for j in 0..n {
            if table[0][j] != j {
                return Err(MonoidError::BadIdentity { j, found: table[0][j] });
            }
            if table[j][0] != j {
                return Err(MonoidError::BadIdentity { j, found: table[j][0] });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if table[i][j] != table[j][i] {
                    return Err(MonoidError::NotCommutative {
                        i,
                        j,
                        ij: table[i][j],
                        ji: table[j][i],
                    });
                }
            }
        }
        // Adjacent rows suffice: monotonicity is transitive.
        for i in 0..n.saturating_sub(1) {
            for j in 0..n {
                if table[i][j] > table[i + 1][j] {
                    return Err(MonoidError::NotMonotone {
                        i,
                        i_prime: i + 1,
                        j,
                        lhs: table[i][j],
                        rhs: table[i + 1][j],
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i][j];
                for k in 0..n {
                    let lhs = table[ij][k];
                    let rhs = table[i][table[j][k]];
                    if lhs != rhs {
                        return Err(MonoidError::NotAssociative { i, j, k, lhs, rhs });
                    }
                }
            }
        }

        let flat = table
            .iter()
            .flat_map(|row| row.iter().map(|&v| Elem(v as u16)))
            .collect();
        Ok(FiniteDistanceMonoid {
            labels,
            size: n,
            table: flat,
        })
    }

    /// Builds a monoid from a table with default labels `0, r1, r2, …`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let labels = default_labels(table.len());
        Self::validate(labels, table)
    }

    pub fn trivial() -> Self {
        Self::make_maxchain(0)
    }

    /// `R_n = ({0, …, n}, +_n)`: addition truncated at `n`.
    pub fn make_rn(n: usize) -> Self {
        let table = (0..=n)
            .map(|i| (0..=n).map(|j| (i + j).min(n)).collect())
            .collect();
        let labels = (0..=n).map(|i| i.to_string()).collect();
        Self::validate(labels, table).expect("truncated addition is a distance monoid")
    }

    /// `({0, …, k}, max)`: the ultrametric chain with `k` positive elements.
    pub fn make_maxchain(k: usize) -> Self {
        let table = (0..=k)
            .map(|i| (0..=k).map(|j| i.max(j)).collect())
            .collect();
        let labels = (0..=k).map(|i| i.to_string()).collect();
        Self::validate(labels, table).expect("max is a distance monoid")
    }

    /// `(S, +_S)` with `r +_S s = sup{x ∈ S : x ≤ r + s}`.
    ///
    /// Associativity is not automatic; a failing set is reported as
    /// [`MonoidError::NotAssociative`].
    pub fn make_from_reals(reals: &[Rational64]) -> Result<Self, MonoidError> {
        if reals.first() != Some(&Rational64::from_integer(0))
            || reals.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(MonoidError::BadReals);
        }
        let n = reals.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sum = reals[i] + reals[j];
                        reals.iter().rposition(|x| *x <= sum).expect("0 <= sum")
                    })
                    .collect()
            })
            .collect();
        let labels = reals.iter().map(|r| r.to_string()).collect();
        Self::validate(labels, table)
    }

    /// Number of elements, including 0.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of positive elements, `|R^{>0}|`.
    pub fn nonzero_count(&self) -> usize {
        self.size - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elems(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        (0..self.size as u16).map(Elem)
    }

    pub fn positive(&self) -> impl DoubleEndedIterator<Item = Elem> + Clone {
        (1..self.size as u16).map(Elem)
    }

    pub fn max_elem(&self) -> Elem {
        Elem((self.size - 1) as u16)
    }

    pub fn elem_label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn elem_by_label(&self, label: &str) -> Option<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Elem(i as u16))
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.index() * self.size + b.index()]
    }

    /// The full table as element indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.table[i * self.size + j].index())
                    .collect()
            })
            .collect()
    }

    /// Same table with fresh labels (for isomorphism checks, equality of
    /// tables is isomorphism).
    pub fn same_table(&self, other: &FiniteDistanceMonoid) -> bool {
        self.size == other.size && self.table == other.table
    }

    pub fn nfold_elem(&self, a: Elem, k: u64) -> Elem {
        DistanceMonoid::nfold(self, &a, k)
    }

    /// Ascending scan for the least `x` with `a ≤ b ⊕ x` and `b ≤ a ⊕ x`.
    pub fn abs_diff_elem(&self, a: Elem, b: Elem) -> Elem {
        self.elems()
            .find(|&x| a <= self.op(b, x) && b <= self.op(a, x))
            .unwrap_or_else(|| self.max_elem())
    }

    pub fn one_third_elem(&self, a: Elem) -> Elem {
        self.elems()
            .find(|&x| a <= self.nfold_elem(x, 3))
            .unwrap_or_else(|| self.max_elem())
    }

    pub fn ceil_div_elem(&self, r: Elem, s: Elem) -> Rank {
        let mut acc = s;
        let mut k = 1u64;
        loop {
            if r <= acc {
                return Rank::Finite(k);
            }
            let next = self.op(acc, s);
            if next == acc {
                return Rank::Omega;
            }
            acc = next;
            k += 1;
        }
    }

    /// `x ⪯ t`: some positive multiple of `t` reaches `x`.
    pub fn precedes(&self, x: Elem, t: Elem) -> bool {
        self.ceil_div_elem(x, t).is_finite()
    }

    pub fn archimedean_equiv(&self, x: Elem, t: Elem) -> bool {
        self.precedes(x, t) && self.precedes(t, x)
    }

    /// The archimedean class `[t] = {x : x ⪯ t and t ⪯ x}`.
    pub fn arch_class(&self, t: Elem) -> Vec<Elem> {
        self.elems()
            .filter(|&x| self.archimedean_equiv(x, t))
            .collect()
    }

    /// `arch_R(t) = sup{⌈r/s⌉ : r, s ∈ [t]}`; `1` for `t = 0`.
    pub fn arch_local(&self, t: Elem) -> Rank {
        let class = self.arch_class(t);
        let mut best = Rank::Finite(1);
        for &r in &class {
            for &s in &class {
                best = best.max(self.ceil_div_elem(r, s));
            }
        }
        best
    }

    /// Archimedean complexity: least `n` such that
    /// `r_0 ⊕ r_1 ⊕ … ⊕ r_n = r_1 ⊕ … ⊕ r_n` for every chain `r_0 ≤ … ≤ r_n`.
    ///
    /// Works on the reachable set of `(least term, sum)` pairs for chains of
    /// length `n`. By monotonicity the condition fails iff some state has
    /// `least ⊕ sum > sum`. If the state set ever repeats without the
    /// condition holding, the answer is `ω`.
    pub fn arch(&self) -> Rank {
        if self.is_trivial() {
            return Rank::Finite(0);
        }
        let n = self.size;
        let mut states = vec![false; n * n];
        for r in 0..n {
            states[r * n + r] = true;
        }
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut len = 1u64;
        loop {
            let fails = (0..n).any(|m| {
                (0..n).any(|s| {
                    states[m * n + s] && self.op(Elem(m as u16), Elem(s as u16)).index() > s
                })
            });
            if !fails {
                return Rank::Finite(len);
            }
            if !seen.insert(states.clone()) {
                return Rank::Omega;
            }
            let mut next = vec![false; n * n];
            for m in 0..n {
                for s in 0..n {
                    if !states[m * n + s] {
                        continue;
                    }
                    for r in 0..=m {
                        let sum = self.op(Elem(r as u16), Elem(s as u16)).index();
                        next[r * n + sum] = true;
                    }
                }
            }
            states = next;
            len += 1;
        }
    }

    /// Lexicographically first nondecreasing chain `r_1 ≤ … ≤ r_n` with
    /// `r_2 ⊕ … ⊕ r_n < r_1 ⊕ … ⊕ r_n`; none exactly when `arch < n`.
    pub fn arch_witness(&self, n: usize) -> Option<Vec<Elem>> {
        if n == 0 || self.arch() < Rank::Finite(n as u64) {
            return None;
        }
        let mut chain = Vec::with_capacity(n);
        self.arch_witness_dfs(n, &mut chain).then_some(chain)
    }

    fn arch_witness_dfs(&self, n: usize, chain: &mut Vec<Elem>) -> bool {
        if chain.len() == n {
            let tail = chain[1..].iter().fold(Elem::ZERO, |acc, &r| self.op(acc, r));
            return tail < self.op(chain[0], tail);
        }
        let start = chain.last().copied().unwrap_or(Elem::ZERO);
        for r in self.elems().filter(|&r| r >= start) {
            chain.push(r);
            if self.arch_witness_dfs(n, chain) {
                return true;
            }
            chain.pop();
        }
        false
    }

    /// First positive pair with `r ⊕ s < sup R`. None means metrically trivial.
    pub fn metric_triviality_witness(&self) -> Option<(Elem, Elem)> {
        let top = self.max_elem();
        self.positive()
            .flat_map(|r| self.positive().filter(move |&s| s >= r).map(move |s| (r, s)))
            .find(|&(r, s)| self.op(r, s) != top)
    }

    /// Idempotents `{r : r ⊕ r = r}`.
    pub fn eq_set(&self) -> Vec<Elem> {
        self.elems().filter(|&r| self.op(r, r) == r).collect()
    }

    /// Idempotents other than `sup R`.
    pub fn eq_lt_set(&self) -> Vec<Elem> {
        let top = self.max_elem();
        self.eq_set().into_iter().filter(|&r| r != top).collect()
    }

    /// First `r` with `r < r ⊕ r`, if any. None means ultrametric.
    pub fn non_ultrametric_witness(&self) -> Option<Elem> {
        self.elems().find(|&r| self.op(r, r) != r)
    }

    pub fn is_ultrametric(&self) -> bool {
        self.elems()
            .all(|r| self.elems().all(|s| self.op(r, s) == r.max(s)))
    }

    /// `r ⊕ s = sup R` for all positive `r, s`.
    pub fn is_metrically_trivial(&self) -> bool {
        let top = self.max_elem();
        self.positive()
            .all(|r| self.positive().all(|s| self.op(r, s) == top))
    }

    /// Every positive `s` is below some multiple of every positive `r`.
    pub fn is_archimedean(&self) -> bool {
        self.positive()
            .all(|r| self.positive().all(|s| self.precedes(s, r)))
    }

    /// First pair `r ≤ s` with `r ⊕ s < r ⊕ r ⊕ s`. None means the simplicity
    /// criterion holds.
    pub fn simplicity_witness(&self) -> Option<(Elem, Elem)> {
        for r in self.elems() {
            for s in self.elems().filter(|&s| s >= r) {
                let rs = self.op(r, s);
                if rs != self.op(r, rs) {
                    return Some((r, s));
                }
            }
        }
        None
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "0".to_string() } else { format!("r{i}") })
        .collect()
}

impl DistanceMonoid for FiniteDistanceMonoid {
    type Value = Elem;

    fn zero(&self) -> Elem {
        Elem::ZERO
    }

    fn top(&self) -> Elem {
        self.max_elem()
    }

    fn oplus(&self, a: &Elem, b: &Elem) -> Elem {
        self.op(*a, *b)
    }

    fn abs_diff(&self, a: &Elem, b: &Elem) -> Elem {
        self.abs_diff_elem(*a, *b)
    }

    fn one_third(&self, a: &Elem) -> Elem {
        self.one_third_elem(*a)
    }

    fn ceil_div(&self, r: &Elem, s: &Elem) -> Rank {
        self.ceil_div_elem(*r, *s)
    }

    fn elements(&self) -> Option<Vec<Elem>> {
        Some(self.elems().collect())
    }

    fn contains(&self, v: &Elem) -> bool {
        v.index() < self.size
    }

    fn label(&self, v: &Elem) -> String {
        self.elem_label(*v).to_string()
    }

    fn parse_value(&self, s: &str) -> Option<Elem> {
        self.elem_by_label(s)
    }
}
