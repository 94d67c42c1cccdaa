//! Exhaustive enumeration of finite distance monoids and checks of the
//! enumerative theorems over them.
//!
//! A finite distance monoid on `{0 < 1 < … < n}` is rigid as an ordered
//! structure, so its Cayley table is already a canonical form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::classify_finite;
use crate::monoid::{Elem, FiniteDistanceMonoid, Rank};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("theorem violated: {0}")]
    TheoremViolated(String),
}

/// Partial table over `{0..=n}` with cells `(i, j)`, `1 ≤ i ≤ j ≤ n`, filled
/// in row-major order.
struct Search {
    n: usize,
    table: Vec<Vec<usize>>,
    cells: Vec<(usize, usize)>,
}

const UNSET: usize = usize::MAX;

impl Search {
    fn new(n: usize) -> Self {
        let mut table = vec![vec![UNSET; n + 1]; n + 1];
        for x in 0..=n {
            table[0][x] = x;
            table[x][0] = x;
        }
        let cells = (1..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .collect();
        Search { n, table, cells }
    }

    fn set(&mut self, (i, j): (usize, usize), v: usize) {
        self.table[i][j] = v;
        self.table[j][i] = v;
    }

    fn bounds(&self, (i, j): (usize, usize)) -> std::ops::RangeInclusive<usize> {
        let mut lo = j;
        if j > i {
            lo = lo.max(self.table[i][j - 1]);
        }
        if i > 1 {
            lo = lo.max(self.table[i - 1][j]);
        }
        lo..=self.n
    }

    /// Associativity on every triple whose products are already known.
    fn associative_so_far(&self) -> bool {
        let t = &self.table;
        let n = self.n;
        for a in 1..=n {
            for b in 1..=n {
                let ab = t[a][b];
                if ab == UNSET {
                    continue;
                }
                for c in 1..=n {
                    let bc = t[b][c];
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (t[ab][c], t[a][bc]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == self.cells.len() {
            out.push(self.table.clone());
            return;
        }
        let cell = self.cells[k];
        for v in self.bounds(cell) {
            self.set(cell, v);
            if self.associative_so_far() {
                self.run(k + 1, out);
            }
        }
        self.set(cell, UNSET);
    }
}

/// Every distance monoid with `n` nonzero elements, in lexicographic order of
/// the row-major Cayley table.
///
/// Backtracks over the upper triangle with the bounds
/// `i ⊕ j ≥ max(i ⊕ (j-1), (i-1) ⊕ j, j)` and prunes on associativity of
/// the filled part. Subtrees are split on the value of `1 ⊕ 1`.
pub fn enumerate_monoids(n: usize) -> Vec<FiniteDistanceMonoid> {
    if n == 0 {
        return vec![FiniteDistanceMonoid::trivial()];
    }
    let tables: Vec<Vec<Vec<usize>>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut s = Search::new(n);
            let mut out = Vec::new();
            s.set((1, 1), first);
            if s.associative_so_far() {
                s.run(1, &mut out);
            }
            out
        })
        .flatten()
        .collect();
    tables
        .into_iter()
        .map(|t| FiniteDistanceMonoid::from_table(t).expect("enumerated table validates"))
        .collect()
}

/// Tries every upper-triangle assignment with entries in `max(i,j)..=n` and
/// keeps those that validate. Exponential; only for small `n`.
pub fn enumerate_naive(n: usize) -> Vec<FiniteDistanceMonoid> {
    if n == 0 {
        return vec![FiniteDistanceMonoid::trivial()];
    }
    let cells: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .collect();
    let mut vals: Vec<usize> = cells.iter().map(|&(_, j)| j).collect();
    let mut out = Vec::new();
    loop {
        let mut table: Vec<Vec<usize>> = (0..=n)
            .map(|i| (0..=n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect())
            .collect();
        for (&(i, j), &v) in cells.iter().zip(&vals) {
            table[i][j] = v;
            table[j][i] = v;
        }
        if let Ok(m) = FiniteDistanceMonoid::from_table(table) {
            out.push(m);
        }
        let mut pos = cells.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            vals[pos] += 1;
            if vals[pos] <= n {
                break;
            }
            vals[pos] = cells[pos].1;
        }
    }
}

/// One enumerated monoid with its main invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub table: Vec<Vec<usize>>,
    pub arch: Rank,
    pub eq_lt_size: usize,
    pub stable: bool,
    pub simple: bool,
    pub su_rank: Option<u64>,
    pub wei: bool,
    pub metrically_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub total: usize,
    pub by_arch: BTreeMap<String, usize>,
    /// `stable`, `simple_unstable`, or `not_simple`.
    pub by_class: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    pub summary: CensusSummary,
}

pub fn census_row(m: &FiniteDistanceMonoid) -> CensusRow {
    let p = classify_finite(m);
    CensusRow {
        table: m.rows(),
        arch: p.arch,
        eq_lt_size: p.eq_lt.len(),
        stable: p.stable,
        simple: p.simple,
        su_rank: p.su_rank,
        wei: p.wei,
        metrically_trivial: p.metrically_trivial,
    }
}

pub fn census(n: usize) -> Census {
    let rows: Vec<CensusRow> = enumerate_monoids(n).par_iter().map(census_row).collect();
    let mut by_arch = BTreeMap::new();
    let mut by_class = BTreeMap::new();
    for row in &rows {
        *by_arch.entry(row.arch.to_string()).or_insert(0) += 1;
        let class = match (row.stable, row.simple) {
            (true, _) => "stable",
            (false, true) => "simple_unstable",
            (false, false) => "not_simple",
        };
        *by_class.entry(class.to_string()).or_insert(0) += 1;
    }
    Census {
        n,
        summary: CensusSummary {
            total: rows.len(),
            by_arch,
            by_class,
        },
        rows,
    }
}

impl Census {
    /// One line per monoid; the table is written row by row, rows joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,arch,eq_lt_size,stable,simple,su_rank,wei,metrically_trivial\n");
        for r in &self.rows {
            let table: Vec<String> = r
                .table
                .iter()
                .map(|row| row.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                table.join(";"),
                r.arch,
                r.eq_lt_size,
                r.stable,
                r.simple,
                r.su_rank.map_or(String::new(), |x| x.to_string()),
                r.wei,
                r.metrically_trivial
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueReport {
    pub n: usize,
    pub total: usize,
    pub arch_one: usize,
    pub arch_n: usize,
}

/// Among monoids with `n ≥ 1` nonzero elements, `arch = 1` only for the max
/// chain and `arch = n` only for `R_n`.
pub fn verify_unique(
    n: usize,
    monoids: &[FiniteDistanceMonoid],
) -> Result<UniqueReport, EnumerationError> {
    let with_arch = |a: u64| -> Vec<&FiniteDistanceMonoid> {
        monoids.iter().filter(|m| m.arch() == Rank::Finite(a)).collect()
    };
    let check = |a: u64, expected: FiniteDistanceMonoid, name: &str| {
        let found = with_arch(a);
        if found.len() != 1 || !found[0].same_table(&expected) {
            return Err(EnumerationError::TheoremViolated(format!(
                "expected exactly {name} with arch {a}, found {} tables",
                found.len()
            )));
        }
        Ok(())
    };
    if n >= 1 {
        check(1, FiniteDistanceMonoid::make_maxchain(n), "the max chain")?;
        check(n as u64, FiniteDistanceMonoid::make_rn(n), "R_n")?;
    }
    Ok(UniqueReport {
        n,
        total: monoids.len(),
        arch_one: with_arch(1).len(),
        arch_n: with_arch(n as u64).len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSizeReport {
    pub checked: usize,
}

/// Some archimedean class has at least `arch` elements.
pub fn verify_classsize(monoids: &[FiniteDistanceMonoid]) -> Result<ClassSizeReport, EnumerationError> {
    for m in monoids {
        let largest = m.positive().map(|t| m.arch_class(t).len()).max().unwrap_or(0);
        let ok = match m.arch() {
            Rank::Finite(a) => largest as u64 >= a,
            Rank::Omega => false,
        };
        if !ok {
            return Err(EnumerationError::TheoremViolated(format!(
                "arch {} exceeds the largest archimedean class ({largest}) in {:?}",
                m.arch(),
                m.rows()
            )));
        }
    }
    Ok(ClassSizeReport {
        checked: monoids.len(),
    })
}

/// The largest archimedean class.
pub fn largest_class(m: &FiniteDistanceMonoid) -> Vec<Elem> {
    m.positive()
        .map(|t| m.arch_class(t))
        .max_by_key(Vec::len)
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_monoids(0).len(), 1);
        assert_eq!(enumerate_monoids(1).len(), 1);
        let two = enumerate_monoids(2);
        assert_eq!(two.len(), 2);
        assert!(two[0].same_table(&FiniteDistanceMonoid::make_maxchain(2)));
        assert!(two[1].same_table(&FiniteDistanceMonoid::make_rn(2)));
    }

    #[test]
    fn matches_naive_up_to_three() {
        for n in 0..=3 {
            let fast: Vec<_> = enumerate_monoids(n).iter().map(|m| m.rows()).collect();
            let slow: Vec<_> = enumerate_naive(n).iter().map(|m| m.rows()).collect();
            assert_eq!(fast, slow, "n = {n}");
        }
    }

    #[test]
    fn census_two() {
        let c = census(2);
        assert_eq!(c.summary.by_arch.get("1"), Some(&1));
        assert_eq!(c.summary.by_arch.get("2"), Some(&1));
        let one = census(1);
        assert_eq!(one.rows.len(), 1);
        assert!(one.rows[0].stable);
        assert_eq!(one.rows[0].arch, Rank::Finite(1));
    }

    #[test]
    fn theorems_small() {
        for n in 1..=3 {
            let ms = enumerate_monoids(n);
            verify_unique(n, &ms).unwrap();
            verify_classsize(&ms).unwrap();
        }
    }
}
