//! Finite configurations witnessing the order property, failure of
//! simplicity, and TP2.

use serde::{Deserialize, Serialize};

use super::SequenceError;
use crate::monoid::DistanceMonoid;
use crate::space::{KatetovMap, RMetricSpace};

/// `2m` points `a{l}_1, a{l}_2` with `d(a^m_1, a^l_2) = r ⊕ r` for `l < m`
/// and every other nonzero distance `r`.
#[derive(Debug, Clone)]
pub struct OrderWitness<M: DistanceMonoid> {
    pub space: RMetricSpace<M>,
    /// `(a^l_1, a^l_2)` point indices for each `l`.
    pub pairs: Vec<(usize, usize)>,
    /// `d(a^l_1, a^m_2) ≤ r ⇔ l ≤ m` for all `l, m`; holds iff `r < r ⊕ r`.
    pub has_order_property: bool,
}

pub fn witness_order_property<M: DistanceMonoid + Clone>(
    monoid: M,
    r: &M::Value,
    len: usize,
) -> Result<OrderWitness<M>, SequenceError> {
    if monoid.is_zero(r) {
        return Err(SequenceError::NonPositive);
    }
    let rr = monoid.oplus(r, r);
    let labels = (0..len)
        .flat_map(|l| [format!("a{l}_1"), format!("a{l}_2")])
        .collect();
    let space = RMetricSpace::from_fn(monoid.clone(), labels, |x, y| {
        if x == y {
            return monoid.zero();
        }
        let ((l, i), (m, j)) = ((x / 2, x % 2), (y / 2, y % 2));
        // Orient as d(a^p_1, a^q_2).
        let (p, q) = match (i, j) {
            (0, 1) => (l, m),
            (1, 0) => (m, l),
            _ => return r.clone(),
        };
        if q < p {
            rr.clone()
        } else {
            r.clone()
        }
    })?;
    let pairs: Vec<(usize, usize)> = (0..len).map(|l| (2 * l, 2 * l + 1)).collect();
    let has_order_property = pairs.iter().enumerate().all(|(l, &(a1, _))| {
        pairs
            .iter()
            .enumerate()
            .all(|(m, &(_, a2))| (*space.d(a1, a2) <= *r) == (l <= m))
    });
    Ok(OrderWitness {
        space,
        pairs,
        has_order_property,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonsimpleVariant {
    /// `{a, b1, b2, c}`: `a` forks with `b1 b2` over `c` but not conversely.
    FourPoint,
    /// `{a, b1, b2, c1, c2}`: `dmax`-independent yet forking.
    FivePoint,
}

fn nonsimple_pre<M: DistanceMonoid>(
    monoid: &M,
    r: &M::Value,
    s: &M::Value,
) -> Result<(), SequenceError> {
    if monoid.is_zero(r) || monoid.is_zero(s) {
        return Err(SequenceError::NonPositive);
    }
    let rs = monoid.oplus(r, s);
    if r > s || rs >= monoid.oplus(r, &rs) {
        return Err(SequenceError::SimplicityHolds {
            r: monoid.label(r),
            s: monoid.label(s),
        });
    }
    Ok(())
}

/// The configurations showing that `r ⊕ s < 2r ⊕ s` breaks simplicity.
///
/// Four points: `ab1 = ac = r`, `ab2 = b2c = s`, `b1c = 2r`, `b1b2 = r ⊕ s`.
/// Five points: `ab1 = b1c1 = b1c2 = r`, `b2c1 = b2c2 = s`,
/// `ac1 = ac2 = c1c2 = 2r`, `b1b2 = r ⊕ s`, `ab2 = 2r ⊕ s`.
pub fn witness_nonsimple<M: DistanceMonoid + Clone>(
    monoid: M,
    r: &M::Value,
    s: &M::Value,
    variant: NonsimpleVariant,
) -> Result<RMetricSpace<M>, SequenceError> {
    nonsimple_pre(&monoid, r, s)?;
    let r2 = monoid.oplus(r, r);
    let rs = monoid.oplus(r, s);
    let r2s = monoid.oplus(&r2, s);
    type Edges<'a, V> = Vec<(&'a str, &'a str, V)>;
    let (labels, pairs): (&[&str], Edges<M::Value>) = match variant {
        NonsimpleVariant::FourPoint => (
            &["a", "b1", "b2", "c"],
            vec![
                ("a", "b1", r.clone()),
                ("a", "c", r.clone()),
                ("a", "b2", s.clone()),
                ("b2", "c", s.clone()),
                ("b1", "c", r2),
                ("b1", "b2", rs),
            ],
        ),
        NonsimpleVariant::FivePoint => (
            &["a", "b1", "b2", "c1", "c2"],
            vec![
                ("a", "b1", r.clone()),
                ("b1", "c1", r.clone()),
                ("b1", "c2", r.clone()),
                ("b2", "c1", s.clone()),
                ("b2", "c2", s.clone()),
                ("a", "c1", r2.clone()),
                ("a", "c2", r2.clone()),
                ("c1", "c2", r2),
                ("b1", "b2", rs),
                ("a", "b2", r2s),
            ],
        ),
    };
    let idx = |l: &str| labels.iter().position(|&x| x == l).expect("known label");
    let n = labels.len();
    let mut matrix = vec![vec![monoid.zero(); n]; n];
    for (x, y, v) in pairs {
        matrix[idx(x)][idx(y)] = v.clone();
        matrix[idx(y)][idx(x)] = v;
    }
    Ok(RMetricSpace::new(
        monoid,
        labels.iter().map(|l| l.to_string()).collect(),
        matrix,
    )?)
}

/// The `k × k` grid of pairs `(a^{i,j}_1, a^{i,j}_2)`, labelled `a{i}.{j}_{m}`.
#[derive(Debug, Clone)]
pub struct Tp2Witness<M: DistanceMonoid> {
    pub space: RMetricSpace<M>,
    pub k: usize,
    pub r: M::Value,
    pub s: M::Value,
}

/// What the TP2 checks found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tp2Report {
    pub paths_checked: usize,
    pub paths_consistent: usize,
    pub pairs_checked: usize,
    pub pairs_inconsistent: usize,
}

impl Tp2Report {
    pub fn holds(&self) -> bool {
        self.paths_consistent == self.paths_checked && self.pairs_inconsistent == self.pairs_checked
    }
}

/// Distances `d(a^{i,j}_m, a^{k,l}_n)`:
///
/// * `r` if `m = n = 1`, `s` if `m = n = 2` (distinct points),
/// * `r ⊕ s` if `m ≠ n` and (`i ≠ k` or `j = l`),
/// * `2r ⊕ s` if `m ≠ n`, `i = k` and `j ≠ l`.
pub fn witness_tp2<M: DistanceMonoid + Clone>(
    monoid: M,
    r: &M::Value,
    s: &M::Value,
    k: usize,
) -> Result<Tp2Witness<M>, SequenceError> {
    nonsimple_pre(&monoid, r, s)?;
    let rs = monoid.oplus(r, s);
    let r2s = monoid.oplus(r, &rs);
    let mut labels = Vec::with_capacity(2 * k * k);
    for i in 0..k {
        for j in 0..k {
            labels.push(format!("a{i}.{j}_1"));
            labels.push(format!("a{i}.{j}_2"));
        }
    }
    let decode = |p: usize| (p / 2 / k, p / 2 % k, p % 2);
    let space = RMetricSpace::from_fn(monoid.clone(), labels, |x, y| {
        if x == y {
            return monoid.zero();
        }
        let ((i, j, m), (i2, j2, n)) = (decode(x), decode(y));
        match (m, n) {
            (0, 0) => r.clone(),
            (1, 1) => s.clone(),
            _ if i != i2 || j == j2 => rs.clone(),
            _ => r2s.clone(),
        }
    })?;
    Ok(Tp2Witness {
        space,
        k,
        r: r.clone(),
        s: s.clone(),
    })
}

impl<M: DistanceMonoid + Clone> Tp2Witness<M> {
    pub fn point(&self, i: usize, j: usize, m: usize) -> usize {
        assert!(m == 1 || m == 2, "pair coordinate is 1 or 2");
        (i * self.k + j) * 2 + (m - 1)
    }

    /// The map sending `a^{i,j}_1 ↦ r` and `a^{i,j}_2 ↦ s` for the given cells.
    pub fn cell_map(&self, cells: &[(usize, usize)]) -> KatetovMap<M::Value> {
        let mut domain = Vec::new();
        let mut values = Vec::new();
        for &(i, j) in cells {
            domain.push(self.point(i, j, 1));
            values.push(self.r.clone());
            domain.push(self.point(i, j, 2));
            values.push(self.s.clone());
        }
        KatetovMap::new(domain, values)
    }

    /// Checks every path `σ` (one cell per row) is Katětov and every
    /// same-row pair of cells is not.
    pub fn check(&self) -> Tp2Report {
        let k = self.k;
        let mut report = Tp2Report {
            paths_checked: 0,
            paths_consistent: 0,
            pairs_checked: 0,
            pairs_inconsistent: 0,
        };
        let mut sigma = vec![0usize; k];
        loop {
            let cells: Vec<_> = sigma.iter().enumerate().map(|(i, &j)| (i, j)).collect();
            report.paths_checked += 1;
            if self.space.is_katetov(&self.cell_map(&cells)) {
                report.paths_consistent += 1;
            }
            let Some(pos) = (0..k).rev().find(|&p| sigma[p] + 1 < k) else {
                break;
            };
            sigma[pos] += 1;
            sigma[pos + 1..].iter_mut().for_each(|x| *x = 0);
        }
        for i in 0..k {
            for j in 0..k {
                for j2 in j + 1..k {
                    report.pairs_checked += 1;
                    if !self.space.is_katetov(&self.cell_map(&[(i, j), (i, j2)])) {
                        report.pairs_inconsistent += 1;
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::{forks, rel_dmax, Verdict};
    use crate::monoid::{Elem, FiniteDistanceMonoid};

    #[test]
    fn order_property() {
        let r2 = FiniteDistanceMonoid::make_rn(2);
        let w = witness_order_property(&r2, &Elem(1), 3).unwrap();
        assert_eq!(w.space.len(), 6);
        assert!(w.has_order_property);
        let a2_1 = w.space.index_of("a2_1").unwrap();
        let a0_2 = w.space.index_of("a0_2").unwrap();
        assert_eq!(*w.space.d(a2_1, a0_2), Elem(2));
        assert_eq!(*w.space.d(a0_2 - 1, a2_1 + 1), Elem(1));
        let mx = FiniteDistanceMonoid::make_maxchain(2);
        assert!(!witness_order_property(&mx, &Elem(1), 3).unwrap().has_order_property);
        assert_eq!(
            witness_order_property(&r2, &Elem(0), 3).unwrap_err(),
            SequenceError::NonPositive
        );
    }

    #[test]
    fn nonsimple_four_point_breaks_symmetry() {
        let r3 = FiniteDistanceMonoid::make_rn(3);
        let sp = witness_nonsimple(&r3, &Elem(1), &Elem(1), NonsimpleVariant::FourPoint).unwrap();
        let ix = |ls: &[&str]| sp.indices_of(ls).unwrap();
        let fwd = forks(&sp, &ix(&["a"]), &ix(&["b1", "b2"]), &ix(&["c"]));
        let bwd = forks(&sp, &ix(&["b1", "b2"]), &ix(&["a"]), &ix(&["c"]));
        assert_eq!(fwd.verdict, Verdict::Forks);
        assert_eq!(bwd.verdict, Verdict::Independent);
    }

    #[test]
    fn nonsimple_five_point_dmax_without_forking() {
        let r3 = FiniteDistanceMonoid::make_rn(3);
        let sp = witness_nonsimple(&r3, &Elem(1), &Elem(1), NonsimpleVariant::FivePoint).unwrap();
        let ix = |ls: &[&str]| sp.indices_of(ls).unwrap();
        let (a, b, c) = (ix(&["a"]), ix(&["b1", "b2"]), ix(&["c1", "c2"]));
        assert!(rel_dmax(&sp, &a, &b, &c));
        assert_eq!(forks(&sp, &a, &b, &c).verdict, Verdict::Forks);
    }

    #[test]
    fn simple_monoids_have_no_witness() {
        let r2 = FiniteDistanceMonoid::make_rn(2);
        assert!(matches!(
            witness_nonsimple(&r2, &Elem(1), &Elem(1), NonsimpleVariant::FourPoint),
            Err(SequenceError::SimplicityHolds { .. })
        ));
        assert!(matches!(
            witness_tp2(&r2, &Elem(1), &Elem(1), 3),
            Err(SequenceError::SimplicityHolds { .. })
        ));
    }

    #[test]
    fn tp2_grid() {
        let r3 = FiniteDistanceMonoid::make_rn(3);
        let w = witness_tp2(&r3, &Elem(1), &Elem(1), 3).unwrap();
        assert_eq!(w.space.len(), 18);
        let rep = w.check();
        assert_eq!(rep.paths_checked, 27);
        assert_eq!(rep.pairs_checked, 9);
        assert!(rep.holds());
        let one = witness_tp2(&r3, &Elem(1), &Elem(1), 1).unwrap().check();
        assert_eq!(one.pairs_checked, 0);
        assert!(one.holds());
    }
}
