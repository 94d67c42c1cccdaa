//! Finite R-metric spaces, Katětov maps, one-point extensions, and free
//! amalgamation.

mod fraisse;
pub mod text;

pub use fraisse::{check_extension_property, fraisse_grow, GrowError, Lcg};

use std::collections::HashSet;

use thiserror::Error;

use crate::monoid::DistanceMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("distance matrix must be square with one row per point ({points} points)")]
    NotSquare { points: usize },
    #[error("duplicate or empty point label `{0}`")]
    BadLabel(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("`{0}` is not a distance in this monoid")]
    NotAnElement(String),
    #[error("d({x},{x}) must be 0")]
    NonzeroDiagonal { x: String },
    #[error("distinct points {x} and {y} are at distance 0")]
    ZeroOffDiagonal { x: String, y: String },
    #[error("d({x},{y}) ≠ d({y},{x})")]
    Asymmetric { x: String, y: String },
    #[error("triangle inequality fails: d({x},{z}) > d({x},{y}) ⊕ d({y},{z})")]
    TriangleViolation { x: String, y: String, z: String },
    #[error("map is not Katětov over its domain")]
    NotKatetov,
    #[error("map values must be positive")]
    NonPositiveValue,
    #[error("new point `{0}` would coincide with an existing point")]
    CollisionWithExistingPoint(String),
    #[error("amalgamation over an empty base needs sup R to be an element")]
    EmptyBase,
    #[error("identified points {a} and {b} do not form an isometric base")]
    NotIsometric { a: String, b: String },
    #[error("this operation needs a finite carrier")]
    InfiniteCarrier,
}

/// A finite set of labelled points with a validated distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMetricSpace<M: DistanceMonoid> {
    monoid: M,
    labels: Vec<String>,
    dist: Vec<M::Value>,
}

/// A map from a set of points to positive distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KatetovMap<V> {
    pub domain: Vec<usize>,
    pub values: Vec<V>,
}

impl<V> KatetovMap<V> {
    pub fn new(domain: Vec<usize>, values: Vec<V>) -> Self {
        assert_eq!(domain.len(), values.len(), "one value per domain point");
        KatetovMap { domain, values }
    }

    pub fn empty() -> Self {
        KatetovMap {
            domain: Vec::new(),
            values: Vec::new(),
        }
    }
}

impl<M: DistanceMonoid + Clone> RMetricSpace<M> {
    /// Validates a distance matrix: zero diagonal, positive off-diagonal,
    /// symmetry, and every triangle.
    pub fn new(
        monoid: M,
        labels: Vec<String>,
        matrix: Vec<Vec<M::Value>>,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(SpaceError::NotSquare { points: n });
        }
        let dist = matrix.into_iter().flatten().collect();
        Self::from_flat(monoid, labels, dist)
    }

    /// Builds and validates a space from a distance function on indices.
    pub fn from_fn(
        monoid: M,
        labels: Vec<String>,
        d: impl Fn(usize, usize) -> M::Value,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        let dist = (0..n * n).map(|k| d(k / n, k % n)).collect();
        Self::from_flat(monoid, labels, dist)
    }

    fn from_flat(monoid: M, labels: Vec<String>, dist: Vec<M::Value>) -> Result<Self, SpaceError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) || !seen.insert(l) {
                return Err(SpaceError::BadLabel(l.clone()));
            }
        }
        let space = RMetricSpace {
            monoid,
            labels,
            dist,
        };
        space.check()?;
        Ok(space)
    }

    fn check(&self) -> Result<(), SpaceError> {
        let n = self.len();
        let m = &self.monoid;
        let l = |i: usize| self.labels[i].clone();
        for x in 0..n {
            for y in 0..n {
                let v = self.d(x, y);
                if !m.contains(v) {
                    return Err(SpaceError::NotAnElement(m.label(v)));
                }
                if x == y && !m.is_zero(v) {
                    return Err(SpaceError::NonzeroDiagonal { x: l(x) });
                }
                if x != y && m.is_zero(v) {
                    return Err(SpaceError::ZeroOffDiagonal { x: l(x), y: l(y) });
                }
                if v != self.d(y, x) {
                    return Err(SpaceError::Asymmetric { x: l(x), y: l(y) });
                }
            }
        }
        if let Some((x, y, z)) = self.triangle_violation() {
            return Err(SpaceError::TriangleViolation {
                x: l(x),
                y: l(y),
                z: l(z),
            });
        }
        Ok(())
    }

    /// First `(x, y, z)` with `d(x,z) > d(x,y) ⊕ d(y,z)`.
    fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for z in (x + 1)..n {
                let xz = self.d(x, z);
                for y in 0..n {
                    if y != x && y != z && *xz > self.monoid.oplus(self.d(x, y), self.d(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, SpaceError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SpaceError::UnknownPoint(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>, SpaceError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> &M::Value {
        &self.dist[x * self.len() + y]
    }

    pub fn matrix(&self) -> Vec<Vec<M::Value>> {
        let n = self.len();
        (0..n)
            .map(|x| (0..n).map(|y| self.d(x, y).clone()).collect())
            .collect()
    }

    /// The induced subspace on `points`, in the given order.
    pub fn subspace(&self, points: &[usize]) -> RMetricSpace<M> {
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        let dist = points
            .iter()
            .flat_map(|&x| points.iter().map(move |&y| self.d(x, y).clone()))
            .collect();
        RMetricSpace {
            monoid: self.monoid.clone(),
            labels,
            dist,
        }
    }

    /// `d(x, S) = min over s ∈ S of d(x, s)`, or `sup R*` when `S` is empty.
    pub fn dist_to_set(&self, x: usize, set: &[usize]) -> M::Value {
        set.iter()
            .map(|&s| self.d(x, s).clone())
            .min()
            .unwrap_or_else(|| self.monoid.top())
    }

    /// `|f(u) ⊖ f(v)| ≤ d(u,v) ≤ f(u) ⊕ f(v)` on the domain, all values positive.
    pub fn is_katetov(&self, map: &KatetovMap<M::Value>) -> bool {
        let m = &self.monoid;
        if map
            .values
            .iter()
            .any(|v| m.is_zero(v) || !m.contains(v))
        {
            return false;
        }
        let k = map.domain.len();
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let (u, v) = (map.domain[i], map.domain[j]);
                let (fu, fv) = (&map.values[i], &map.values[j]);
                let d = self.d(u, v);
                m.abs_diff(fu, fv) <= *d && *d <= m.oplus(fu, fv)
            })
        })
    }

    /// Whether point `p` has exactly the prescribed distances.
    pub fn realizes(&self, p: usize, map: &KatetovMap<M::Value>) -> bool {
        map.domain
            .iter()
            .zip(&map.values)
            .all(|(&u, v)| self.d(p, u) == v)
    }

    /// Adds a point realizing `map`, placed freely over its domain:
    /// `d(p, x) = min over u ∈ F of f(u) ⊕ d(u, x)`.
    pub fn extend(
        &self,
        map: &KatetovMap<M::Value>,
        new_label: &str,
    ) -> Result<RMetricSpace<M>, SpaceError> {
        if map.values.iter().any(|v| self.monoid.is_zero(v)) {
            return Err(SpaceError::NonPositiveValue);
        }
        if !self.is_katetov(map) {
            return Err(SpaceError::NotKatetov);
        }
        let n = self.len();
        let mut row = Vec::with_capacity(n);
        for x in 0..n {
            let v = match map.domain.iter().position(|&u| u == x) {
                Some(i) => map.values[i].clone(),
                None => map
                    .domain
                    .iter()
                    .zip(&map.values)
                    .map(|(&u, fu)| self.monoid.oplus(fu, self.d(u, x)))
                    .min()
                    .unwrap_or_else(|| self.monoid.top()),
            };
            if !self.monoid.contains(&v) {
                return Err(SpaceError::EmptyBase);
            }
            assert!(
                !self.monoid.is_zero(&v),
                "free extension produced distance 0 from a positive map"
            );
            row.push(v);
        }
        let mut labels = self.labels.clone();
        labels.push(new_label.to_string());
        let zero = self.monoid.zero();
        Self::from_fn(self.monoid.clone(), labels, |x, y| match (x == n, y == n) {
            (true, true) => zero.clone(),
            (true, false) => row[y].clone(),
            (false, true) => row[x].clone(),
            (false, false) => self.d(x, y).clone(),
        })
    }

    /// All Katětov maps on `domain` in lexicographic order of values.
    pub fn enumerate_katetov(
        &self,
        domain: &[usize],
    ) -> Result<Vec<KatetovMap<M::Value>>, SpaceError> {
        let positive = self
            .monoid
            .positive_elements()
            .ok_or(SpaceError::InfiniteCarrier)?;
        let mut out = Vec::new();
        let mut values = Vec::with_capacity(domain.len());
        self.katetov_dfs(domain, &positive, &mut values, &mut out);
        Ok(out)
    }

    fn katetov_dfs(
        &self,
        domain: &[usize],
        positive: &[M::Value],
        values: &mut Vec<M::Value>,
        out: &mut Vec<KatetovMap<M::Value>>,
    ) {
        let i = values.len();
        if i == domain.len() {
            out.push(KatetovMap::new(domain.to_vec(), values.clone()));
            return;
        }
        for v in positive {
            if self.compatible(domain, values, domain[i], v) {
                values.push(v.clone());
                self.katetov_dfs(domain, positive, values, out);
                values.pop();
            }
        }
    }

    /// Whether giving `x` the value `v` keeps the partial map Katětov.
    pub(crate) fn compatible(
        &self,
        domain: &[usize],
        values: &[M::Value],
        x: usize,
        v: &M::Value,
    ) -> bool {
        let m = &self.monoid;
        domain.iter().zip(values).all(|(&u, fu)| {
            let d = self.d(u, x);
            m.abs_diff(fu, v) <= *d && *d <= m.oplus(fu, v)
        })
    }
}

/// Glues `a` and `b` along the identified pairs `(point of a, point of b)`.
///
/// Cross distances are as large as possible:
/// `d(x, y) = min over c of d(x, c) ⊕ d(c, y)`, or `sup R` over an empty base.
/// Points of `b` outside the base keep their labels, which must not clash
/// with labels of `a`.
pub fn free_amalgam<M: DistanceMonoid + Clone>(
    a: &RMetricSpace<M>,
    b: &RMetricSpace<M>,
    common: &[(usize, usize)],
) -> Result<RMetricSpace<M>, SpaceError> {
    for &(x, y) in common {
        for &(x2, y2) in common {
            if a.d(x, x2) != b.d(y, y2) {
                return Err(SpaceError::NotIsometric {
                    a: a.label(x).to_string(),
                    b: b.label(y).to_string(),
                });
            }
        }
    }
    let m = a.monoid().clone();
    let b_outside: Vec<usize> = (0..b.len())
        .filter(|y| !common.iter().any(|&(_, c)| c == *y))
        .collect();
    let a_outside: Vec<usize> = (0..a.len())
        .filter(|x| !common.iter().any(|&(c, _)| c == *x))
        .collect();
    if common.is_empty() && !a_outside.is_empty() && !b_outside.is_empty() && !m.contains(&m.top())
    {
        return Err(SpaceError::EmptyBase);
    }
    let mut labels = a.labels().to_vec();
    labels.extend(b_outside.iter().map(|&y| b.label(y).to_string()));
    let n_a = a.len();
    let cross = |x: usize, y: usize| -> M::Value {
        common
            .iter()
            .map(|&(ca, cb)| m.oplus(a.d(x, ca), b.d(cb, y)))
            .min()
            .unwrap_or_else(|| m.top())
    };
    let b_of = |p: usize| b_outside[p - n_a];
    RMetricSpace::from_fn(m.clone(), labels, |p, q| match (p < n_a, q < n_a) {
        (true, true) => a.d(p, q).clone(),
        (false, false) => b.d(b_of(p), b_of(q)).clone(),
        (true, false) => cross(p, b_of(q)),
        (false, true) => cross(q, b_of(p)),
    })
}
