//! Combinatorics of the toric degeneration `P(k,n)` of `G(k,n)`.
//!
//! Coordinates use the basis `f_{i,j}` (`1 <= i <= k`, `1 <= j <= n-k`),
//! stored at index `(i-1)(n-k) + (j-1)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial, factorial, linalg};

/// Largest dimension accepted by [`facets_and_reflexivity`].
pub const MAX_HULL_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassError {
    #[error("invalid Grassmannian shape k = {k}, n = {n}")]
    InvalidShape { k: usize, n: usize },
    #[error("hull enumeration is limited to dimension {limit}, got {dim}")]
    DimensionBound { dim: usize, limit: usize },
    #[error("vertices do not span a full-dimensional polytope")]
    Degenerate,
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("vertex arity mismatch: expected {expected}, got {found}")]
    Arity { expected: usize, found: usize },
}

pub type Result<T, E = GrassError> = std::result::Result<T, E>;

pub fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(GrassError::InvalidShape { k, n });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexLabel {
    U(usize, usize),
    V(usize, usize),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::U(i, j) => write!(f, "u_{{{i},{j}}}"),
            VertexLabel::V(i, j) => write!(f, "v_{{{i},{j}}}"),
        }
    }
}

/// The polytope `Δ(k,n)` through its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaKN {
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub labels: Vec<VertexLabel>,
    pub vertices: Vec<Vec<i64>>,
}

impl DeltaKN {
    pub fn vertex(&self, label: VertexLabel) -> Option<&[i64]> {
        self.index_of(label).map(|i| self.vertices[i].as_slice())
    }

    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Coordinate index of `f_{i,j}`.
    pub fn coord(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.n - self.k) + (j - 1)
    }
}

/// Vertices in the order `u_{1,0}`, `u_{i,j}` row-major, `v_{i,j}` row-major,
/// `v_{k,n-k}`.
pub fn build_delta(k: usize, n: usize) -> Result<DeltaKN> {
    check_shape(k, n)?;
    let w = n - k;
    let dim = k * w;
    let f = |i: usize, j: usize| (i - 1) * w + (j - 1);
    let mut labels = Vec::new();
    let mut vertices = Vec::new();
    let mut push = |label: VertexLabel, terms: &[(usize, i64)]| {
        let mut v = vec![0i64; dim];
        for &(idx, c) in terms {
            v[idx] += c;
        }
        labels.push(label);
        vertices.push(v);
    };
    push(VertexLabel::U(1, 0), &[(f(1, 1), 1)]);
    for i in 2..=k {
        for j in 0..w {
            push(VertexLabel::U(i, j), &[(f(i, j + 1), 1), (f(i - 1, j + 1), -1)]);
        }
    }
    for i in 1..=k {
        for j in 1..w {
            push(VertexLabel::V(i, j), &[(f(i, j + 1), 1), (f(i, j), -1)]);
        }
    }
    push(VertexLabel::V(k, w), &[(f(k, w), -1)]);
    Ok(DeltaKN {
        k,
        n,
        dim,
        labels,
        vertices,
    })
}

pub fn expected_vertex_count(k: usize, n: usize) -> usize {
    2 * (k - 1) * (n - k - 1) + n
}

/// Facet `⟨normal, x⟩ >= -distance` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub distance: i64,
    /// Indices of the vertices on the facet.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub facets: Vec<Facet>,
    /// Every facet sits at lattice distance one.
    pub reflexive: bool,
}

/// Facets of the convex hull of `vertices`, which must contain the origin
/// in its interior.
///
/// Every `dim`-subset of vertices spanning a hyperplane is tested as a
/// supporting hyperplane; duplicates are merged. This is exponential in the
/// vertex count and meant for the small polytopes handled here.
pub fn facets_and_reflexivity(vertices: &[Vec<i64>]) -> Result<HullReport> {
    let dim = vertices.first().map_or(0, Vec::len);
    if dim > MAX_HULL_DIM {
        return Err(GrassError::DimensionBound {
            dim,
            limit: MAX_HULL_DIM,
        });
    }
    if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
        return Err(GrassError::Arity {
            expected: dim,
            found: bad.len(),
        });
    }
    let as_rat = |v: &[i64]| -> Vec<BigRational> { v.iter().map(|&x| BigRational::from_integer(x.into())).collect() };
    if dim == 0 || linalg::rank(&vertices.iter().map(|v| as_rat(v)).collect::<Vec<_>>(), dim) < dim {
        return Err(GrassError::Degenerate);
    }
    let mut found: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        // (m, h) with ⟨m, v⟩ - h = 0 on the subset
        let rows: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&i| {
                let mut r = as_rat(&vertices[i]);
                r.push(-BigRational::one());
                r
            })
            .collect();
        let kernel = linalg::nullspace(&rows, dim + 1);
        if kernel.len() == 1 {
            let ints = linalg::primitive_integer_row(&kernel[0]);
            let (normal, h) = ints.split_at(dim);
            let values: Vec<BigInt> = vertices.iter().map(|v| dot(normal, v)).collect();
            let h = &h[0];
            let above = values.iter().all(|x| x >= h);
            let below = values.iter().all(|x| x <= h);
            if above || below {
                let sign = if above { 1 } else { -1 };
                let h = sign * to_i64(h);
                if h >= 0 {
                    return Err(GrassError::OriginNotInterior);
                }
                let normal: Vec<i64> = normal.iter().map(|x| sign * to_i64(x)).collect();
                found.insert((normal, -h));
            }
        }
        if !next_subset(&mut subset, vertices.len()) {
            break;
        }
    }
    let facets: Vec<Facet> = found
        .into_iter()
        .map(|(normal, distance)| {
            let on: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| dot_i64(&normal, v) == -distance)
                .map(|(i, _)| i)
                .collect();
            Facet {
                normal,
                distance,
                vertices: on,
            }
        })
        .collect();
    let reflexive = facets.iter().all(|f| f.distance == 1);
    Ok(HullReport { facets, reflexive })
}

fn dot(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter().zip(b).map(|(x, &y)| x * BigInt::from(y)).sum()
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("hull normals of small lattice polytopes fit in i64")
}

/// Advances a sorted index subset of `0..n` lexicographically.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Strictly increasing sequence `a_1 < ... < a_k` in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexTuple(pub Vec<usize>);

impl IndexTuple {
    /// Componentwise order.
    pub fn precedes(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn meet(&self, other: &Self) -> Self {
        IndexTuple(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &Self) -> Self {
        IndexTuple(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_valid(&self, n: usize) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1]) && self.0.first().is_none_or(|&a| a >= 1) && self.0.last().is_none_or(|&a| a <= n)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&a| a < 10) { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// All of `A(k,n)` in lexicographic order.
pub fn poset_akn(k: usize, n: usize) -> Result<Vec<IndexTuple>> {
    check_shape(k, n)?;
    let mut out = Vec::new();
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexTuple(s.iter().map(|x| x + 1).collect()));
        if !next_subset(&mut s, n) {
            break;
        }
    }
    Ok(out)
}

/// The binomial `z_a z_b - z_{a∧b} z_{a∨b}` for an incomparable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub a: IndexTuple,
    pub b: IndexTuple,
    pub meet: IndexTuple,
    pub join: IndexTuple,
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z_{}*z_{} - z_{}*z_{}", self.a, self.b, self.meet, self.join)
    }
}

/// One binomial per unordered incomparable pair, pairs in lexicographic order.
pub fn binomial_equations(k: usize, n: usize) -> Result<Vec<Binomial>> {
    let tuples = poset_akn(k, n)?;
    let mut out = Vec::new();
    for (i, a) in tuples.iter().enumerate() {
        for b in &tuples[i + 1..] {
            if !a.comparable(b) {
                out.push(Binomial {
                    a: a.clone(),
                    b: b.clone(),
                    meet: a.meet(b),
                    join: a.join(b),
                });
            }
        }
    }
    Ok(out)
}

/// The sets `E_1, ..., E_n` as vertex labels.
pub fn nef_partition_sets(k: usize, n: usize) -> Result<Vec<Vec<VertexLabel>>> {
    check_shape(k, n)?;
    let w = n - k;
    let mut sets = vec![vec![VertexLabel::U(1, 0)]];
    for i in 2..=k {
        sets.push((0..w).map(|j| VertexLabel::U(i, j)).collect());
    }
    for j in 1..w {
        sets.push((1..=k).map(|i| VertexLabel::V(i, j)).collect());
    }
    sets.push(vec![VertexLabel::V(k, w)]);
    Ok(sets)
}

/// Degree of `G(k,n)` in its Plücker embedding.
pub fn degree_grassmannian(k: usize, n: usize) -> Result<BigInt> {
    check_shape(k, n)?;
    let mut num = factorial((k * (n - k)) as u64);
    let mut den = BigInt::one();
    for i in 0..k {
        num *= factorial(i as u64);
        den *= factorial((n - k + i) as u64);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Number `(k-1)(n-k-1)` of conifold strata.
pub fn alpha(k: usize, n: usize) -> usize {
    (k - 1) * (n - k - 1)
}

/// `p = (∏ d_i) (Σ d(W_{i,j}))`.
pub fn node_count(degrees: &[u32], strata_degrees: &[u32]) -> u64 {
    let prod: u64 = degrees.iter().map(|&d| u64::from(d)).product();
    let sum: u64 = strata_degrees.iter().map(|&d| u64::from(d)).sum();
    prod * sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hodge {
    pub h11: i64,
    pub h21: i64,
    pub chi: i64,
}

impl Hodge {
    pub fn new(h11: i64, h21: i64) -> Self {
        Hodge {
            h11,
            h21,
            chi: 2 * (h11 - h21),
        }
    }
}

/// Hodge numbers after the conifold transition: `h11 + α`, `h21 + α - p`.
pub fn hodge_after_transition(x: Hodge, alpha: i64, p: i64) -> Hodge {
    Hodge::new(x.h11 + alpha, x.h21 + alpha - p)
}

/// Whether `binomial(n, k)` equals `count`; convenience for facet checks.
pub fn equals_binomial(count: usize, n: usize, k: usize) -> bool {
    binomial(n as u64, k as u64) == BigInt::from(count)
}

/// Checks that every vertex is primitive.
pub fn all_primitive(vertices: &[Vec<i64>]) -> bool {
    vertices.iter().all(|v| v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_24_vertices() {
        let d = build_delta(2, 4).unwrap();
        assert_eq!(d.dim, 4);
        let expected: Vec<Vec<i64>> = vec![
            vec![1, 0, 0, 0],
            vec![-1, 0, 1, 0],
            vec![0, -1, 0, 1],
            vec![-1, 1, 0, 0],
            vec![0, 0, -1, 1],
            vec![0, 0, 0, -1],
        ];
        assert_eq!(d.vertices, expected);
        assert!(all_primitive(&d.vertices));
    }

    #[test]
    fn cube_is_reflexive() {
        let mut cube = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                for c in [-1, 1] {
                    cube.push(vec![a, b, c]);
                }
            }
        }
        let hull = facets_and_reflexivity(&cube).unwrap();
        assert_eq!(hull.facets.len(), 6);
        assert!(hull.reflexive);
        assert!(hull.facets.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn scaled_simplex_is_not_reflexive() {
        let s = vec![vec![2, 0], vec![0, 2], vec![-2, -2]];
        let hull = facets_and_reflexivity(&s).unwrap();
        assert_eq!(hull.facets.len(), 3);
        assert!(!hull.reflexive);
        let off = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(facets_and_reflexivity(&off), Err(GrassError::OriginNotInterior));
        let touching = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        assert_eq!(facets_and_reflexivity(&touching), Err(GrassError::OriginNotInterior));
    }

    #[test]
    fn poset_meet_and_join() {
        let a = IndexTuple(vec![1, 4]);
        let b = IndexTuple(vec![2, 3]);
        assert!(!a.comparable(&b));
        assert_eq!(a.meet(&b), IndexTuple(vec![1, 3]));
        assert_eq!(a.join(&b), IndexTuple(vec![2, 4]));
        let bottom = IndexTuple(vec![1, 2]);
        assert!(poset_akn(2, 4).unwrap().iter().all(|t| bottom.precedes(t)));
    }

    #[test]
    fn g24_relation() {
        let eqs = binomial_equations(2, 4).unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].to_string(), "z_14*z_23 - z_13*z_24");
    }

    #[test]
    fn nef_sets_of_g25() {
        let sets = nef_partition_sets(2, 5).unwrap();
        assert_eq!(sets.len(), 5);
        assert_eq!(sets[2], vec![VertexLabel::V(1, 1), VertexLabel::V(2, 1)]);
    }

    #[test]
    fn degrees() {
        let got: Vec<BigInt> = [(2, 4), (2, 5), (2, 6), (2, 7), (3, 6), (1, 5)]
            .iter()
            .map(|&(k, n)| degree_grassmannian(k, n).unwrap())
            .collect();
        let expected: Vec<BigInt> = [2, 5, 14, 42, 42, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn transition_bookkeeping() {
        assert_eq!(hodge_after_transition(Hodge::new(1, 89), 1, 4), Hodge { h11: 2, h21: 86, chi: -168 });
        assert_eq!(hodge_after_transition(Hodge::new(1, 50), 4, 14), Hodge { h11: 5, h21: 40, chi: -70 });
        assert_eq!(hodge_after_transition(Hodge::new(1, 89), 0, 0), Hodge::new(1, 89));
        assert_eq!(node_count(&[1, 1, 3], &[1, 1]), 6);
        assert_eq!(node_count(&[1; 6], &[2, 2, 6, 6]), 16);
    }
}
