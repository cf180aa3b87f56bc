//! Small quantum cohomology of `G(k,n)` in the Schubert basis and the scalar
//! operator annihilating the top component of the quantum differential system.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial, IntPoly, PowerSeries};
use crate::dop::DOp;

/// Default cap on `C(n,k)` for matrix construction.
pub const DEFAULT_MAX_DIM: usize = 35;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QhError {
    #[error("invalid Grassmannian shape k = {k}, n = {n}")]
    InvalidShape { k: usize, n: usize },
    #[error("partition {0:?} does not fit the box")]
    OutsideBox(Vec<usize>),
    #[error("basis dimension {dim} exceeds the limit {limit}")]
    DimensionBound { dim: usize, limit: usize },
    #[error("no linear dependence among the first {0} functionals")]
    NoDependence(usize),
    #[error("relation fails the consistency check after {0} derivation steps")]
    GuardFailed(usize),
    #[error(transparent)]
    Operator(#[from] crate::dop::DOpError),
    #[error(transparent)]
    Series(#[from] crate::hypergeom::HypergeomError),
}

pub type Result<T, E = QhError> = std::result::Result<T, E>;

/// Weakly decreasing parts `λ_1 >= ... >= λ_k`, padded with zeros to length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(k: usize, n: usize, mut parts: Vec<usize>) -> Result<Self> {
        if parts.len() > k {
            return Err(QhError::OutsideBox(parts));
        }
        parts.resize(k, 0);
        let fits = parts.windows(2).all(|w| w[0] >= w[1]) && parts.first().is_none_or(|&p| p <= n - k);
        if !fits {
            return Err(QhError::OutsideBox(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    fn fits(&self, k: usize, n: usize) -> bool {
        self.0.len() == k && self.0.windows(2).all(|w| w[0] >= w[1]) && self.0.first().is_none_or(|&p| p <= n - k)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_shape(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(QhError::InvalidShape { k, n });
    }
    Ok(())
}

/// All partitions in the `k × (n-k)` box, ordered by size and then
/// lexicographically by parts, largest first within a size.
pub fn partitions(k: usize, n: usize) -> Result<Vec<Partition>> {
    check_shape(k, n)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if cur.len() == k {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in 0..=max {
            cur.push(p);
            rec(k, p, cur, out);
            cur.pop();
        }
    }
    rec(k, n - k, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    Ok(out)
}

/// `σ_1 ∘ σ_λ` as `(μ, q-power)` pairs, each with coefficient one.
///
/// Classical part: every way of adding one box inside the box. Quantum part:
/// `q σ_(λ_2-1, ..., λ_k-1, 0)` exactly when `λ_1 = n-k` and `λ_k >= 1`.
pub fn quantum_pieri_sigma1(lambda: &Partition, k: usize, n: usize) -> Result<Vec<(Partition, u32)>> {
    check_shape(k, n)?;
    if !lambda.fits(k, n) {
        return Err(QhError::OutsideBox(lambda.0.clone()));
    }
    let l = &lambda.0;
    let mut out = Vec::new();
    for i in 0..k {
        let grown = l[i] + 1;
        if grown <= n - k && (i == 0 || grown <= l[i - 1]) {
            let mut mu = l.clone();
            mu[i] = grown;
            out.push((Partition(mu), 0));
        }
    }
    if l[0] == n - k && l[k - 1] >= 1 {
        let mut nu: Vec<usize> = l[1..].iter().map(|x| x - 1).collect();
        nu.push(0);
        out.push((Partition(nu), 1));
    }
    Ok(out)
}

/// `σ_p ∘ σ_λ` for `1 <= p <= n-k` by the quantum Pieri rule: horizontal
/// strips of size `p`, plus `q σ_ν` over `ν` with `|ν| = |λ| + p - n` and
/// `λ_i - 1 >= ν_i >= λ_{i+1} - 1`, `ν_k >= 0`.
pub fn quantum_pieri(p: usize, lambda: &Partition, k: usize, n: usize) -> Result<Vec<(Partition, u32)>> {
    check_shape(k, n)?;
    if !lambda.fits(k, n) {
        return Err(QhError::OutsideBox(lambda.0.clone()));
    }
    let l = &lambda.0;
    let mut out = Vec::new();
    // μ_1 <= n-k, λ_i <= μ_i <= λ_{i-1}
    let upper: Vec<usize> = (0..k).map(|i| if i == 0 { n - k } else { l[i - 1] }).collect();
    let lower: Vec<usize> = l.clone();
    for mu in interlacing(&lower, &upper, lambda.size() + p) {
        out.push((Partition(mu), 0));
    }
    let target = (lambda.size() + p).checked_sub(n);
    if let Some(target) = target {
        if l[k - 1] >= 1 {
            let upper: Vec<usize> = l.iter().map(|x| x - 1).collect();
            let lower: Vec<usize> = (0..k).map(|i| if i + 1 < k { l[i + 1].saturating_sub(1) } else { 0 }).collect();
            for nu in interlacing(&lower, &upper, target) {
                out.push((Partition(nu), 1));
            }
        }
    }
    Ok(out)
}

/// Vectors `v` with `lower <= v <= upper` entrywise and `Σ v = total`.
fn interlacing(lower: &[usize], upper: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, lo: &[usize], hi: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == lo.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_min: usize = lo[i + 1..].iter().sum();
        for v in lo[i]..=hi[i] {
            if v + rest_min > left {
                break;
            }
            cur.push(v);
            rec(i + 1, lo, hi, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lower.iter().zip(upper).any(|(a, b)| a > b) {
        return out;
    }
    rec(0, lower, upper, total, &mut Vec::new(), &mut out);
    out
}

/// Matrix of an operator on `QH*(G(k,n))` in the Schubert basis:
/// `entries[μ][λ]` is the coefficient of `σ_μ` in the image of `σ_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhMatrix {
    pub k: usize,
    pub n: usize,
    pub basis: Vec<Partition>,
    pub entries: Vec<Vec<IntPoly>>,
}

impl QhMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.basis.iter().position(|b| b == p)
    }

    fn zero_like(&self) -> Self {
        let d = self.dim();
        QhMatrix {
            entries: vec![vec![IntPoly::zero(); d]; d],
            ..self.clone()
        }
    }

    pub fn identity_like(&self) -> Self {
        let mut out = self.zero_like();
        for i in 0..self.dim() {
            out.entries[i][i] = IntPoly::one();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.dim();
        let mut out = self.zero_like();
        for i in 0..d {
            for l in 0..d {
                let a = &self.entries[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[l][j];
                    if !b.is_zero() {
                        out.entries[i][j] = out.entries[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ro, rb) in out.entries.iter_mut().zip(&other.entries) {
            for (x, y) in ro.iter_mut().zip(rb) {
                *x = x.add(y);
            }
        }
        out
    }

    pub fn scale(&self, c: &IntPoly) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            for x in row.iter_mut() {
                *x = x.mul(c);
            }
        }
        out
    }

    /// Column `j`, the image of the `j`-th basis element.
    pub fn column(&self, j: usize) -> Vec<IntPoly> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    /// `(μ, λ, q-power)` for every nonzero monomial of every entry.
    pub fn monomials(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (mu, row) in self.entries.iter().enumerate() {
            for (lam, p) in row.iter().enumerate() {
                for (e, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        out.push((mu, lam, e));
                    }
                }
            }
        }
        out
    }
}

fn matrix_from_rule(
    k: usize,
    n: usize,
    max_dim: usize,
    rule: impl Fn(&Partition) -> Result<Vec<(Partition, u32)>>,
) -> Result<QhMatrix> {
    check_shape(k, n)?;
    let dim = binomial(n as u64, k as u64);
    let dim: usize = dim.try_into().unwrap_or(usize::MAX);
    if dim > max_dim {
        return Err(QhError::DimensionBound { dim, limit: max_dim });
    }
    let basis = partitions(k, n)?;
    let index: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut entries = vec![vec![IntPoly::zero(); dim]; dim];
    for (col, lam) in basis.iter().enumerate() {
        for (mu, e) in rule(lam)? {
            let row = index[&mu];
            entries[row][col] = entries[row][col].add(&IntPoly::monomial(BigInt::one(), e as usize));
        }
    }
    Ok(QhMatrix { k, n, basis, entries })
}

/// Matrix of quantum multiplication by `σ_1`.
pub fn build_qh_matrix(k: usize, n: usize, max_dim: usize) -> Result<QhMatrix> {
    matrix_from_rule(k, n, max_dim, |lam| quantum_pieri_sigma1(lam, k, n))
}

/// Matrix of quantum multiplication by the special class `σ_p`.
pub fn pieri_matrix(p: usize, k: usize, n: usize, max_dim: usize) -> Result<QhMatrix> {
    matrix_from_rule(k, n, max_dim, |lam| quantum_pieri(p, lam, k, n))
}

/// Matrix of multiplication by `σ_λ` from the Giambelli determinant
/// `det(σ_{λ_i + j - i})` in the commuting special-class matrices.
pub fn giambelli_matrix(lambda: &Partition, specials: &[QhMatrix]) -> QhMatrix {
    let k = lambda.0.len();
    let id = specials[0].identity_like();
    let entry = |i: usize, j: usize| -> Option<QhMatrix> {
        let idx = lambda.0[i] as i64 + j as i64 - i as i64;
        match idx {
            0 => Some(id.clone()),
            p if p > 0 && (p as usize) <= specials.len() => Some(specials[p as usize - 1].clone()),
            _ => None,
        }
    };
    let mut acc = id.zero_like();
    for perm in permutations(k) {
        let mut term = Some(id.clone());
        for (i, &j) in perm.iter().enumerate() {
            term = match (term, entry(i, j)) {
                (Some(t), Some(e)) => Some(t.mul(&e)),
                _ => None,
            };
        }
        if let Some(t) = term {
            let sign = if permutation_is_odd(&perm) { -1 } else { 1 };
            acc = acc.add(&t.scale(&IntPoly::constant(BigInt::from(sign))));
        }
    }
    acc
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Functionals `ℓ_0, ℓ_1, ...` and the relation found among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarReduction {
    pub functionals: Vec<Vec<IntPoly>>,
    /// `c_0(q), ..., c_ρ(q)` with `Σ c_j ℓ_j = 0`.
    pub relation: Vec<IntPoly>,
    pub operator: DOp,
}

/// `ℓ M + q d/dq ℓ` for a row vector `ℓ`.
fn next_functional(l: &[IntPoly], m: &QhMatrix) -> Vec<IntPoly> {
    (0..m.dim())
        .map(|col| {
            let mut acc = l[col].theta();
            for (row, x) in l.iter().enumerate() {
                let e = &m.entries[row][col];
                if !x.is_zero() && !e.is_zero() {
                    acc = acc.add(&x.mul(e));
                }
            }
            acc
        })
        .collect()
}

fn poly_gcd_all<'a>(items: impl IntoIterator<Item = &'a IntPoly>) -> IntPoly {
    items.into_iter().fold(IntPoly::zero(), |g, x| g.gcd(x))
}

/// Echelon row over `Z[q]` together with its expression in the functionals.
struct Row {
    vec: Vec<IntPoly>,
    comb: Vec<IntPoly>,
    pivot: usize,
}

fn remove_common_factor(vec: &mut [IntPoly], comb: &mut [IntPoly]) {
    let g = poly_gcd_all(vec.iter().chain(comb.iter()));
    if g.is_zero() || g == IntPoly::one() {
        return;
    }
    for x in vec.iter_mut().chain(comb.iter_mut()) {
        *x = x.div_poly(&g).expect("gcd divides every entry");
    }
}

/// Finds the minimal relation `Σ c_j(q) ℓ_j = 0` with `ℓ_0` the top-class
/// functional and `ℓ_{j+1} = ℓ_j M + q d/dq ℓ_j`, and returns `Σ c_j(q) D^j`.
///
/// Elimination is fraction-free over `Z[q]`; the pivot of each new row is its
/// nonzero entry of lowest degree, ties by index. The relation is divided by
/// the gcd of its coefficients and made positive in the leading coefficient
/// of `c_ρ`. `guard` further derivation steps of the relation are checked.
pub fn scalar_operator(m: &QhMatrix, guard: usize) -> Result<ScalarReduction> {
    let dim = m.dim();
    let top = Partition(vec![m.n - m.k; m.k]);
    let top_idx = m.index_of(&top).expect("top class lies in the box");
    let mut l0 = vec![IntPoly::zero(); dim];
    l0[top_idx] = IntPoly::one();
    let mut functionals = vec![l0];
    let mut rows: Vec<Row> = Vec::new();
    for j in 0..=dim {
        if j > 0 {
            let next = next_functional(&functionals[j - 1], m);
            functionals.push(next);
        }
        let mut vec = functionals[j].clone();
        let mut comb = vec![IntPoly::zero(); j + 1];
        comb[j] = IntPoly::one();
        for r in &rows {
            let a = vec[r.pivot].clone();
            if a.is_zero() {
                continue;
            }
            let p = &r.vec[r.pivot];
            for (x, y) in vec.iter_mut().zip(&r.vec) {
                *x = x.mul(p).sub(&a.mul(y));
            }
            for c in comb.iter_mut() {
                *c = c.mul(p);
            }
            for (c, y) in comb.iter_mut().zip(&r.comb) {
                *c = c.sub(&a.mul(y));
            }
            remove_common_factor(&mut vec, &mut comb);
        }
        let pivot = vec
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .min_by_key(|(i, x)| (x.degree(), *i))
            .map(|(i, _)| i);
        match pivot {
            Some(pivot) => rows.push(Row { vec, comb, pivot }),
            None => {
                let relation = normalize_relation(comb);
                check_guard(&functionals, &relation, m, guard)?;
                let operator = relation_operator(&relation);
                return Ok(ScalarReduction {
                    functionals,
                    relation,
                    operator,
                });
            }
        }
    }
    Err(QhError::NoDependence(dim + 1))
}

fn normalize_relation(mut comb: Vec<IntPoly>) -> Vec<IntPoly> {
    while comb.last().is_some_and(IntPoly::is_zero) {
        comb.pop();
    }
    let g = poly_gcd_all(comb.iter());
    let mut out: Vec<IntPoly> = comb.iter().map(|c| c.div_poly(&g).expect("gcd divides")).collect();
    if out.last().and_then(IntPoly::leading).is_some_and(Signed::is_negative) {
        out = out.iter().map(IntPoly::neg).collect();
    }
    out
}

/// Applies the derivation `c ℓ_j -> θ(c) ℓ_j + c ℓ_{j+1}` to the relation
/// `guard` times; each image must vanish as well.
fn check_guard(functionals: &[Vec<IntPoly>], relation: &[IntPoly], m: &QhMatrix, guard: usize) -> Result<()> {
    let mut fs: Vec<Vec<IntPoly>> = functionals[..relation.len()].to_vec();
    let mut rel = relation.to_vec();
    for step in 1..=guard {
        let next = next_functional(fs.last().expect("nonempty"), m);
        fs.push(next);
        let mut lifted = vec![IntPoly::zero(); rel.len() + 1];
        for (j, c) in rel.iter().enumerate() {
            lifted[j] = lifted[j].add(&c.theta());
            lifted[j + 1] = lifted[j + 1].add(c);
        }
        rel = lifted;
        for col in 0..m.dim() {
            let mut acc = IntPoly::zero();
            for (c, f) in rel.iter().zip(&fs) {
                acc = acc.add(&c.mul(&f[col]));
            }
            if !acc.is_zero() {
                return Err(QhError::GuardFailed(step));
            }
        }
    }
    Ok(())
}

fn relation_operator(relation: &[IntPoly]) -> DOp {
    let mut terms = Vec::new();
    for (j, c) in relation.iter().enumerate() {
        for (i, a) in c.coeffs().iter().enumerate() {
            terms.push(((i, j), BigRational::from_integer(a.clone())));
        }
    }
    DOp::from_terms("q", terms)
}

/// Outcome of applying the quantum-cohomology operator to the A-series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub n: usize,
    pub order: usize,
    pub operator: DOp,
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub residual: Vec<BigRational>,
    pub first_nonzero: Option<usize>,
    /// Indicial polynomial, lowest degree first.
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub indicial: Vec<BigRational>,
    /// Positive integers `m <= order` with vanishing indicial polynomial.
    pub resonant: Vec<usize>,
    /// True when no resonance occurs up to `order`, so the operator alone
    /// fixes every coefficient once `a_0` is given.
    pub unique_with_a0: bool,
    pub a0_is_one: bool,
    pub pass: bool,
}

/// Applies `op` (in `q`) to the A-series `a` and reports the residual.
pub fn conjecture_report(k: usize, n: usize, op: &DOp, a: &PowerSeries) -> Result<ConjectureReport> {
    let residual_series = op.apply(a)?;
    let residual = residual_series.coeffs().to_vec();
    let first_nonzero = residual.iter().position(|c| !c.is_zero());
    let indicial = op.indicial();
    let resonant: Vec<usize> = (1..=a.trunc())
        .filter(|&m| crate::dop::eval_poly(&indicial, m as i64).is_zero())
        .collect();
    let a0_is_one = a.constant_term().is_one();
    Ok(ConjectureReport {
        k,
        n,
        order: a.trunc(),
        operator: op.clone(),
        pass: first_nonzero.is_none() && a0_is_one,
        residual,
        first_nonzero,
        indicial,
        unique_with_a0: resonant.is_empty(),
        resonant,
        a0_is_one,
    })
}

/// Builds the scalar operator for `G(k,n)` and applies it to the specialized
/// A-series to the given order.
pub fn verify_conjecture(k: usize, n: usize, order: usize) -> Result<ConjectureReport> {
    let m = build_qh_matrix(k, n, DEFAULT_MAX_DIM)?;
    let red = scalar_operator(&m, 1)?;
    let spec = crate::hypergeom::ASeriesSpec::new(k, n, order).max_trunc(order.max(crate::hypergeom::DEFAULT_MAX_TRUNC));
    let a = crate::hypergeom::a_series_specialized(&spec)?;
    conjecture_report(k, n, &red.operator, &a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(k: usize, n: usize, p: &[usize]) -> Partition {
        Partition::new(k, n, p.to_vec()).unwrap()
    }

    #[test]
    fn box_order_is_graded() {
        let ps = partitions(2, 4).unwrap();
        let shown: Vec<String> = ps.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(0,0)", "(1,0)", "(2,0)", "(1,1)", "(2,1)", "(2,2)"]);
    }

    #[test]
    fn sigma1_rule_examples() {
        let (k, n) = (2, 4);
        let r = quantum_pieri_sigma1(&part(k, n, &[2, 1]), k, n).unwrap();
        assert_eq!(r, vec![(part(k, n, &[2, 2]), 0), (part(k, n, &[0, 0]), 1)]);
        let r = quantum_pieri_sigma1(&part(k, n, &[2]), k, n).unwrap();
        assert_eq!(r, vec![(part(k, n, &[2, 1]), 0)]);
        let r = quantum_pieri_sigma1(&part(k, n, &[]), k, n).unwrap();
        assert_eq!(r, vec![(part(k, n, &[1]), 0)]);
    }

    #[test]
    fn general_pieri_agrees_at_p1() {
        for (k, n) in [(2, 4), (2, 5), (3, 6), (3, 7)] {
            assert_eq!(build_qh_matrix(k, n, 35).unwrap(), pieri_matrix(1, k, n, 35).unwrap());
        }
    }

    #[test]
    fn g24_matrix_has_two_quantum_entries() {
        let m = build_qh_matrix(2, 4, 35).unwrap();
        assert_eq!(m.monomials().iter().filter(|t| t.2 == 1).count(), 2);
    }

    #[test]
    fn projective_plane_operator() {
        let m = build_qh_matrix(1, 3, 35).unwrap();
        let red = scalar_operator(&m, 3).unwrap();
        assert_eq!(red.operator, DOp::parse("D^3 - q").unwrap());
    }

    #[test]
    fn g24_operator() {
        let m = build_qh_matrix(2, 4, 35).unwrap();
        let red = scalar_operator(&m, 3).unwrap();
        assert_eq!(red.operator, DOp::parse("D^5 - 2q(2D+1)").unwrap());
    }

    #[test]
    fn dimension_bound() {
        assert!(matches!(build_qh_matrix(3, 8, 35), Err(QhError::DimensionBound { dim: 56, .. })));
    }

    #[test]
    fn corrupted_coefficient_is_reported() {
        let m = build_qh_matrix(2, 5, 35).unwrap();
        let op = scalar_operator(&m, 1).unwrap().operator;
        let spec = crate::hypergeom::ASeriesSpec::new(2, 5, 8);
        let a = crate::hypergeom::a_series_specialized(&spec).unwrap();
        let mut c = a.coeffs().to_vec();
        c[3] += BigRational::one();
        let bad = PowerSeries::new("q", c).unwrap();
        let report = conjecture_report(2, 5, &op, &bad).unwrap();
        assert_eq!(report.first_nonzero, Some(3));
        assert!(!report.pass);
        assert!(conjecture_report(2, 5, &op, &a).unwrap().pass);
    }
}
