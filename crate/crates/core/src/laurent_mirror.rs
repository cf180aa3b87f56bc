//! Laurent-polynomial side of the mirror construction: Lax operators of
//! Grassmannians, the mirror complete-intersection systems and their
//! constant-term periods.
//!
//! All polynomials live in the `k(n-k)` torus variables `X_{i,j} = X^{f_{i,j}}`
//! (index `(i-1)(n-k) + (j-1)`) followed by tracked parameter exponents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{format_rational, ArithError, LaurentPoly, PowerSeries};
use crate::grass::{self, GrassError, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirrorSystemError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Shape(#[from] GrassError),
    #[error("monomial {exp:?} has grading weight {weight}; every monomial needs weight >= 1")]
    Unbounded { exp: Vec<i64>, weight: i64 },
    #[error("parameter exponent {exp} is negative")]
    NegativeParameter { exp: i64 },
    #[error("grading has {found} weights, polynomial has {expected} variables")]
    GradingArity { found: usize, expected: usize },
    #[error("degrees {degrees:?} do not sum to n = {n}")]
    Degrees { degrees: Vec<u32>, n: usize },
    #[error("partition: {0}")]
    Partition(String),
    #[error("missing coefficient {0}")]
    MissingCoefficient(String),
    #[error("constraint a_{{{i},{jm}}} b_{{{i},{j}}} = a_{{{i},{j}}} b_{{{im},{j}}} fails")]
    Constraint {
        i: usize,
        im: usize,
        j: usize,
        jm: usize,
    },
}

pub type Result<T, E = MirrorSystemError> = std::result::Result<T, E>;

/// Lax operator of `G(r,s)` with the exponent of `q` tracked in the last
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaxOperator {
    pub r: usize,
    pub s: usize,
    pub poly: LaurentPoly,
}

impl LaxOperator {
    pub fn dim(&self) -> usize {
        self.r * (self.s - self.r)
    }

    /// `deg X_{[a,b]} = a + b - 1`, `deg q = s`; every monomial has degree 1.
    pub fn grading(&self) -> Vec<i64> {
        standard_grading(self.r, self.s)
    }

    /// The operator with `q` set to a number.
    pub fn at(&self, q: &BigRational) -> LaurentPoly {
        specialize_last(&self.poly, q)
    }

    /// Exponent vectors with the `q` coordinate dropped.
    pub fn newton_points(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        self.poly.support().into_iter().map(|e| e[..d].to_vec()).collect()
    }
}

/// Index of `X_{[a,b]} = X^{f_{b,a}}`.
fn lax_var(r: usize, s: usize, a: usize, b: usize) -> usize {
    debug_assert!(a >= 1 && a <= s - r && b >= 1 && b <= r);
    (b - 1) * (s - r) + (a - 1)
}

/// `deg f_{i,j} = i + j - 1` and weight `n` on the single tracked parameter.
pub fn standard_grading(k: usize, n: usize) -> Vec<i64> {
    let w = n - k;
    let mut g: Vec<i64> = (1..=k)
        .flat_map(|i| (1..=w).map(move |j| (i + j - 1) as i64))
        .collect();
    g.push(n as i64);
    g
}

/// `X_{[1,1]} + Σ X_{[a,b]}^{-1}(X_{[a+1,b]} + X_{[a,b+1]}) + q X_{[s-r,r]}^{-1}`
/// with `X_{[a,b]} = 0` outside `1 <= a <= s-r`, `1 <= b <= r`.
pub fn lax_operator(r: usize, s: usize) -> Result<LaxOperator> {
    grass::check_shape(r, s)?;
    let w = s - r;
    let dim = r * w;
    let mut poly = LaurentPoly::zero(dim + 1);
    let one = BigRational::one();
    let mut e = vec![0i64; dim + 1];
    e[lax_var(r, s, 1, 1)] = 1;
    poly.add_term(e, one.clone())?;
    for a in 1..=w {
        for b in 1..=r {
            for (a2, b2) in [(a + 1, b), (a, b + 1)] {
                if a2 > w || b2 > r {
                    continue;
                }
                let mut e = vec![0i64; dim + 1];
                e[lax_var(r, s, a, b)] -= 1;
                e[lax_var(r, s, a2, b2)] += 1;
                poly.add_term(e, one.clone())?;
            }
        }
    }
    let mut e = vec![0i64; dim + 1];
    e[lax_var(r, s, w, r)] = -1;
    e[dim] = 1;
    poly.add_term(e, one)?;
    Ok(LaxOperator { r, s, poly })
}

fn specialize_last(p: &LaurentPoly, value: &BigRational) -> LaurentPoly {
    let d = p.nvars() - 1;
    let mut out = LaurentPoly::zero(d);
    for (e, c) in p.terms() {
        let factor = pow_rational(value, e[d]);
        out.add_term(e[..d].to_vec(), c * factor).expect("arity");
    }
    out
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn check_grading(p: &LaurentPoly, grading: &[i64], nparams: usize) -> Result<()> {
    if grading.len() != p.nvars() {
        return Err(MirrorSystemError::GradingArity {
            found: grading.len(),
            expected: p.nvars(),
        });
    }
    let d = p.nvars() - nparams;
    for (e, _) in p.terms() {
        if let Some(&x) = e[d..].iter().find(|&&x| x < 0) {
            return Err(MirrorSystemError::NegativeParameter { exp: x });
        }
        let weight: i64 = e.iter().zip(grading).map(|(x, g)| x * g).sum();
        if weight < 1 {
            return Err(MirrorSystemError::Unbounded {
                exp: e.clone(),
                weight,
            });
        }
    }
    Ok(())
}

type TermMap = BTreeMap<Vec<i64>, BigRational>;

/// Pruning data for partial products: weight and parameter caps, and the
/// exponent box of every monomial that may still be multiplied in.
struct Budget<'a> {
    grading: &'a [i64],
    /// Number of torus variables; the rest are parameters.
    d: usize,
    max_weight: i64,
    max_param: i64,
    future: Vec<(i64, i64)>,
}

impl Budget<'_> {
    /// A partial term survives when it respects the caps and, with at most
    /// `max_weight - weight` further monomials of weight >= 1, each torus
    /// coordinate can still return to zero.
    fn keeps(&self, e: &[i64]) -> bool {
        if e[self.d..].iter().any(|&x| x > self.max_param) {
            return false;
        }
        let weight: i64 = e.iter().zip(self.grading).map(|(x, g)| x * g).sum();
        if weight > self.max_weight {
            return false;
        }
        let room = self.max_weight - weight;
        e[..self.d]
            .iter()
            .zip(&self.future)
            .all(|(&x, &(lo, hi))| -room * hi.max(0) <= x && x <= -room * lo.min(0))
    }

    fn mul(&self, a: &TermMap, b: &TermMap) -> TermMap {
        let mut out = TermMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if self.keeps(&e) {
                    *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `acc · Σ_{m >= 0} g^m` restricted to surviving terms.
    fn times_geometric(&self, acc: &TermMap, g: &TermMap) -> TermMap {
        let mut sum = acc.clone();
        let mut power = acc.clone();
        while !power.is_empty() {
            power = self.mul(&power, g);
            for (e, c) in &power {
                *sum.entry(e.clone()).or_insert_with(BigRational::zero) += c;
            }
        }
        sum.retain(|_, v| !v.is_zero());
        sum
    }
}

fn to_terms(p: &LaurentPoly) -> TermMap {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn max_weight(grading: &[i64], nparams: usize, order: usize) -> i64 {
    let d = grading.len() - nparams;
    grading[d..].iter().map(|&g| g.max(0)).sum::<i64>() * order as i64
}

/// Coordinatewise exponent range over the torus variables of `gs`.
fn torus_box(gs: &[LaurentPoly], d: usize) -> Vec<(i64, i64)> {
    let mut out = vec![(0i64, 0i64); d];
    for g in gs {
        for (e, _) in g.terms() {
            for (b, &x) in out.iter_mut().zip(&e[..d]) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
    }
    out
}

/// Constant terms of `∏_i 1/(1 - g_i)` in the torus variables, as a map from
/// parameter exponents (each `<= order`) to coefficients. The last `nparams`
/// variables are parameters; `grading` must give every monomial of every
/// `g_i` weight at least one.
pub fn period_ct_multi(gs: &[LaurentPoly], grading: &[i64], nparams: usize, order: usize) -> Result<BTreeMap<Vec<i64>, BigRational>> {
    let nvars = grading.len();
    for g in gs {
        check_grading(g, grading, nparams)?;
    }
    let d = nvars - nparams;
    let mut acc = TermMap::new();
    acc.insert(vec![0; nvars], BigRational::one());
    for (i, g) in gs.iter().enumerate() {
        let budget = Budget {
            grading,
            d,
            max_weight: max_weight(grading, nparams, order),
            max_param: order as i64,
            future: torus_box(&gs[i..], d),
        };
        acc = budget.times_geometric(&acc, &to_terms(g));
    }
    Ok(acc
        .into_iter()
        .filter(|(e, _)| e[..d].iter().all(|&x| x == 0))
        .map(|(e, c)| (e[d..].to_vec(), c))
        .collect())
}

/// `Σ_m CT(g^m)` as a power series in the single tracked parameter (the last
/// variable), to the given order.
pub fn period_ct(g: &LaurentPoly, grading: &[i64], order: usize, var: &str) -> Result<PowerSeries> {
    let map = period_ct_multi(std::slice::from_ref(g), grading, 1, order)?;
    Ok(PowerSeries::from_fn(var, order, |i| {
        map.get(&vec![i as i64]).cloned().unwrap_or_else(BigRational::zero)
    }))
}

/// Constant term of `g^m` in the torus variables, keyed by parameter
/// exponents. Computed from the full power, without pruning.
pub fn power_constant_terms(g: &LaurentPoly, m: u32, nparams: usize) -> BTreeMap<Vec<i64>, BigRational> {
    let d = g.nvars() - nparams;
    g.pow(m)
        .terms()
        .filter(|(e, _)| e[..d].iter().all(|&x| x == 0))
        .map(|(e, c)| (e[d..].to_vec(), c.clone()))
        .collect()
}

/// Two-point correlator `<σ_m([V]) P> = CT(L^{m+1})/(m+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correlator {
    pub m: u32,
    /// `q`-degree of the single surviving term, if any.
    pub qdeg: Option<i64>,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: BigRational,
}

pub fn correlators(lax: &LaxOperator, max_m: u32) -> Vec<Correlator> {
    (0..=max_m)
        .map(|m| {
            let cts = power_constant_terms(&lax.poly, m + 1, 1);
            debug_assert!(cts.len() <= 1, "q-degree is fixed by the grading");
            let (qdeg, value) = match cts.into_iter().next() {
                Some((e, c)) => (Some(e[0]), c / BigInt::from(m + 1)),
                None => (None, BigRational::zero()),
            };
            Correlator { m, qdeg, value }
        })
        .collect()
}

/// Coefficient `c·q^e` of a mirror monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coeff {
    #[serde(with = "crate::arith::serde_rational")]
    pub value: BigRational,
    pub qpow: u32,
}

impl Coeff {
    pub fn one() -> Self {
        Coeff {
            value: BigRational::one(),
            qpow: 0,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Coeff {
            value: &self.value * &other.value,
            qpow: self.qpow + other.qpow,
        }
    }
}

/// Coefficients `a_{i,j}` of `p_1..p_k` and `b_{i,j}` of `p_{k+1}..p_n`,
/// keyed by the vertex labels `u_{i,j}` and `v_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorCoeffs {
    pub values: BTreeMap<String, Coeff>,
}

impl MirrorCoeffs {
    /// All coefficients one, except `b_{k,n-k} = q`.
    pub fn canonical(k: usize, n: usize) -> Result<Self> {
        let delta = grass::build_delta(k, n)?;
        let values = delta
            .labels
            .iter()
            .map(|l| {
                let mut c = Coeff::one();
                if *l == VertexLabel::V(k, n - k) {
                    c.qpow = 1;
                }
                (l.to_string(), c)
            })
            .collect();
        Ok(MirrorCoeffs { values })
    }

    /// Image of `self` under the torus rescaling `X_{i,j} -> λ_{i,j} X_{i,j}`:
    /// the coefficient of `X^v` is multiplied by `λ^v`.
    pub fn rescaled(&self, k: usize, n: usize, lambda: &[BigRational]) -> Result<Self> {
        let delta = grass::build_delta(k, n)?;
        let mut out = self.clone();
        for (label, v) in delta.labels.iter().zip(&delta.vertices) {
            let key = label.to_string();
            let factor = v
                .iter()
                .zip(lambda)
                .fold(BigRational::one(), |acc, (&e, l)| acc * pow_rational(l, e));
            let c = out
                .values
                .get_mut(&key)
                .ok_or_else(|| MirrorSystemError::MissingCoefficient(key.clone()))?;
            c.value *= factor;
        }
        Ok(out)
    }

    fn get(&self, label: VertexLabel) -> Result<&Coeff> {
        let key = label.to_string();
        self.values
            .get(&key)
            .ok_or(MirrorSystemError::MissingCoefficient(key))
    }
}

/// The mirror system `1 - Σ_{j ∈ J_i} p_j = 0`, `i = 1..r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorSystem {
    pub k: usize,
    pub n: usize,
    pub degrees: Vec<u32>,
    /// Parts `J_i` of `{1..n}`.
    pub partition: Vec<Vec<usize>>,
    pub coeffs: MirrorCoeffs,
    /// `p_1..p_n`, with the `q` exponent in the last coordinate.
    pub polys: Vec<LaurentPoly>,
    /// `g_i = Σ_{j ∈ J_i} p_j`; the equations are `1 - g_i = 0`.
    pub equations: Vec<LaurentPoly>,
}

impl MirrorSystem {
    /// `Σ_{m_1..m_r} CT(g_1^{m_1} ... g_r^{m_r})` in `q`.
    pub fn period(&self, order: usize) -> Result<PowerSeries> {
        let grading = standard_grading(self.k, self.n);
        let map = period_ct_multi(&self.equations, &grading, 1, order)?;
        Ok(PowerSeries::from_fn("q", order, |i| {
            map.get(&vec![i as i64]).cloned().unwrap_or_else(BigRational::zero)
        }))
    }
}

/// Result of solving the single-monomial equations `c X_i^{±1} q^e = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedSystem {
    /// Indices of the torus variables that survive.
    pub variables: Vec<usize>,
    /// Remaining equations in the surviving variables and `q`.
    pub equations: Vec<LaurentPoly>,
}

impl MirrorSystem {
    /// Eliminates every equation that is a single monomial in one torus
    /// variable. Returns `None` when such a monomial involves several
    /// variables, or when the solved value needs a fractional power of `q`.
    pub fn reduce(&self) -> Option<ReducedSystem> {
        let dim = self.k * (self.n - self.k);
        // value[i] = (c, e): X_i = c q^e
        let mut value: Vec<Option<(BigRational, i64)>> = vec![None; dim];
        let mut rest = Vec::new();
        for eq in &self.equations {
            if eq.len() != 1 {
                rest.push(eq.clone());
                continue;
            }
            let (e, c) = eq.terms().next().expect("one term");
            let nonzero: Vec<usize> = (0..dim).filter(|&i| e[i] != 0).collect();
            let [i] = nonzero[..] else { return None };
            match e[i] {
                // c X_i q^t = 1
                1 => value[i] = Some((c.recip(), -e[dim])),
                // c X_i^{-1} q^t = 1
                -1 => value[i] = Some((c.clone(), e[dim])),
                _ => return None,
            }
        }
        let variables: Vec<usize> = (0..dim).filter(|&i| value[i].is_none()).collect();
        let equations = rest
            .iter()
            .map(|eq| {
                let mut out = LaurentPoly::zero(variables.len() + 1);
                for (e, c) in eq.terms() {
                    let mut coeff = c.clone();
                    let mut qexp = e[dim];
                    for (i, v) in value.iter().enumerate() {
                        if let Some((vc, ve)) = v {
                            coeff *= pow_rational(vc, e[i]);
                            qexp += ve * e[i];
                        }
                    }
                    if qexp < 0 {
                        return None;
                    }
                    let mut ne: Vec<i64> = variables.iter().map(|&i| e[i]).collect();
                    ne.push(qexp);
                    out.add_term(ne, coeff).expect("arity");
                }
                Some(out)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ReducedSystem { variables, equations })
    }
}

/// Consecutive blocks `{1..d_1}, {d_1+1..d_1+d_2}, ...`.
pub fn default_partition(degrees: &[u32]) -> Vec<Vec<usize>> {
    let mut start = 1;
    degrees
        .iter()
        .map(|&d| {
            let part: Vec<usize> = (start..start + d as usize).collect();
            start += d as usize;
            part
        })
        .collect()
}

/// Checks `a_{k+1-i,j-1} b_{k+1-i,j} = a_{k+1-i,j} b_{k-i,j}` for
/// `1 <= i <= k-1`, `1 <= j <= n-k-1`.
pub fn check_constraints(k: usize, n: usize, coeffs: &MirrorCoeffs) -> Result<()> {
    for i in 1..k {
        let row = k + 1 - i;
        for j in 1..(n - k) {
            let lhs = coeffs.get(VertexLabel::U(row, j - 1))?.mul(coeffs.get(VertexLabel::V(row, j))?);
            let rhs = coeffs.get(VertexLabel::U(row, j))?.mul(coeffs.get(VertexLabel::V(k - i, j))?);
            if lhs != rhs {
                return Err(MirrorSystemError::Constraint {
                    i: row,
                    im: k - i,
                    j,
                    jm: j - 1,
                });
            }
        }
    }
    Ok(())
}

/// Builds `p_1..p_n` from the nef-partition sets `E_1..E_n` and the
/// equations for the partition `J`.
pub fn mirror_system(
    k: usize,
    n: usize,
    degrees: &[u32],
    partition: &[Vec<usize>],
    coeffs: &MirrorCoeffs,
) -> Result<MirrorSystem> {
    let delta = grass::build_delta(k, n)?;
    if degrees.iter().map(|&d| d as usize).sum::<usize>() != n {
        return Err(MirrorSystemError::Degrees {
            degrees: degrees.to_vec(),
            n,
        });
    }
    if partition.len() != degrees.len() {
        return Err(MirrorSystemError::Partition(format!(
            "{} parts for {} degrees",
            partition.len(),
            degrees.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for (part, &d) in partition.iter().zip(degrees) {
        if part.len() != d as usize {
            return Err(MirrorSystemError::Partition(format!("part {part:?} does not have size {d}")));
        }
        for &j in part {
            if j == 0 || j > n || seen[j] {
                return Err(MirrorSystemError::Partition(format!("index {j} is out of range or repeated")));
            }
            seen[j] = true;
        }
    }
    check_constraints(k, n, coeffs)?;
    let dim = delta.dim;
    let polys = grass::nef_partition_sets(k, n)?
        .into_iter()
        .map(|set| {
            let mut p = LaurentPoly::zero(dim + 1);
            for label in set {
                let c = coeffs.get(label)?;
                let idx = delta.index_of(label).expect("label of delta");
                let mut e = delta.vertices[idx].clone();
                e.push(i64::from(c.qpow));
                p.add_term(e, c.value.clone())?;
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let equations = partition
        .iter()
        .map(|part| {
            part.iter()
                .try_fold(LaurentPoly::zero(dim + 1), |acc, &j| acc.add(&polys[j - 1]))
                .map_err(MirrorSystemError::from)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MirrorSystem {
        k,
        n,
        degrees: degrees.to_vec(),
        partition: partition.to_vec(),
        coeffs: coeffs.clone(),
        polys,
        equations,
    })
}

/// Points tagged with an invariant (such as a parameter degree) that a
/// lattice isomorphism must preserve.
pub type TaggedPoint = (Vec<i64>, i64);

/// Searches for `M ∈ GL(d, Z)` mapping the tagged point set `a` onto `b`.
pub fn lattice_equivalence(a: &[TaggedPoint], b: &[TaggedPoint]) -> Option<Vec<Vec<i64>>> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let d = a[0].0.len();
    if b[0].0.len() != d {
        return None;
    }
    // greedy basis of a
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (idx, (p, _)) in a.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(p.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect());
        if crate::arith::linalg::rank(&trial, d) == trial.len() {
            rows = trial;
            basis.push(idx);
        }
        if basis.len() == d {
            break;
        }
    }
    if basis.len() != d {
        return None;
    }
    let inv = invert(&rows)?;
    let target: std::collections::BTreeSet<TaggedPoint> = b.iter().cloned().collect();
    let mut chosen = Vec::with_capacity(d);
    search_images(a, b, &basis, &inv, &target, &mut chosen)
}

fn search_images(
    a: &[TaggedPoint],
    b: &[TaggedPoint],
    basis: &[usize],
    inv: &[Vec<BigRational>],
    target: &std::collections::BTreeSet<TaggedPoint>,
    chosen: &mut Vec<usize>,
) -> Option<Vec<Vec<i64>>> {
    let d = basis.len();
    if chosen.len() == d {
        // M = B^T (A^T)^{-1}: columns act on column vectors, M a_i = b_i.
        let mut m = vec![vec![0i64; d]; d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = BigRational::zero();
                for (t, &bi) in chosen.iter().enumerate() {
                    acc += BigRational::from_integer(BigInt::from(b[bi].0[r])) * &inv[c][t];
                }
                if !acc.is_integer() {
                    return None;
                }
                m[r][c] = i64::try_from(acc.to_integer()).ok()?;
            }
        }
        if det_abs_one(&m) {
            let image: std::collections::BTreeSet<TaggedPoint> = a
                .iter()
                .map(|(p, tag)| ((0..d).map(|r| (0..d).map(|c| m[r][c] * p[c]).sum()).collect(), *tag))
                .collect();
            if image == *target {
                return Some(m);
            }
        }
        return None;
    }
    let src = &a[basis[chosen.len()]];
    for (bi, dst) in b.iter().enumerate() {
        if dst.1 != src.1 || chosen.contains(&bi) {
            continue;
        }
        chosen.push(bi);
        if let Some(m) = search_images(a, b, basis, inv, target, chosen) {
            return Some(m);
        }
        chosen.pop();
    }
    None
}

/// Inverse of the matrix whose rows are `rows`, returned so that
/// `inv[c][t]` is the coefficient expressing `e_c` through row `t`.
fn invert(rows: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let d = rows.len();
    // Solve A^T X = I, A^T[c][t] = rows[t][c]; then e_c = Σ_t X[t][c] a_t, so
    // return inv[c][t] = X[t][c].
    let mut aug: Vec<Vec<BigRational>> = (0..d)
        .map(|c| {
            let mut row: Vec<BigRational> = (0..d).map(|t| rows[t][c].clone()).collect();
            row.extend((0..d).map(|j| if j == c { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..d {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * d {
                    let v = &aug[col][c] * &f;
                    aug[r][c] -= v;
                }
            }
        }
    }
    Some((0..d).map(|c| (0..d).map(|t| aug[t][d + c].clone()).collect()).collect())
}

fn det_abs_one(m: &[Vec<i64>]) -> bool {
    let rows: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let d = rows.len();
    let mut a = rows;
    let mut det = BigRational::one();
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..d {
            let f = &a[r][col] / &a[col][col];
            for c in col..d {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det == BigRational::one() || det == -BigRational::one()
}

/// Human-readable rendering of a polynomial in the `X_{i,j}` and `q`.
pub fn render(p: &LaurentPoly, k: usize, n: usize) -> String {
    let w = n - k;
    let dim = k * w;
    let mut parts = Vec::new();
    for (e, c) in p.terms() {
        let mut factors = Vec::new();
        if !c.is_one() {
            factors.push(format_rational(c));
        }
        if e.len() > dim && e[dim] != 0 {
            factors.push(if e[dim] == 1 { "q".to_string() } else { format!("q^{}", e[dim]) });
        }
        for (idx, &x) in e[..dim].iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = format!("X{}{}", idx / w + 1, idx % w + 1);
            factors.push(if x == 1 { name } else { format!("{name}^{x}") });
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        parts.push(factors.join("*"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
