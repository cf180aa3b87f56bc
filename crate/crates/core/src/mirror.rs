//! Frobenius solutions at a point of maximal unipotent monodromy, the mirror
//! map, the Yukawa coupling in both coordinates and instanton numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{binomial, format_rational, ArithError, LogSeries, PowerSeries};
use crate::dop::{eval_poly, DOp, DOpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirrorError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Operator(#[from] DOpError),
    #[error("operator is not MUM at 0: {0}")]
    NotMum(String),
    #[error("Yukawa coupling needs an order 4 operator, found order {0}")]
    Order(usize),
    #[error("log degree {degree} needs an operator of order > {degree}, found {order}")]
    LogDegree { degree: usize, order: usize },
    #[error("instanton number n_{index} = {value} is not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("Yukawa series starts with {found}, expected {expected}")]
    ConstantTerm { found: String, expected: String },
}

pub type Result<T, E = MirrorError> = std::result::Result<T, E>;

/// Holomorphic solution `Φ₀` and the series part `ψ` of the logarithmic
/// solution `Φ₁ = Φ₀ log z + ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusPair {
    pub phi0: PowerSeries,
    pub psi: PowerSeries,
}

impl FrobeniusPair {
    /// `Φ₁` as a log-series with components `[ψ, Φ₀]`.
    pub fn phi1(&self) -> LogSeries {
        LogSeries::new(vec![self.psi.clone(), self.phi0.clone()]).expect("shared truncation")
    }
}

/// Yukawa couplings and instanton numbers of one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YukawaData {
    pub kz3: PowerSeries,
    pub kq3: PowerSeries,
    #[serde(serialize_with = "serialize_bigint")]
    pub n0: BigInt,
    #[serde(serialize_with = "serialize_bigints")]
    pub instantons: Vec<BigInt>,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigInt::to_string))
}

/// Checks that the `z⁰` part of `op` is `c·D^r` with `r >= 2`; returns `r`.
pub fn check_mum(op: &DOp) -> Result<usize> {
    let r = op.order();
    if r < 2 {
        return Err(MirrorError::NotMum(format!("order {r} < 2")));
    }
    let p0 = op.indicial();
    if let Some(j) = (0..r).find(|&j| !p0[j].is_zero()) {
        return Err(MirrorError::NotMum(format!(
            "indicial polynomial has a nonzero D^{j} coefficient"
        )));
    }
    if p0[r].is_zero() {
        return Err(MirrorError::NotMum("leading D-power vanishes at z = 0".into()));
    }
    Ok(r)
}

/// `P^{(l)} = Σ c_{i,j} C(j,l) z^i D^{j-l}`, the part of `P` acting on the
/// coefficient of `(log z)^{a+l}/(a+l)!` that lands on `(log z)^a/a!`.
fn log_shift(op: &DOp, l: usize) -> DOp {
    DOp::from_terms(
        op.var().to_string(),
        op.terms()
            .filter(|(&(_, j), _)| j >= l)
            .map(|(&(i, j), c)| ((i, j - l), c * BigRational::from_integer(binomial(j as u64, l as u64)))),
    )
}

/// Solves `P f = rhs` with `f(0) = f0` by the recurrence in `z`. `op` must be
/// MUM so that `P_0(m) != 0` for `m >= 1`.
fn solve_recurrence(op: &DOp, rhs: &PowerSeries, f0: BigRational) -> Result<PowerSeries> {
    let n = rhs.trunc();
    if !rhs.constant_term().is_zero() {
        return Err(MirrorError::NotMum("inhomogeneous term does not vanish at z = 0".into()));
    }
    let zdeg = op.zdeg();
    let parts: Vec<Vec<BigRational>> = (0..=zdeg).map(|i| op.part(i)).collect();
    let mut f = Vec::with_capacity(n + 1);
    f.push(f0);
    for m in 1..=n {
        let mut acc = rhs.coeffs()[m].clone();
        for (i, part) in parts.iter().enumerate().skip(1).take(m.min(zdeg)) {
            let prev: &BigRational = &f[m - i];
            if !prev.is_zero() {
                acc -= eval_poly(part, (m - i) as i64) * prev;
            }
        }
        f.push(acc / eval_poly(&parts[0], m as i64));
    }
    Ok(PowerSeries::new(op.var(), f)?)
}

/// The Frobenius solution with top log component `Φ₀` and log degree `s`:
/// `Σ_a f_a (log z)^a / a!` with `f_s = Φ₀` and `f_a(0) = 0` for `a < s`.
pub fn frobenius_solution(op: &DOp, trunc: usize, s: usize) -> Result<LogSeries> {
    let r = check_mum(op)?;
    if s >= r {
        return Err(MirrorError::LogDegree { degree: s, order: r });
    }
    let zero = PowerSeries::zero(op.var(), trunc);
    let phi0 = solve_recurrence(op, &zero, BigRational::one())?;
    let shifts: Vec<DOp> = (0..=s).map(|l| log_shift(op, l)).collect();
    let mut comps = vec![zero.clone(); s + 1];
    comps[s] = phi0;
    for a in (0..s).rev() {
        let mut rhs = zero.clone();
        for l in 1..=s - a {
            rhs = rhs.sub(&shifts[l].apply(&comps[a + l])?)?;
        }
        comps[a] = solve_recurrence(op, &rhs, BigRational::zero())?;
    }
    Ok(LogSeries::new(comps)?)
}

/// `Φ₀` and `ψ` to the given truncation.
pub fn frobenius(op: &DOp, trunc: usize) -> Result<FrobeniusPair> {
    let sol = frobenius_solution(op, trunc, 1)?;
    Ok(FrobeniusPair {
        phi0: sol.component(1),
        psi: sol.component(0),
    })
}

/// `q(z) = z·exp(ψ/Φ₀)` and its inverse `z(q)`, in variables `z` and `q`.
pub fn mirror_map(fp: &FrobeniusPair) -> Result<(PowerSeries, PowerSeries)> {
    let ratio = fp.psi.div(&fp.phi0)?;
    let n = ratio.trunc();
    let q_of_z = ratio.exp()?.shift_up(1).truncate(n)?;
    let z_of_q = q_of_z.revert()?.with_var("q");
    Ok((q_of_z, z_of_q))
}

/// `b_j(z) / z^j` for the `d/dz` form of `op`.
fn reduced_ddz(op: &DOp, j: usize, trunc: usize) -> Result<PowerSeries> {
    let ddz = op.to_ddz_form();
    let mut coeffs = vec![BigRational::zero(); trunc + 1];
    for (p, c) in ddz[j].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let shift = p.checked_sub(j).ok_or_else(|| MirrorError::NotMum("d/dz form is singular".into()))?;
        if shift <= trunc {
            coeffs[shift] = c.clone();
        }
    }
    Ok(PowerSeries::new(op.var(), coeffs)?)
}

/// `K_z^(3) = n₀·exp(-½ ∫₀^z [b₃/b₄ - 6/t] dt)` for an order four MUM
/// operator written as `Σ b_j(z) (d/dz)^j`.
pub fn yukawa_z(op: &DOp, n0: &BigInt, trunc: usize) -> Result<PowerSeries> {
    let r = op.order();
    if r != 4 {
        return Err(MirrorError::Order(r));
    }
    check_mum(op)?;
    let beta4 = reduced_ddz(op, 4, trunc + 1)?;
    let beta3 = reduced_ddz(op, 3, trunc + 1)?;
    let six = BigRational::from_integer(BigInt::from(6));
    // b₃/b₄ - 6/z = (β₃ - 6β₄) / (z β₄), and β₃(0) = 6 β₄(0) under MUM.
    let numer = beta3.sub(&beta4.scale(&six))?;
    assert!(numer.constant_term().is_zero(), "MUM forces a simple pole of residue 6");
    let g = numer.shift_down(1)?.div(&beta4.truncate(trunc)?)?;
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    let w = g.integral().scale(&half).truncate(trunc)?.exp()?;
    Ok(w.scale(&BigRational::from_integer(n0.clone())))
}

/// `K_q^(3)(q) = [(K_z^(3)/Φ₀²)·((q/z)·dz/dq)³]` composed with `z(q)`. The
/// result is known one order less far than the inputs.
pub fn yukawa_q(kz3: &PowerSeries, fp: &FrobeniusPair, z_of_q: &PowerSeries) -> Result<PowerSeries> {
    let n = kz3.trunc().min(fp.phi0.trunc()).min(z_of_q.trunc());
    let a = kz3.truncate(n)?.div(&fp.phi0.truncate(n)?.pow(2))?.compose(&z_of_q.truncate(n)?)?;
    // (q/z) dz/dq = θ_q z / z = 1 + θ_q u / u with u = z/q.
    let u = z_of_q.truncate(n)?.shift_down(1)?;
    let b = u.theta().div(&u)?.add(&PowerSeries::one(u.var(), u.trunc()))?;
    let out = a.truncate(b.trunc())?.mul(&b.pow(3))?;
    Ok(out)
}

/// Inverts the Lambert expansion `K_q = n₀ + Σ n_m m³ q^m/(1 - q^m)` for
/// `n_1..n_count`.
pub fn extract_instantons(kq3: &PowerSeries, count: usize) -> Result<Vec<BigInt>> {
    if kq3.trunc() < count {
        return Err(ArithError::BeyondTruncation {
            index: count,
            trunc: kq3.trunc(),
        }
        .into());
    }
    let mut n: Vec<BigInt> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut c = kq3.coeffs()[m].clone();
        for d in (1..m).filter(|d| m % d == 0) {
            c -= BigRational::from_integer(&n[d - 1] * BigInt::from(d).pow(3));
        }
        let v = c / BigInt::from(m).pow(3);
        if !v.is_integer() {
            return Err(MirrorError::NonIntegral {
                index: m,
                value: format_rational(&v),
            });
        }
        n.push(v.to_integer());
    }
    Ok(n)
}

/// Runs the mirror computation from an order four MUM operator.
pub fn yukawa_data(op: &DOp, n0: &BigInt, trunc: usize, count: usize) -> Result<YukawaData> {
    let work = trunc.max(count) + 1;
    let fp = frobenius(op, work)?;
    let (_, z_of_q) = mirror_map(&fp)?;
    let kz = yukawa_z(op, n0, work)?;
    let kq = yukawa_q(&kz, &fp, &z_of_q)?;
    let expected = BigRational::from_integer(n0.clone());
    if *kq.constant_term() != expected {
        return Err(MirrorError::ConstantTerm {
            found: format_rational(kq.constant_term()),
            expected: format_rational(&expected),
        });
    }
    let instantons = extract_instantons(&kq, count)?;
    Ok(YukawaData {
        kz3: kz.truncate(trunc)?,
        kq3: kq.truncate(trunc.min(kq.trunc()))?,
        n0: n0.clone(),
        instantons,
    })
}

/// Rewrites a `z`-log-series `Σ f_a L^a/a!` in the flat coordinate:
/// with `log z = t - λ(q)` and `z = z(q)` the `t^a/a!` component is
/// `Σ_{j >= a} f_j(z(q)) (-λ)^{j-a}/(j-a)!`.
fn to_flat(sol: &LogSeries, lambda: &PowerSeries, z_of_q: &PowerSeries) -> Result<LogSeries> {
    let n = z_of_q.trunc();
    let pulled: Vec<PowerSeries> = sol
        .components()
        .iter()
        .map(|f| f.compose(z_of_q))
        .collect::<Result<_, _>>()?;
    let neg = lambda.neg();
    let mut powers = vec![PowerSeries::one("q", n)];
    let mut fact = BigInt::one();
    for e in 1..pulled.len() {
        fact *= BigInt::from(e);
        let next = powers[e - 1].mul(&neg)?;
        powers.push(next);
    }
    let mut inv_fact = vec![BigRational::one()];
    for e in 1..pulled.len() {
        let prev = inv_fact[e - 1].clone();
        inv_fact.push(prev / BigInt::from(e));
    }
    let comps = (0..pulled.len())
        .map(|a| {
            let mut acc = PowerSeries::zero("q", n);
            for j in a..pulled.len() {
                acc = acc.add(&pulled[j].mul(&powers[j - a].scale(&inv_fact[j - a]))?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LogSeries::new(comps)?)
}

/// Applies `D_q² (n₀/K_q) D_q²` to the `Φ₀`-normalized Frobenius solutions
/// of log degree `0..order`, written in the flat coordinate. For the correct
/// Yukawa coupling every residual vanishes.
pub fn normal_form_residuals(op: &DOp, kq3: &PowerSeries, n0: &BigInt, trunc: usize) -> Result<Vec<LogSeries>> {
    let r = check_mum(op)?;
    let fp = frobenius(op, trunc)?;
    let (_, z_of_q) = mirror_map(&fp)?;
    let lambda = fp.psi.div(&fp.phi0)?.compose(&z_of_q)?;
    let omega0_inv = fp.phi0.compose(&z_of_q)?.inverse()?;
    let n = lambda.trunc().min(kq3.trunc());
    let weight = kq3
        .truncate(n)?
        .with_var("q")
        .inverse()?
        .scale(&BigRational::from_integer(n0.clone()));
    (0..r)
        .map(|s| {
            let sol = frobenius_solution(op, trunc, s)?;
            let flat = to_flat(&sol, &lambda, &z_of_q)?.mul_series(&omega0_inv)?.truncate(n)?;
            Ok(flat.theta().theta().mul_series(&weight)?.theta().theta())
        })
        .collect()
}

/// `K_q^(3)` from the second Frobenius solution: in the flat coordinate
/// `ω₂/ω₀ = t²/2 + g(q)` and `K_q = n₀ (1 + θ_q² g)`.
pub fn yukawa_q_from_periods(op: &DOp, n0: &BigInt, trunc: usize) -> Result<PowerSeries> {
    let fp = frobenius(op, trunc)?;
    let (_, z_of_q) = mirror_map(&fp)?;
    let lambda = fp.psi.div(&fp.phi0)?.compose(&z_of_q)?;
    let omega0_inv = fp.phi0.compose(&z_of_q)?.inverse()?;
    let sol = frobenius_solution(op, trunc, 2)?;
    let flat = to_flat(&sol, &lambda, &z_of_q)?.mul_series(&omega0_inv)?;
    let g = flat.component(0);
    let k = g.theta().theta().add(&PowerSeries::one("q", g.trunc()))?;
    Ok(k.scale(&BigRational::from_integer(n0.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, int};
    use num_traits::Signed;

    fn quartic() -> DOp {
        DOp::parse("D^4 - 16z(2D+1)^2(4D+1)(4D+3)").unwrap()
    }

    #[test]
    fn geometric_operator_is_not_mum() {
        let op = DOp::parse("(1-z)D - z").unwrap();
        assert!(matches!(frobenius(&op, 5), Err(MirrorError::NotMum(_))));
        let op = DOp::parse("D^2 + D - z").unwrap();
        assert!(matches!(frobenius(&op, 5), Err(MirrorError::NotMum(_))));
    }

    #[test]
    fn quartic_holomorphic_period() {
        let fp = frobenius(&quartic(), 6).unwrap();
        for m in 0..=6u64 {
            let expected = BigRational::new(factorial(4 * m) * factorial(2 * m), num_traits::pow(factorial(m), 6));
            assert_eq!(fp.phi0.coeffs()[m as usize], expected);
        }
        assert_eq!(fp.phi0.coeffs()[1], int(48));
        assert!(fp.psi.constant_term().is_zero());
    }

    #[test]
    fn log_solutions_are_annihilated() {
        let op = quartic();
        for s in 0..4 {
            let sol = frobenius_solution(&op, 10, s).unwrap();
            assert_eq!(sol.log_degree(), s);
            assert!(op.apply_log(&sol).unwrap().vanishes());
        }
        assert!(matches!(
            frobenius_solution(&op, 10, 4),
            Err(MirrorError::LogDegree { .. })
        ));
        let fp = frobenius(&op, 10).unwrap();
        assert!(op.apply_log(&fp.phi1()).unwrap().vanishes());
    }

    #[test]
    fn mirror_map_round_trip() {
        let fp = frobenius(&quartic(), 8).unwrap();
        let (q, z) = mirror_map(&fp).unwrap();
        assert_eq!(q.coeffs()[1], int(1));
        let back = q.compose(&z).unwrap();
        assert_eq!(back, PowerSeries::variable("q", 8));
        let trivial = FrobeniusPair {
            phi0: PowerSeries::one("z", 5),
            psi: PowerSeries::zero("z", 5),
        };
        assert_eq!(mirror_map(&trivial).unwrap().0, PowerSeries::variable("z", 5));
    }

    #[test]
    fn quartic_yukawa_is_geometric() {
        let k = yukawa_z(&quartic(), &BigInt::from(8), 10).unwrap();
        let expected = PowerSeries::from_fn("z", 10, |m| {
            BigRational::from_integer(BigInt::from(8) * BigInt::from(1024).pow(m as u32))
        });
        assert_eq!(k, expected);
        assert!(matches!(
            yukawa_z(&DOp::parse("D^3 - z").unwrap(), &BigInt::from(1), 4),
            Err(MirrorError::Order(3))
        ));
    }

    #[test]
    fn identity_map_keeps_yukawa() {
        let kz = PowerSeries::from_ints("z", &[5, 1, 2, 3, 4]).unwrap();
        let fp = FrobeniusPair {
            phi0: PowerSeries::one("z", 4),
            psi: PowerSeries::zero("z", 4),
        };
        let kq = yukawa_q(&kz, &fp, &PowerSeries::variable("q", 4)).unwrap();
        assert_eq!(kq, kz.truncate(3).unwrap().with_var("q"));
    }

    #[test]
    fn lambert_inversion() {
        let kq = PowerSeries::from_ints("q", &[7, 0, 0, 0, 0]).unwrap();
        assert_eq!(extract_instantons(&kq, 4).unwrap(), vec![BigInt::zero(); 4]);
        // n_1 = 2, n_2 = 3: c_2 = n_1 + 8 n_2 = 26
        let kq = PowerSeries::from_ints("q", &[1, 2, 26, 2]).unwrap();
        assert_eq!(extract_instantons(&kq, 3).unwrap(), vec![BigInt::from(2), BigInt::from(3), BigInt::zero()]);
        let bad = PowerSeries::from_ints("q", &[1, 2, 27]).unwrap();
        assert_eq!(
            extract_instantons(&bad, 2),
            Err(MirrorError::NonIntegral { index: 2, value: "25/8".into() })
        );
    }

    #[test]
    fn quartic_routes_agree() {
        let op = quartic();
        let n0 = BigInt::from(8);
        let data = yukawa_data(&op, &n0, 6, 5).unwrap();
        let other = yukawa_q_from_periods(&op, &n0, 7).unwrap();
        assert_eq!(data.kq3, other.truncate(6).unwrap());
        assert!(data.instantons.iter().all(|v| v.is_positive()));
        for res in normal_form_residuals(&op, &data.kq3, &n0, 7).unwrap() {
            assert!(res.vanishes());
        }
    }
}
