//! Fixed-point localization on `Y`: equivariant multiplicities, the
//! equivariant Poincaré pairing and its non-equivariant specialization.
//!
//! Two evaluation regimes are offered. [`Regime::Symbolic`] sums the
//! localization fractions exactly in `Q(t_0..t_n)`. [`Regime::Sampled`]
//! evaluates the same fractions at exact rational points: the pairing
//! polynomial is recovered at `t = 0` by interpolation along the ray
//! `lambda * (0, 1, 3, 7, ...)`, and identities between rational functions are
//! checked along a line through that base point, with as many points as the
//! degree bound requires.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{rat_sum, Assignment, IntMatrix, LinearForm, MultiPoly, RatFunc, Subst};
use crate::error::{check_n, Error, Result};
use crate::gkm::{character, class_of_ei, EqClass, FixedPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Symbolic,
    Sampled,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Symbolic => "symbolic",
            Regime::Sampled => "sampled",
        })
    }
}

/// The evaluation points and degree bound behind a sampled result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    pub points: Vec<Vec<BigInt>>,
    pub degree_bound: u32,
}

/// `prod_{l != i,j} chi_il chi_lj`, the tangent weights at `z_ij`.
pub fn weight_forms(n: usize, z: FixedPoint) -> Vec<LinearForm> {
    z.others(n)
        .flat_map(|l| [character(n, z.i, l), character(n, l, z.j)])
        .collect()
}

/// `e_{z,Y}(alpha) = alpha_z / prod_{l != i,j} chi_il chi_lj`.
pub fn eq_multiplicity(alpha: &EqClass, z: FixedPoint) -> RatFunc {
    let n = alpha.n();
    alpha.get(z) * &RatFunc::inverse_of_forms(n + 1, weight_forms(n, z))
}

fn pairing_terms(alpha: &EqClass, beta: &EqClass) -> Result<Vec<RatFunc>> {
    alpha.same_n(beta)?;
    let n = alpha.n();
    Ok(alpha
        .iter()
        .zip(beta.values())
        .filter(|((_, a), b)| !a.is_zero() && !b.is_zero())
        .map(|((z, a), b)| {
            let ab = a * b;
            RatFunc::from_parts(
                ab.numerator().clone(),
                ab.denominator()
                    .map(|(f, m)| (f.clone(), m))
                    .chain(weight_forms(n, z).into_iter().map(|f| (f, 1))),
                ab.content().clone(),
            )
        })
        .collect())
}

/// Localized sum of the equivariant pairing as a rational function.
pub fn pairing_rational(alpha: &EqClass, beta: &EqClass) -> Result<RatFunc> {
    let terms = pairing_terms(alpha, beta)?;
    Ok(rat_sum(alpha.n() + 1, &terms))
}

/// Equivariant Poincaré pairing `<alpha, beta>_T` in `Z[t_0..t_n]`.
pub fn pairing_t(alpha: &EqClass, beta: &EqClass) -> Result<MultiPoly> {
    let sum = pairing_rational(alpha, beta)?;
    if !sum.is_polynomial() {
        return Err(Error::NonIntegralPairing(sum.to_string()));
    }
    Ok(sum.into_polynomial().expect("checked"))
}

/// Degree of the product of the underlying non-equivariant classes.
pub fn deg_pairing(alpha: &EqClass, beta: &EqClass) -> Result<BigInt> {
    let p = pairing_t(alpha, beta)?;
    let zero = vec![BigInt::zero(); alpha.n() + 1];
    Ok(p.eval_int(&zero))
}

/// `(0, 1, 3, 7, ..., 2^n - 1)`.
pub fn sample_base(n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| (BigInt::one() << k) - 1).collect()
}

fn to_rational(point: &[BigInt]) -> Vec<BigRational> {
    point
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect()
}

fn eval_terms(terms: &[RatFunc], point: &[BigInt]) -> Result<BigRational> {
    let pt = to_rational(point);
    terms.iter().map(|t| t.eval(&pt)).sum()
}

fn term_degree_bound(terms: &[RatFunc]) -> u32 {
    terms
        .iter()
        .map(|t| {
            let d = t.numerator().total_degree().unwrap_or(0) as i64;
            (d - t.denominator_degree() as i64).max(0) as u32
        })
        .max()
        .unwrap_or(0)
}

/// Value at zero of the polynomial through `(x_k, y_k)`.
fn interpolate_at_zero(xs: &[BigRational], ys: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, (xk, yk)) in xs.iter().zip(ys).enumerate() {
        let mut w = yk.clone();
        for (m, xm) in xs.iter().enumerate() {
            if m != k {
                w *= -xm / (xk - xm);
            }
        }
        acc += w;
    }
    acc
}

/// `deg_pairing` by exact evaluation along `lambda * base`, assuming the
/// pairing is a polynomial.
pub fn deg_pairing_sampled(alpha: &EqClass, beta: &EqClass) -> Result<(BigInt, SamplePlan)> {
    let terms = pairing_terms(alpha, beta)?;
    let base = sample_base(alpha.n());
    let bound = term_degree_bound(&terms);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut points = Vec::new();
    for lambda in 1..=(bound as i64 + 1) {
        let pt: Vec<BigInt> = base.iter().map(|b| b * lambda).collect();
        ys.push(eval_terms(&terms, &pt)?);
        xs.push(BigRational::from_integer(BigInt::from(lambda)));
        points.push(pt);
    }
    let v = interpolate_at_zero(&xs, &ys);
    if !v.is_integer() {
        return Err(Error::NonIntegralPairing(format!("sampled value {v}")));
    }
    Ok((
        v.to_integer(),
        SamplePlan {
            points,
            degree_bound: bound,
        },
    ))
}

pub fn deg_pairing_in(regime: Regime, alpha: &EqClass, beta: &EqClass) -> Result<BigInt> {
    match regime {
        Regime::Symbolic => deg_pairing(alpha, beta),
        Regime::Sampled => deg_pairing_sampled(alpha, beta).map(|(v, _)| v),
    }
}

/// Matrix of `deg([E_i] . [E_j])`.
pub fn orthogonality_matrix(n: usize) -> Result<IntMatrix> {
    orthogonality_matrix_in(Regime::Symbolic, n)
}

pub fn orthogonality_matrix_in(regime: Regime, n: usize) -> Result<IntMatrix> {
    check_n(n)?;
    let fibers: Vec<EqClass> = (0..=n).map(|i| class_of_ei(n, i)).collect::<Result<_>>()?;
    let entries: Vec<BigInt> = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(i, j)| deg_pairing_in(regime, &fibers[i], &fibers[j]))
        .collect::<Result<_>>()?;
    Ok(entries.chunks(n + 1).map(|r| r.to_vec()).collect())
}

pub fn sign_for(n: usize) -> i64 {
    if (n - 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Outcome of checking the interpolation identity behind the self-pairing
/// of a fiber class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangeReport {
    pub n: usize,
    pub i: usize,
    pub expected: i64,
    /// Value after `t_i -> t_j`, for each `j != i`.
    pub substituted: Vec<(usize, RatFunc)>,
    pub symbolic_sum: RatFunc,
    pub ok: bool,
    pub witness: Option<String>,
    pub plan: Option<SamplePlan>,
}

/// The terms `prod_{l != i,s} chi_il / prod_{l != i,s} chi_ls`, `s != i`.
fn lagrange_terms(n: usize, i: usize) -> Vec<RatFunc> {
    (0..=n)
        .filter(|&s| s != i)
        .map(|s| {
            let others = || (0..=n).filter(move |&l| l != i && l != s);
            let num = others().fold(MultiPoly::one(n + 1), |p, l| {
                p.mul_linear(&character(n, i, l))
            });
            RatFunc::new(num, others().map(|l| character(n, l, s)))
        })
        .collect()
}

fn check_lagrange_args(n: usize, i: usize) -> Result<()> {
    check_n(n)?;
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

/// Checks that `f(t_i) = sum_s prod chi_il / prod chi_ls` takes the value
/// `(-1)^(n-1)` at every `t_i = t_j` and is identically that constant.
pub fn lagrange_verify(n: usize, i: usize) -> Result<LagrangeReport> {
    check_lagrange_args(n, i)?;
    let expected = sign_for(n);
    let target = RatFunc::constant(n + 1, expected);
    let terms = lagrange_terms(n, i);
    let mut substituted = Vec::new();
    let mut witness = None;
    for j in (0..=n).filter(|&j| j != i) {
        let assignment: Assignment = [(i, Subst::Var(j))].into_iter().collect();
        let subs: Vec<RatFunc> = terms
            .iter()
            .map(|t| t.substitute(&assignment))
            .collect::<Result<_>>()?;
        let v = rat_sum(n + 1, &subs);
        if v != target && witness.is_none() {
            witness = Some(format!("t{i} -> t{j} gives {v}"));
        }
        substituted.push((j, v));
    }
    let symbolic_sum = rat_sum(n + 1, &terms);
    if symbolic_sum != target && witness.is_none() {
        witness = Some(format!("full sum is {symbolic_sum}"));
    }
    Ok(LagrangeReport {
        n,
        i,
        expected,
        substituted,
        symbolic_sum,
        ok: witness.is_none(),
        witness,
        plan: None,
    })
}

/// Sampled variant: evaluates `f` and each substituted `f` at
/// `base + s * (0, 1, ..., n)` for enough `s` to pin a rational function whose
/// combined numerator has degree at most the number of distinct denominators.
pub fn lagrange_verify_sampled(n: usize, i: usize) -> Result<LagrangeReport> {
    check_lagrange_args(n, i)?;
    let expected = sign_for(n);
    let target = BigRational::from_integer(BigInt::from(expected));
    let terms = lagrange_terms(n, i);
    let bound = (n * (n - 1) / 2) as u32;
    let base = sample_base(n);
    let points: Vec<Vec<BigInt>> = (0..=bound as i64)
        .map(|s| {
            base.iter()
                .enumerate()
                .map(|(k, b)| b + BigInt::from(s * k as i64))
                .collect()
        })
        .collect();
    let mut witness = None;
    for pt in &points {
        let v = eval_terms(&terms, pt)?;
        if v != target && witness.is_none() {
            witness = Some(format!("f({pt:?}) = {v}"));
        }
        for j in (0..=n).filter(|&j| j != i) {
            let mut q = pt.clone();
            q[i] = q[j].clone();
            let v = eval_terms(&terms, &q)?;
            if v != target && witness.is_none() {
                witness = Some(format!("t{i} -> t{j} at {pt:?} gives {v}"));
            }
        }
    }
    Ok(LagrangeReport {
        n,
        i,
        expected,
        substituted: Vec::new(),
        symbolic_sum: RatFunc::constant(n + 1, expected),
        ok: witness.is_none(),
        witness,
        plan: Some(SamplePlan {
            points,
            degree_bound: bound,
        }),
    })
}

pub fn lagrange_verify_in(regime: Regime, n: usize, i: usize) -> Result<LagrangeReport> {
    match regime {
        Regime::Symbolic => lagrange_verify(n, i),
        Regime::Sampled => lagrange_verify_sampled(n, i),
    }
}
