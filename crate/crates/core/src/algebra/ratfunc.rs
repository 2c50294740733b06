//! Rational functions whose denominators factor into linear forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{Assignment, LinearForm, MultiPoly, Subst};
use crate::error::{Error, Result};

/// `numerator / (content * prod form^mult)`.
///
/// Normalized on construction: every stored form is primitive with a positive
/// leading coefficient, no form divides the numerator, `content` is positive
/// and coprime to the numerator's content, and zero has an empty denominator.
/// The representation is canonical, so `==` is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: BTreeMap<LinearForm, u32>,
    content: BigInt,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(nvars),
            den: BTreeMap::new(),
            content: BigInt::one(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: BTreeMap::new(),
            content: BigInt::one(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    /// `num / prod forms`, normalized.
    pub fn new<I>(num: MultiPoly, forms: I) -> Self
    where
        I: IntoIterator<Item = LinearForm>,
    {
        Self::from_parts(num, forms.into_iter().map(|f| (f, 1)), BigInt::one())
    }

    /// `num / (content * prod form^mult)`, normalized. `content` must be nonzero.
    pub fn from_parts<I>(mut num: MultiPoly, forms: I, content: BigInt) -> Self
    where
        I: IntoIterator<Item = (LinearForm, u32)>,
    {
        assert!(!content.is_zero(), "zero denominator content");
        let nvars = num.nvars();
        let mut content = content;
        if content.is_negative() {
            content = -content;
            num = -num;
        }
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (form, mult) in forms {
            if mult == 0 {
                continue;
            }
            assert_eq!(form.nvars(), nvars, "variable count mismatch");
            assert!(!form.is_zero(), "zero linear form in denominator");
            let (scalar, prim) = form.normalized();
            content *= BigInt::from(scalar.abs()).pow(mult);
            if scalar < 0 && mult % 2 == 1 {
                num = -num;
            }
            *den.entry(prim).or_insert(0) += mult;
        }
        if num.is_zero() {
            return Self::zero(nvars);
        }
        for (form, mult) in den.iter_mut() {
            while *mult > 0 {
                match num.exact_div_linear(form) {
                    Ok(q) => {
                        num = q;
                        *mult -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        den.retain(|_, m| *m > 0);
        let g = num.content().gcd(&content);
        if !g.is_one() {
            num = num.div_exact_scalar(&g);
            content /= g;
        }
        RatFunc { num, den, content }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// Denominator factors with multiplicities.
    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn denominator_degree(&self) -> u32 {
        self.den.values().sum()
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && self.content.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_polynomial(self) -> Option<MultiPoly> {
        self.is_polynomial().then_some(self.num)
    }

    pub fn scale(&self, c: &BigInt) -> RatFunc {
        Self::from_parts(
            self.num.scale(c),
            self.den.iter().map(|(f, &m)| (f.clone(), m)),
            self.content.clone(),
        )
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one(self.nvars());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reciprocal of a product of linear forms.
    pub fn inverse_of_forms<I>(nvars: usize, forms: I) -> RatFunc
    where
        I: IntoIterator<Item = LinearForm>,
    {
        Self::new(MultiPoly::one(nvars), forms)
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let mut den = BigRational::from_integer(self.content.clone());
        for (f, m) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(Error::VanishingDenominator);
            }
            den *= num_traits::pow(v, *m as usize);
        }
        Ok(self.num.eval(point) / den)
    }

    /// Substitution applied to numerator and every denominator form.
    pub fn substitute(&self, assignment: &Assignment) -> Result<RatFunc> {
        let num = self.num.substitute(assignment);
        let mut content = self.content.clone();
        let mut forms = Vec::new();
        for (f, &m) in &self.den {
            let mut coeffs = vec![0i64; f.nvars()];
            let mut constant = BigInt::zero();
            for (i, &c) in f.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                match assignment.get(&i) {
                    None => coeffs[i] += c,
                    Some(Subst::Var(w)) => coeffs[*w] += c,
                    Some(Subst::Int(v)) => constant += v * c,
                }
            }
            let form = LinearForm::new(coeffs);
            if form.is_zero() {
                if constant.is_zero() {
                    return Err(Error::VanishingDenominator);
                }
                content *= constant.pow(m);
            } else if !constant.is_zero() {
                // affine denominators are outside this type
                return Err(Error::MalformedInput(
                    "substitution produced an affine denominator".into(),
                ));
            } else {
                forms.push((form, m));
            }
        }
        Ok(Self::from_parts(num, forms, content))
    }

    /// Replaces every `t_i` by `-t_i`.
    pub fn negate_vars(&self) -> RatFunc {
        let flips = self.denominator_degree() % 2 == 1;
        let num = self.num.negate_vars();
        Self::from_parts(
            if flips { -num } else { num },
            self.den.iter().map(|(f, &m)| (f.clone(), m)),
            self.content.clone(),
        )
    }
}

/// Exact normalized sum over a shared common denominator.
///
/// The common denominator takes each linear factor at its maximal
/// multiplicity across the terms; the combined numerator is then reduced by
/// exact division against each factor. Terms are expanded in parallel; the
/// result does not depend on the schedule or on term order.
pub fn rat_sum(nvars: usize, terms: &[RatFunc]) -> RatFunc {
    let live: Vec<&RatFunc> = terms.iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return RatFunc::zero(nvars);
    }
    for t in &live {
        assert_eq!(t.nvars(), nvars, "variable count mismatch");
    }
    let mut common: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let mut content = BigInt::one();
    for t in &live {
        for (f, &m) in &t.den {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        content = content.lcm(&t.content);
    }
    let numerator = live
        .par_iter()
        .map(|t| {
            let mut p = t.num.scale(&(&content / &t.content));
            for (f, &m) in &common {
                let have = t.den.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    p = p.mul_linear(f);
                }
            }
            p
        })
        .reduce(
            || MultiPoly::zero(nvars),
            |mut a, b| {
                if a.len() < b.len() {
                    let mut b = b;
                    b += &a;
                    b
                } else {
                    a += &b;
                    a
                }
            },
        );
    RatFunc::from_parts(numerator, common, content)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        rat_sum(self.nvars(), &[self.clone(), rhs.clone()])
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
            content: self.content.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let forms = self
            .den
            .iter()
            .chain(rhs.den.iter())
            .map(|(f, &m)| (f.clone(), m));
        RatFunc::from_parts(&self.num * &rhs.num, forms, &self.content * &rhs.content)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let mut parts = Vec::new();
        if !self.content.is_one() {
            parts.push(self.content.to_string());
        }
        for (form, m) in &self.den {
            if *m == 1 {
                parts.push(format!("({form})"));
            } else {
                parts.push(format!("({form})^{m}"));
            }
        }
        write!(f, "({}) / ({})", self.num, parts.join("*"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(n: usize, i: usize, j: usize) -> LinearForm {
        LinearForm::character(n + 1, i, j)
    }

    fn chi_poly(n: usize, i: usize, j: usize) -> MultiPoly {
        MultiPoly::from_linear(&chi(n, i, j))
    }

    #[test]
    fn symmetric_pair_cancels() {
        let a = RatFunc::inverse_of_forms(2, [chi(1, 0, 1)]);
        let b = RatFunc::inverse_of_forms(2, [chi(1, 1, 0)]);
        assert!(rat_sum(2, &[a, b]).is_zero());
    }

    #[test]
    fn two_term_sum_is_minus_one() {
        let a = RatFunc::new(chi_poly(2, 0, 2), [chi(2, 2, 1)]);
        let b = RatFunc::new(chi_poly(2, 0, 1), [chi(2, 1, 2)]);
        assert_eq!(rat_sum(3, &[a, b]), RatFunc::constant(3, -1));
    }

    #[test]
    fn six_term_character_sum_is_six() {
        // sum over i != j of chi_ij^2 / (chi_il chi_lj), l the remaining index
        let n = 2;
        let mut terms = Vec::new();
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    continue;
                }
                let l = 3 - i - j;
                let num = chi_poly(n, i, j).pow(2);
                terms.push(RatFunc::new(num, [chi(n, i, l), chi(n, l, j)]));
            }
        }
        assert_eq!(rat_sum(3, &terms), RatFunc::constant(3, 6));
    }

    #[test]
    fn sign_is_absorbed_into_numerator() {
        // 1 / (t1 - t0) = -1 / (t0 - t1)
        let r = RatFunc::inverse_of_forms(2, [chi(1, 0, 1)]);
        let (form, m) = r.denominator().next().unwrap();
        assert_eq!(form.coeffs(), &[1, -1]);
        assert_eq!(m, 1);
        assert_eq!(r.numerator(), &MultiPoly::constant(2, -1));
    }

    #[test]
    fn content_is_reduced() {
        let num = MultiPoly::var(2, 0).scale(&BigInt::from(4));
        let r = RatFunc::from_parts(num, [(chi(1, 1, 0), 1)], BigInt::from(6));
        assert_eq!(r.content(), &BigInt::from(3));
        assert_eq!(r.numerator(), &MultiPoly::var(2, 0).scale(&BigInt::from(2)));
    }

    #[test]
    fn eval_at_point() {
        let r = RatFunc::new(chi_poly(2, 0, 2), [chi(2, 2, 1)]);
        let pt: Vec<BigRational> = [0, 1, 3]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        // (3 - 0) / (1 - 3)
        assert_eq!(
            r.eval(&pt).unwrap(),
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
    }

    #[test]
    fn substitution_into_vanishing_denominator_errors() {
        let r = RatFunc::inverse_of_forms(2, [chi(1, 0, 1)]);
        let a: Assignment = [(1, Subst::Var(0))].into_iter().collect();
        assert_eq!(r.substitute(&a), Err(Error::VanishingDenominator));
    }
}
