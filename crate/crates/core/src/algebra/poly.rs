//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is
//! graded lexicographic with `t0 > t1 > ... `. Zero coefficients are never
//! stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinearForm;
use crate::error::DivisionFails;

/// Maximum number of variables a polynomial may carry.
pub const MAX_VARS: usize = 24;

/// Exponent vector. Field order makes the derived `Ord` graded lex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            deg: 0,
            exps: [0; MAX_VARS],
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent overflow");
        }
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    fn bump(&self, var: usize, by: u32) -> Monomial {
        let mut m = *self;
        m.exps[var] = (m.exps[var] as u32 + by)
            .try_into()
            .expect("exponent overflow");
        m.deg += by as u16;
        m
    }

    fn lower(&self, var: usize) -> Option<Monomial> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[var] -= 1;
        m.deg -= 1;
        Some(m)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Target of a single variable in a substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subst {
    Var(usize),
    Int(BigInt),
}

/// Partial map from variable index to its replacement.
pub type Assignment = BTreeMap<usize, Subst>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable t{i} out of range");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(i), BigInt::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert!(exps.len() <= nvars, "exponent vector too long");
            p.add_term(Monomial::from_exponents(&exps), c);
        }
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let mut p = Self::zero(form.nvars());
        for (i, &c) in form.coeffs().iter().enumerate() {
            if c != 0 {
                p.add_term(Monomial::var(i), BigInt::from(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            m.exps[self.nvars..].iter().all(|&e| e == 0),
            "monomial uses a variable outside 0..{}",
            self.nvars
        );
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_exact_scalar(&self, c: &BigInt) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    debug_assert!((v % c).is_zero());
                    (*m, v / c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_linear(&self, form: &LinearForm) -> MultiPoly {
        assert_eq!(form.nvars(), self.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (i, &c) in form.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (m, v) in &self.terms {
                out.add_term(m.bump(i, 1), v * &c);
            }
        }
        out
    }

    /// Exact quotient by a linear form, or [`DivisionFails`] when the form
    /// does not divide.
    ///
    /// Division is by the leading term `c * t_v` of the form, where `v` is its
    /// first nonzero position; under graded lex that is the form's leading
    /// monomial, so a remainder whose leading term is not a multiple of it
    /// certifies non-divisibility.
    pub fn exact_div_linear(&self, form: &LinearForm) -> Result<MultiPoly, DivisionFails> {
        assert_eq!(form.nvars(), self.nvars, "variable count mismatch");
        let (lead_var, lead_coeff) = form.leading().expect("division by the zero form");
        let lead_coeff = BigInt::from(lead_coeff);
        let others: Vec<(usize, BigInt)> = form
            .coeffs()
            .iter()
            .enumerate()
            .filter(|&(i, &c)| c != 0 && i != lead_var)
            .map(|(i, &c)| (i, BigInt::from(c)))
            .collect();

        let mut rem = self.terms.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.pop_last() {
            let Some(qm) = m.lower(lead_var) else {
                return Err(DivisionFails);
            };
            let (qc, r) = c.div_rem(&lead_coeff);
            if !r.is_zero() {
                return Err(DivisionFails);
            }
            for (i, oc) in &others {
                let target = qm.bump(*i, 1);
                let delta = -(&qc * oc);
                match rem.entry(target) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Exact substitution; unassigned variables are left alone.
    pub fn substitute(&self, assignment: &Assignment) -> MultiPoly {
        for (&k, v) in assignment {
            assert!(k < self.nvars, "assignment key t{k} out of range");
            if let Subst::Var(w) = v {
                assert!(*w < self.nvars, "assignment target t{w} out of range");
            }
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            let mut nc = c.clone();
            for i in 0..self.nvars {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                match assignment.get(&i) {
                    None => nm = nm.bump(i, e),
                    Some(Subst::Var(w)) => nm = nm.bump(*w, e),
                    Some(Subst::Int(v)) => nc *= num_traits::pow(v.clone(), e as usize),
                }
            }
            out.add_term(nm, nc);
        }
        out
    }

    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (i, x) in point.iter().enumerate() {
                    let e = m.exponent(i);
                    if e > 0 {
                        v *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                v
            })
            .sum()
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = BigRational::from_integer(c.clone());
                for (i, x) in point.iter().enumerate() {
                    let e = m.exponent(i);
                    if e > 0 {
                        v *= num_traits::pow(x.clone(), e as usize);
                    }
                }
                v
            })
            .sum()
    }

    /// Replaces every `t_i` by `-t_i`.
    pub fn negate_vars(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.degree() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (0..self.nvars).map(|i| format!("t{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.default_names()))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn grlex_order() {
        // t0^2 > t0 t1 > t1^2 > t0 > t1 > 1
        let ms = [
            Monomial::from_exponents(&[2, 0]),
            Monomial::from_exponents(&[1, 1]),
            Monomial::from_exponents(&[0, 2]),
            Monomial::from_exponents(&[1, 0]),
            Monomial::from_exponents(&[0, 1]),
            Monomial::one(),
        ];
        for w in ms.windows(2) {
            assert!(w[0] > w[1], "{:?} should exceed {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn substitute_identity_case() {
        let f = &t(2, 1) - &t(2, 0);
        let a: Assignment = [(1, Subst::Var(0))].into_iter().collect();
        assert!(f.substitute(&a).is_zero());
    }

    #[test]
    fn substitute_var_rename() {
        let f = &t(3, 2) - &t(3, 0);
        let a: Assignment = [(0, Subst::Var(1))].into_iter().collect();
        assert_eq!(f.substitute(&a), &t(3, 2) - &t(3, 1));
    }

    #[test]
    fn substitute_integer() {
        let f = &(&t(2, 0) * &t(2, 0)) + &t(2, 1);
        let a: Assignment = [(0, Subst::Int(BigInt::from(3)))].into_iter().collect();
        assert_eq!(f.substitute(&a), &MultiPoly::constant(2, 9) + &t(2, 1));
    }

    #[test]
    fn exact_div_difference_of_squares() {
        let p = &(&t(2, 1) * &t(2, 1)) - &(&t(2, 0) * &t(2, 0));
        let l = LinearForm::character(2, 0, 1);
        assert_eq!(p.exact_div_linear(&l).unwrap(), &t(2, 1) + &t(2, 0));
    }

    #[test]
    fn exact_div_fails_on_coprime_form() {
        let p = &t(3, 1) - &t(3, 0);
        let l = LinearForm::character(3, 0, 2);
        assert_eq!(p.exact_div_linear(&l), Err(DivisionFails));
    }

    #[test]
    fn exact_div_constructed_multiple() {
        let n = 4;
        let mut q = MultiPoly::one(n + 1);
        for l in 2..=n {
            q = q.mul_linear(&LinearForm::character(n + 1, 1, l));
        }
        let chi = LinearForm::character(n + 1, 0, 1);
        let p = q.mul_linear(&chi);
        assert_eq!(p.exact_div_linear(&chi).unwrap(), q);
    }

    #[test]
    fn exact_div_rejects_non_integral_quotient() {
        // 2 t0 + 2 t1 is divisible by t0 + t1 but t0 + t1 is not by 2 t0 + 2 t1.
        let l = LinearForm::new(vec![2, 2]);
        let p = &t(2, 0) + &t(2, 1);
        assert_eq!(p.exact_div_linear(&l), Err(DivisionFails));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&t(2, 0) * &t(2, 0)).scale(&BigInt::from(3)) - &MultiPoly::constant(2, 1);
        assert_eq!(p.to_string(), "3*t0^2 - 1");
        assert_eq!((-&t(2, 1)).to_string(), "-t1");
    }
}
