//! Chow rings of `P^n` and of the Milnor hypersurface `E = P(𝓔)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{check_n, Error, Result};

/// `sum c_k h^k` in `A(P^n) = Z[h]/(h^{n+1})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PnClass {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl PnClass {
    pub fn zero(n: usize) -> Self {
        PnClass {
            n,
            coeffs: vec![BigInt::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::hyperplane_power(n, 0)
    }

    /// `h^k`; zero once `k > n`.
    pub fn hyperplane_power(n: usize, k: usize) -> Self {
        let mut c = Self::zero(n);
        if k <= n {
            c.coeffs[k] = BigInt::one();
        }
        c
    }

    /// Truncates anything past `h^n`.
    pub fn from_coeffs(n: usize, coeffs: Vec<BigInt>) -> Self {
        let mut c = Self::zero(n);
        for (k, v) in coeffs.into_iter().enumerate().take(n + 1) {
            c.coeffs[k] = v;
        }
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Degree of the zero-cycle part.
    pub fn degree(&self) -> &BigInt {
        &self.coeffs[self.n]
    }

    pub fn scale(&self, c: &BigInt) -> PnClass {
        PnClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }
}

impl Add for &PnClass {
    type Output = PnClass;
    fn add(self, rhs: &PnClass) -> PnClass {
        assert_eq!(self.n, rhs.n, "different projective spaces");
        PnClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &PnClass {
    type Output = PnClass;
    fn mul(self, rhs: &PnClass) -> PnClass {
        assert_eq!(self.n, rhs.n, "different projective spaces");
        let mut out = PnClass::zero(self.n);
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in rhs.coeffs.iter().enumerate().take(self.n + 1 - a) {
                out.coeffs[a + b] += ca * cb;
            }
        }
        out
    }
}

impl fmt::Display for PnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => "h".to_string(),
                    _ => format!("h^{k}"),
                };
                match (mono.is_empty(), c.is_one(), (-c).is_one()) {
                    (true, _, _) => c.to_string(),
                    (false, true, _) => mono,
                    (false, _, true) => format!("-{mono}"),
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for PnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PnClass({self})")
    }
}

/// `c_i(𝓔)` for `𝓔 = (V/O(-1)) ⊗ O(1)` on `P(V^*) = P^n`.
///
/// The quotient `Q = V/O(-1)` has total Chern class `1/(1 - h)`, so
/// `c_j(Q) = h^j`; twisting the rank-`n` bundle by `O(1)` gives
/// `c_i = sum_j C(n - j, i - j) c_j(Q) h^{i-j}`.
pub fn chern_of_e(n: usize, i: usize) -> Result<PnClass> {
    check_n(n)?;
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let rank = n;
    let coefficient: BigInt = (0..=i)
        .map(|j| binomial(BigInt::from(rank - j), BigInt::from(i - j)))
        .sum();
    Ok(PnClass::hyperplane_power(n, i).scale(&coefficient))
}

/// Polynomial in `h` and `xi` with integer coefficients, keyed by `(a, b)`
/// for `h^a xi^b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HXiPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl HXiPoly {
    pub fn monomial(a: usize, b: usize, c: BigInt) -> Self {
        let mut p = Self::default();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coefficient(&self, a: usize, b: usize) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HXiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        // highest xi power first
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|x, y| (y.1, x.0).cmp(&(x.1, y.0)));
        for (k, (a, b, c)) in terms.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            match a {
                0 => {}
                1 => mono.push('h'),
                _ => mono.push_str(&format!("h^{a}")),
            }
            match b {
                0 => {}
                1 => mono.push_str("xi"),
                _ => mono.push_str(&format!("xi^{b}")),
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                }
                out.push_str(&mono);
            }
        }
        f.write_str(&out)
    }
}

/// Grothendieck relation `sum_{i=0}^n (-1)^i c_i(𝓔) xi^{n-i} = 0` in `A(E)`,
/// with `xi = c_1(O_{P(𝓔)}(1))`.
pub fn milnor_relation(n: usize) -> Result<HXiPoly> {
    check_n(n)?;
    let mut rel = HXiPoly::default();
    for i in 0..=n {
        let c = chern_of_e(n, i)?;
        let sign = if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        rel.add_term(i, n - i, sign * c.coefficient(i));
    }
    Ok(rel)
}

/// A class in `A(E)` in the basis `h^a xi^b`, `0 <= a <= n`, `0 <= b < n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EClass {
    n: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl EClass {
    pub fn zero(n: usize) -> Self {
        EClass {
            n,
            coeffs: vec![vec![BigInt::zero(); n]; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Reduces modulo `h^{n+1}` and the Grothendieck relation.
    pub fn from_poly(n: usize, p: &HXiPoly) -> Result<Self> {
        check_n(n)?;
        let rel = milnor_relation(n)?;
        // xi^n = -sum_{i>=1} r_i h^i xi^{n-i}
        let rewrite: Vec<(usize, BigInt)> = (1..=n)
            .map(|i| (i, -rel.coefficient(i, n - i)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut work: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (a, b, c) in p.terms() {
            if a <= n {
                *work.entry((b, a)).or_insert_with(BigInt::zero) += c;
            }
        }
        let mut out = Self::zero(n);
        // keyed by (xi power, h power) so the highest xi power is reduced first
        while let Some(((b, a), c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            if b < n {
                out.coeffs[a][b] += c;
                continue;
            }
            for (i, r) in &rewrite {
                if a + i <= n {
                    *work.entry((b - i, a + i)).or_insert_with(BigInt::zero) += &c * r;
                }
            }
        }
        Ok(out)
    }

    pub fn monomial(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_poly(n, &HXiPoly::monomial(a, b, BigInt::one()))
    }

    pub fn coefficient(&self, a: usize, b: usize) -> &BigInt {
        &self.coeffs[a][b]
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(b, c)| (a, b, c))
        })
    }

    pub fn to_poly(&self) -> HXiPoly {
        let mut p = HXiPoly::default();
        for (a, b, c) in self.terms() {
            p.add_term(a, b, c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Degree of the zero-cycle part: a point is `h^n xi^{n-1}`.
    pub fn degree(&self) -> &BigInt {
        &self.coeffs[self.n][self.n - 1]
    }

    pub fn add(&self, other: &EClass) -> EClass {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.coeffs[a][b] += c;
        }
        out
    }

    pub fn mul(&self, other: &EClass) -> EClass {
        assert_eq!(self.n, other.n);
        let mut p = HXiPoly::default();
        for (a, b, c) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                p.add_term(a + a2, b + b2, c * c2);
            }
        }
        Self::from_poly(self.n, &p).expect("n already validated")
    }
}

impl fmt::Display for EClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for EClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EClass({self})")
    }
}
