//! Univariate polynomials over a prime field and the characteristic
//! polynomial / distinct-degree profile of a matrix over it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Polynomial over `Z/p`, coefficients stored low degree first. The zero
/// polynomial has no coefficients; otherwise the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, vec![])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `x - a`
    pub fn linear(p: u64, a: u64) -> Self {
        Self::new(p, vec![(p - a % p) % p, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, out)
    }

    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        let inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod(c, b, p)) % p;
            }
        }
        rem.truncate(dd);
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        FpPoly::new(p, coeffs)
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::constant(self.p, 1).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct-degree splitting of a squarefree polynomial: maps each degree
    /// `d` to the number of irreducible factors of that degree.
    pub fn distinct_degree_profile(&self) -> BTreeMap<usize, usize> {
        let p = self.p;
        let mut profile = BTreeMap::new();
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut d = 0usize;
        while let Some(deg) = f.degree() {
            if deg < 2 * (d + 1) {
                if deg > 0 {
                    *profile.entry(deg).or_insert(0) += 1;
                }
                break;
            }
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                profile.insert(d, gd / d);
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        profile
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        write!(f, "{} (mod {})", parts.join(" + "), self.p)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly({self})")
    }
}

/// Square matrix over `Z/p`, entries reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    /// Accepts arbitrary integers and reduces them; rejects non-square input
    /// and non-prime moduli.
    pub fn new(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::MalformedInput(
                "matrix must be square and nonempty".into(),
            ));
        }
        let pi = p as i128;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| (v as i128).rem_euclid(pi) as u64)
                    .collect()
            })
            .collect();
        Ok(FpMatrix { p, rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    /// Characteristic polynomial `det(x I - A)` via Hessenberg reduction.
    pub fn char_poly(&self) -> FpPoly {
        let p = self.p;
        let n = self.size();
        let mut h = self.rows.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if piv != m {
                h.swap(piv, m);
                for row in h.iter_mut() {
                    row.swap(piv, m);
                }
            }
            let inv = inv_mod(h[m][m - 1], p);
            for i in m + 1..n {
                let u = mul_mod(h[i][m - 1], inv, p);
                if u == 0 {
                    continue;
                }
                let pivot_row = h[m].clone();
                for (x, &y) in h[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul_mod(u, y, p)) % p;
                }
                for row in h.iter_mut() {
                    let s = mul_mod(u, row[i], p);
                    row[m] = (row[m] + s) % p;
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
        let mut polys = vec![FpPoly::constant(p, 1)];
        for m in 0..n {
            let mut next = FpPoly::linear(p, h[m][m]).mul(&polys[m]);
            let mut t = 1u64;
            for i in (0..m).rev() {
                t = mul_mod(t, h[i + 1][i], p);
                let c = mul_mod(t, h[i][m], p);
                if c != 0 {
                    next = next.sub(&polys[i].scale(c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }
}

/// Characteristic polynomial, squarefreeness and (when squarefree) the
/// distinct-degree profile of a matrix over `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyProfile {
    pub char_poly: FpPoly,
    pub squarefree: bool,
    /// `gcd(f, f')` when the polynomial is not squarefree.
    pub repeated_factor: Option<FpPoly>,
    pub degree_profile: Option<BTreeMap<usize, usize>>,
}

impl CharPolyProfile {
    pub fn require_squarefree(&self) -> Result<&BTreeMap<usize, usize>> {
        match (&self.degree_profile, &self.repeated_factor) {
            (Some(profile), _) => Ok(profile),
            (None, Some(w)) => Err(Error::NotSquarefree { witness: w.clone() }),
            (None, None) => unreachable!("profile is present exactly when squarefree"),
        }
    }
}

pub fn fp_char_poly_profile(matrix: &FpMatrix) -> CharPolyProfile {
    let f = matrix.char_poly();
    let g = f.gcd(&f.derivative());
    if g.degree() == Some(0) {
        let profile = f.distinct_degree_profile();
        CharPolyProfile {
            char_poly: f,
            squarefree: true,
            repeated_factor: None,
            degree_profile: Some(profile),
        }
    } else {
        CharPolyProfile {
            char_poly: f,
            squarefree: false,
            repeated_factor: Some(g),
            degree_profile: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn companion(p: u64, monic_low_first: &[u64]) -> FpMatrix {
        // companion matrix of x^d + c_{d-1} x^{d-1} + ... + c_0
        let d = monic_low_first.len() - 1;
        let mut rows = vec![vec![0i64; d]; d];
        for i in 1..d {
            rows[i][i - 1] = 1;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[d - 1] = -(monic_low_first[i] as i64);
        }
        FpMatrix::new(p, &rows).unwrap()
    }

    #[test]
    fn companion_of_irreducible_cubic() {
        let m = companion(2, &[1, 1, 0, 1]);
        let prof = fp_char_poly_profile(&m);
        assert_eq!(prof.char_poly, FpPoly::new(2, vec![1, 1, 0, 1]));
        assert!(prof.squarefree);
        assert_eq!(prof.degree_profile, Some([(3, 1)].into_iter().collect()));
    }

    #[test]
    fn diagonal_splits_completely() {
        let m = FpMatrix::new(5, &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]).unwrap();
        let prof = fp_char_poly_profile(&m);
        assert!(prof.squarefree);
        assert_eq!(prof.degree_profile, Some([(1, 3)].into_iter().collect()));
    }

    #[test]
    fn identity_is_not_squarefree() {
        let m = FpMatrix::new(3, &[vec![1, 0], vec![0, 1]]).unwrap();
        let prof = fp_char_poly_profile(&m);
        assert_eq!(
            prof.char_poly,
            FpPoly::linear(3, 1).mul(&FpPoly::linear(3, 1))
        );
        assert!(!prof.squarefree);
        assert_eq!(prof.repeated_factor, Some(FpPoly::linear(3, 1)));
        assert!(matches!(
            prof.require_squarefree(),
            Err(Error::NotSquarefree { .. })
        ));
    }

    #[test]
    fn p_th_power_has_zero_derivative() {
        // x^2 + 1 = (x + 1)^2 over Z/2
        let f = FpPoly::new(2, vec![1, 0, 1]);
        assert!(f.derivative().is_zero());
        assert!(!f.is_squarefree());
    }

    #[test]
    fn mixed_profile() {
        // (x^2 + x + 1)(x + 1) over Z/2
        let f = FpPoly::new(2, vec![1, 1, 1]).mul(&FpPoly::new(2, vec![1, 1]));
        assert_eq!(
            f.distinct_degree_profile(),
            [(1, 1), (2, 1)].into_iter().collect()
        );
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FpMatrix::new(4, &[vec![1]]).is_err());
        assert!(FpMatrix::new(5, &[vec![1, 2]]).is_err());
    }
}
