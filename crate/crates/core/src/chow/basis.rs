use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{determinant, solve_integral, IntMatrix};
use crate::chow::ring::{EClass, HXiPoly, PnClass};
use crate::error::{check_n, Error, Result};
use crate::gkm::{class_h, class_of_ei, class_x, EqClass};
use crate::localization::{deg_pairing_in, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `h^h_exp * x^x_exp`, with `x_exp <= n - 2`.
    Power {
        x_exp: usize,
        h_exp: usize,
    },
    Fiber(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::Power { x_exp: 0, h_exp: 0 } => f.write_str("1"),
            BasisLabel::Power { x_exp, h_exp } => {
                let mut parts = Vec::new();
                match h_exp {
                    0 => {}
                    1 => parts.push("h".to_string()),
                    e => parts.push(format!("h^{e}")),
                }
                match x_exp {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    e => parts.push(format!("x^{e}")),
                }
                f.write_str(&parts.join("*"))
            }
            BasisLabel::Fiber(i) => write!(f, "E{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: BasisLabel,
    pub class: EqClass,
}

pub fn basis_labels(n: usize) -> Vec<BasisLabel> {
    let mut labels = Vec::with_capacity(n * (n + 1));
    for x_exp in 0..n.saturating_sub(1) {
        for h_exp in 0..=n {
            labels.push(BasisLabel::Power { x_exp, h_exp });
        }
    }
    labels.extend((0..=n).map(BasisLabel::Fiber));
    labels
}

pub fn basis_of_y(n: usize) -> Result<Vec<BasisElement>> {
    check_n(n)?;
    let h = class_h(n)?;
    let x = class_x(n)?;
    basis_labels(n)
        .into_iter()
        .map(|label| {
            let class = match label {
                BasisLabel::Power { x_exp, h_exp } => &h.pow(h_exp as u32) * &x.pow(x_exp as u32),
                BasisLabel::Fiber(i) => class_of_ei(n, i)?,
            };
            Ok(BasisElement { label, class })
        })
        .collect()
}

fn pairing_matrix(regime: Regime, rows: &[EqClass], cols: &[EqClass]) -> Result<IntMatrix> {
    let cells: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|r| (0..cols.len()).map(move |c| (r, c)))
        .collect();
    let values = cells
        .par_iter()
        .map(|&(r, c)| deg_pairing_in(regime, &rows[r], &cols[c]))
        .collect::<Result<Vec<_>>>()?;
    Ok(values
        .chunks(cols.len().max(1))
        .map(<[BigInt]>::to_vec)
        .collect())
}

pub fn gram_matrix(n: usize) -> Result<IntMatrix> {
    gram_matrix_in(Regime::Symbolic, n)
}

pub fn gram_matrix_in(regime: Regime, n: usize) -> Result<IntMatrix> {
    let classes: Vec<EqClass> = basis_of_y(n)?.into_iter().map(|b| b.class).collect();
    symmetric_gram(regime, &classes)
}

fn symmetric_gram(regime: Regime, classes: &[EqClass]) -> Result<IntMatrix> {
    let k = classes.len();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|r| (r..k).map(move |c| (r, c))).collect();
    let values = cells
        .par_iter()
        .map(|&(r, c)| deg_pairing_in(regime, &classes[r], &classes[c]))
        .collect::<Result<Vec<_>>>()?;
    let mut m = vec![vec![BigInt::zero(); k]; k];
    for (&(r, c), v) in cells.iter().zip(values) {
        m[c][r] = v.clone();
        m[r][c] = v;
    }
    Ok(m)
}

/// Degree pairing matrix of arbitrary classes, rows against columns.
pub fn intersection_matrix(
    regime: Regime,
    rows: &[EqClass],
    cols: &[EqClass],
) -> Result<IntMatrix> {
    pairing_matrix(regime, rows, cols)
}

/// `α_0..α_{n-2}` in `A(P^n)` and `β` in `A(Z) = Z^{n+1}` with
/// `γ = sum_a x^a i^*(α_a) + sum_i β_i [E_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub alphas: Vec<PnClass>,
    pub beta: Vec<BigInt>,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, alpha) in self.alphas.iter().enumerate() {
            if !alpha.is_zero() {
                parts.push(format!("alpha_{a} = {alpha}"));
            }
        }
        let beta: Vec<String> = self.beta.iter().map(ToString::to_string).collect();
        parts.push(format!("beta = ({})", beta.join(", ")));
        f.write_str(&parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub coords: Vec<BigInt>,
}

impl Decomposition {
    pub fn labelled(&self) -> impl Iterator<Item = (BasisLabel, &BigInt)> {
        basis_labels(self.n).into_iter().zip(&self.coords)
    }

    pub fn coordinate(&self, label: BasisLabel) -> BigInt {
        self.labelled()
            .find(|(l, _)| *l == label)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn normal_form(&self) -> NormalForm {
        let n = self.n;
        let mut alphas = vec![PnClass::zero(n); n.saturating_sub(1)];
        let mut beta = vec![BigInt::zero(); n + 1];
        for (label, c) in self.labelled() {
            match label {
                BasisLabel::Power { x_exp, h_exp } => {
                    alphas[x_exp] = &alphas[x_exp] + &PnClass::hyperplane_power(n, h_exp).scale(c);
                }
                BasisLabel::Fiber(i) => beta[i] = c.clone(),
            }
        }
        NormalForm { alphas, beta }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (label, c) in self.labelled().filter(|(_, c)| !c.is_zero()) {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (abs.is_one(), label) {
                (true, _) => out.push_str(&label.to_string()),
                (false, BasisLabel::Power { x_exp: 0, h_exp: 0 }) => out.push_str(&abs.to_string()),
                (false, _) => out.push_str(&format!("{abs}*{label}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Basis of `A(Y)` together with its Gram matrix, for repeated solves.
#[derive(Debug, Clone)]
pub struct ChowBasis {
    n: usize,
    regime: Regime,
    elements: Vec<BasisElement>,
    gram: IntMatrix,
}

impl ChowBasis {
    pub fn new(n: usize) -> Result<Self> {
        Self::new_in(Regime::Symbolic, n)
    }

    pub fn new_in(regime: Regime, n: usize) -> Result<Self> {
        let elements = basis_of_y(n)?;
        let classes: Vec<EqClass> = elements.iter().map(|b| b.class.clone()).collect();
        let gram = symmetric_gram(regime, &classes)?;
        Ok(ChowBasis {
            n,
            regime,
            elements,
            gram,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.gram)
    }

    pub fn pairings_with_basis(&self, gamma: &EqClass) -> Result<Vec<BigInt>> {
        if gamma.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: gamma.n(),
                right: self.n,
            });
        }
        self.elements
            .par_iter()
            .map(|b| deg_pairing_in(self.regime, gamma, &b.class))
            .collect()
    }

    pub fn decompose(&self, gamma: &EqClass) -> Result<Decomposition> {
        let rhs = self.pairings_with_basis(gamma)?;
        let coords = solve_integral(&self.gram, &rhs)?;
        Ok(Decomposition { n: self.n, coords })
    }

    pub fn recombine(&self, coords: &[BigInt]) -> Result<EqClass> {
        if coords.len() != self.elements.len() {
            return Err(Error::DimensionMismatch {
                left: coords.len(),
                right: self.elements.len(),
            });
        }
        let mut acc = EqClass::zero(self.n);
        for (c, b) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                acc = &acc + &b.class.scale(c);
            }
        }
        Ok(acc)
    }
}

pub fn decompose(gamma: &EqClass) -> Result<Decomposition> {
    ChowBasis::new(gamma.n())?.decompose(gamma)
}

/// Moves every `β H^j` (`j >= 1`) on component `i` of `Z` into the `E`-part
/// as `β h^n xi^{j-1}`; `z_part[i][j]` is the coefficient of `H^j`.
pub fn eliminate_h(e_part: &EClass, z_part: &[Vec<BigInt>]) -> Result<(EClass, Vec<BigInt>)> {
    let n = e_part.n();
    check_z_part(n, z_part)?;
    let mut moved = HXiPoly::default();
    let mut rest = vec![BigInt::zero(); n + 1];
    for (i, poly) in z_part.iter().enumerate() {
        for (j, beta) in poly.iter().enumerate() {
            if j == 0 {
                rest[i] = beta.clone();
            } else {
                moved.add_term(n, j - 1, beta.clone());
            }
        }
    }
    let e = e_part.add(&EClass::from_poly(n, &moved)?);
    Ok((e, rest))
}

fn check_z_part(n: usize, z_part: &[Vec<BigInt>]) -> Result<()> {
    if z_part.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            left: z_part.len(),
            right: n + 1,
        });
    }
    for poly in z_part {
        let deg = poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        if deg + 1 > n.max(1) {
            return Err(Error::MalformedInput(format!(
                "H-degree {deg} exceeds {} on a component of Z",
                n.saturating_sub(1)
            )));
        }
    }
    Ok(())
}

/// Equivariant image of `(e_part, z_part)` in `A_T(Y)`: `h^a xi^b` restricts
/// to `h^a x^b`, and `H^j` on component `i` pushes forward to `x^j [E_i]`.
pub fn phi_image(e_part: &EClass, z_part: &[Vec<BigInt>]) -> Result<EqClass> {
    let n = e_part.n();
    check_z_part(n, z_part)?;
    let h = class_h(n)?;
    let x = class_x(n)?;
    let mut acc = EqClass::zero(n);
    for (a, b, c) in e_part.terms() {
        acc = &acc + &(&h.pow(a as u32) * &x.pow(b as u32)).scale(c);
    }
    for (i, poly) in z_part.iter().enumerate() {
        let e_i = class_of_ei(n, i)?;
        for (j, beta) in poly.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            acc = &acc + &(&x.pow(j as u32) * &e_i).scale(beta);
        }
    }
    Ok(acc)
}
