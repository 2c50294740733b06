//! Torus-fixed-point data of the hyperplane section `Y`.
//!
//! For `n >= 1` the torus of the diagonal basis `t_0..t_n` has the fixed
//! points `z_ij` (`i != j`). The tangent space at `z_ij` carries the
//! characters `chi_lj` (along the fiber of `E|_Z`) and `chi_il` for every
//! `l` distinct from `i` and `j`; each weight is the tangent direction of a
//! torus-stable curve joining `z_ij` to `z_il` or `z_lj` respectively.
//!
//! Equivariant classes are stored by their restrictions to the fixed points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::algebra::{LinearForm, MultiPoly, RatFunc};
use crate::error::{check_n, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedPoint {
    pub i: usize,
    pub j: usize,
}

impl FixedPoint {
    pub fn new(i: usize, j: usize) -> Self {
        assert_ne!(i, j, "fixed point needs i != j");
        FixedPoint { i, j }
    }

    /// Position in the lexicographic enumeration returned by [`fixed_points`].
    pub fn index(&self, n: usize) -> usize {
        self.i * n + if self.j < self.i { self.j } else { self.j - 1 }
    }

    /// The indices `l` in `0..=n` other than `i` and `j`.
    pub fn others(&self, n: usize) -> impl Iterator<Item = usize> {
        let (i, j) = (self.i, self.j);
        (0..=n).filter(move |&l| l != i && l != j)
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.i, self.j)
    }
}

pub fn fixed_point_count(n: usize) -> usize {
    n * (n + 1)
}

/// All `z_ij` with `i != j`, in lexicographic order.
pub fn fixed_points(n: usize) -> Result<Vec<FixedPoint>> {
    check_n(n)?;
    Ok(iter_fixed_points(n).collect())
}

pub(crate) fn iter_fixed_points(n: usize) -> impl Iterator<Item = FixedPoint> {
    (0..=n).flat_map(move |i| {
        (0..=n)
            .filter(move |&j| j != i)
            .map(move |j| FixedPoint { i, j })
    })
}

/// `chi_ij = t_j - t_i` over `n + 1` variables.
pub fn character(n: usize, i: usize, j: usize) -> LinearForm {
    LinearForm::character(n + 1, i, j)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentWeights {
    /// `chi_lj` followed by `chi_il`, `l` ascending.
    pub full: Vec<LinearForm>,
    /// The `chi_lj`: the tangent space of the fiber `E_i` through the point.
    pub fiber_part: Vec<LinearForm>,
}

pub fn tangent_weights(n: usize, z: FixedPoint) -> TangentWeights {
    let fiber_part: Vec<LinearForm> = z.others(n).map(|l| character(n, l, z.j)).collect();
    let mut full = fiber_part.clone();
    full.extend(z.others(n).map(|l| character(n, z.i, l)));
    TangentWeights { full, fiber_part }
}

/// A torus-stable curve between two fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEdge {
    pub a: FixedPoint,
    pub b: FixedPoint,
    /// Tangent character of the curve at `a`; at `b` it is the negative.
    pub weight: LinearForm,
}

/// Every edge of the moment graph, listed once.
pub fn gkm_edges(n: usize) -> Vec<CurveEdge> {
    let mut edges = Vec::new();
    for z in iter_fixed_points(n) {
        for l in z.others(n) {
            // C_lj: the fiber line through z_ij and z_il
            if z.j < l {
                edges.push(CurveEdge {
                    a: z,
                    b: FixedPoint { i: z.i, j: l },
                    weight: character(n, l, z.j),
                });
            }
            // C_il: the base line through z_ij and z_lj
            if z.i < l {
                edges.push(CurveEdge {
                    a: z,
                    b: FixedPoint { i: l, j: z.j },
                    weight: character(n, z.i, l),
                });
            }
        }
    }
    edges
}

/// An equivariant class on `Y`, given by its restriction to every fixed point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EqClass {
    n: usize,
    values: Vec<RatFunc>,
}

impl EqClass {
    pub fn new(n: usize, values: Vec<RatFunc>) -> Result<Self> {
        check_n(n)?;
        if values.len() != fixed_point_count(n) {
            return Err(Error::MalformedInput(format!(
                "expected {} restrictions, got {}",
                fixed_point_count(n),
                values.len()
            )));
        }
        if values.iter().any(|v| v.nvars() != n + 1) {
            return Err(Error::MalformedInput(
                "restriction over the wrong variables".into(),
            ));
        }
        Ok(EqClass { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(FixedPoint) -> RatFunc) -> Self {
        assert!(n >= 1, "n must be at least 1");
        EqClass {
            n,
            values: iter_fixed_points(n).map(&mut f).collect(),
        }
    }

    pub fn from_polys(n: usize, mut f: impl FnMut(FixedPoint) -> MultiPoly) -> Self {
        Self::from_fn(n, |z| RatFunc::from_poly(f(z)))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| RatFunc::zero(n + 1))
    }

    pub fn one(n: usize) -> Self {
        Self::from_fn(n, |_| RatFunc::one(n + 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, z: FixedPoint) -> &RatFunc {
        &self.values[z.index(self.n)]
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (FixedPoint, &RatFunc)> {
        iter_fixed_points(self.n).zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RatFunc::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.values.iter().all(RatFunc::is_polynomial)
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> EqClass {
        EqClass {
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &EqClass, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> EqClass {
        assert_eq!(self.n, other.n, "classes over different n");
        EqClass {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &EqClass) -> Result<EqClass> {
        self.same_n(other)?;
        Ok(self * other)
    }

    pub fn same_n(&self, other: &EqClass) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &BigInt) -> EqClass {
        self.map(|v| v.scale(c))
    }

    pub fn pow(&self, e: u32) -> EqClass {
        self.map(|v| v.pow(e))
    }

    /// Torus acting through inverse characters.
    pub fn negate_characters(&self) -> EqClass {
        self.map(RatFunc::negate_vars)
    }

    /// Edges along which the two endpoint restrictions are not congruent
    /// modulo the edge character. Non-polynomial restrictions fail at every
    /// edge they touch.
    pub fn gkm_violations(&self) -> Vec<CurveEdge> {
        gkm_edges(self.n)
            .into_iter()
            .filter(|e| {
                let (Some(a), Some(b)) =
                    (self.get(e.a).as_polynomial(), self.get(e.b).as_polynomial())
                else {
                    return true;
                };
                (a - b).exact_div_linear(&e.weight).is_err()
            })
            .collect()
    }

    pub fn satisfies_gkm(&self) -> bool {
        self.gkm_violations().is_empty()
    }
}

impl fmt::Debug for EqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (z, v) in self.iter() {
            m.entry(&z.to_string(), &v.to_string());
        }
        m.finish()
    }
}

impl Add for &EqClass {
    type Output = EqClass;
    fn add(self, rhs: &EqClass) -> EqClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &EqClass {
    type Output = EqClass;
    fn sub(self, rhs: &EqClass) -> EqClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &EqClass {
    type Output = EqClass;
    fn mul(self, rhs: &EqClass) -> EqClass {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &EqClass {
    type Output = EqClass;
    fn neg(self) -> EqClass {
        self.map(|v| -v)
    }
}

fn product_of(n: usize, forms: impl IntoIterator<Item = LinearForm>) -> MultiPoly {
    forms
        .into_iter()
        .fold(MultiPoly::one(n + 1), |acc, f| acc.mul_linear(&f))
}

/// `[E_i]`, the fiber of `E|_Z` over the `i`-th point of `Z`.
///
/// Its restriction at `z_ij` is the normal weight product
/// `prod_{l != i,j} chi_il`; it vanishes at fixed points off the fiber.
pub fn class_of_ei(n: usize, i: usize) -> Result<EqClass> {
    check_n(n)?;
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(EqClass::from_polys(n, |z| {
        if z.i == i {
            product_of(n, z.others(n).map(|l| character(n, i, l)))
        } else {
            MultiPoly::zero(n + 1)
        }
    }))
}

/// `x = i^*(H_E)`, restricting to `chi_ij` at `z_ij`.
pub fn class_x(n: usize) -> Result<EqClass> {
    check_n(n)?;
    Ok(EqClass::from_polys(n, |z| {
        MultiPoly::from_linear(&character(n, z.i, z.j))
    }))
}

/// `h`, the pulled-back hyperplane class of the base, restricting to `-t_i`.
pub fn class_h(n: usize) -> Result<EqClass> {
    check_n(n)?;
    Ok(EqClass::from_polys(n, |z| -MultiPoly::var(n + 1, z.i)))
}

/// The class of the fixed point `z`: the full tangent weight product at `z`,
/// zero elsewhere.
pub fn class_of_point(n: usize, z: FixedPoint) -> Result<EqClass> {
    check_n(n)?;
    if z.i > n || z.j > n {
        return Err(Error::IndexOutOfRange {
            index: z.i.max(z.j),
            max: n,
        });
    }
    let w = product_of(n, tangent_weights(n, z).full);
    Ok(EqClass::from_polys(n, |y| {
        if y == z {
            w.clone()
        } else {
            MultiPoly::zero(n + 1)
        }
    }))
}

/// Names of the affine chart coordinates used by [`jacobian_minor`].
pub fn chart_variable_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|l| format!("x'{l}"))
        .chain((0..count).map(|l| format!("y'{l}")))
        .collect()
}

/// Determinant of the 2x2 block `[[y'_j, x'_i], [a_j y'_j, a_i x'_i]]` of
/// the Jacobian of `sum x'_l y'_l` and `sum a_l x'_l y'_l` on the chart
/// `x_i y_j != 0`. Variables are `x'_0..x'_n` then `y'_0..y'_n`.
pub fn jacobian_minor(i: usize, j: usize, eigenvalues: &[i64]) -> Result<MultiPoly> {
    let count = eigenvalues.len();
    for a in 0..count {
        for b in a + 1..count {
            if eigenvalues[a] == eigenvalues[b] {
                return Err(Error::EigenvalueCollision(a, b));
            }
        }
    }
    for idx in [i, j] {
        if idx >= count {
            return Err(Error::IndexOutOfRange {
                index: idx,
                max: count.saturating_sub(1),
            });
        }
    }
    if i == j {
        return Err(Error::MalformedInput("chart indices must differ".into()));
    }
    let nvars = 2 * count;
    if nvars > crate::algebra::MAX_VARS {
        return Err(Error::MalformedInput(
            "too many eigenvalues for the chart".into(),
        ));
    }
    let x_i = MultiPoly::var(nvars, i);
    let y_j = MultiPoly::var(nvars, count + j);
    let a_i = BigInt::from(eigenvalues[i]);
    let a_j = BigInt::from(eigenvalues[j]);
    let top_left = y_j.clone();
    let top_right = x_i.clone();
    let bottom_left = y_j.scale(&a_j);
    let bottom_right = x_i.scale(&a_i);
    Ok(&(&top_left * &bottom_right) - &(&top_right * &bottom_left))
}
