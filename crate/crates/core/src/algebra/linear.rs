use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// An integer linear form `sum c_k t_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    /// The generator `t_i` of the character lattice.
    pub fn generator(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![0; nvars];
        coeffs[i] = 1;
        LinearForm { coeffs }
    }

    /// `chi_{ij} = t_j - t_i`.
    pub fn character(nvars: usize, i: usize, j: usize) -> Self {
        assert_ne!(i, j, "character needs distinct indices");
        let mut coeffs = vec![0; nvars];
        coeffs[j] = 1;
        coeffs[i] = -1;
        LinearForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// First nonzero position and its coefficient.
    pub fn leading(&self) -> Option<(usize, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    pub fn negated(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Splits `self = scalar * primitive` with the primitive form's leading
    /// coefficient positive.
    pub fn normalized(&self) -> (i64, LinearForm) {
        let (_, lead) = self.leading().expect("zero linear form");
        let g = self.coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        let scalar = if lead < 0 { -g } else { g };
        let coeffs = self.coeffs.iter().map(|&c| c / scalar).collect();
        (scalar, LinearForm { coeffs })
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars(), "point dimension mismatch");
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, x)| x * BigRational::from_integer(BigInt::from(c)))
            .sum()
    }

    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(point).map(|(&c, x)| x * c).sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "t{i}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}
