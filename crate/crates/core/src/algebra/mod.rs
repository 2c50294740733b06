//! Exact arithmetic: integer polynomials in the torus characters, rational
//! functions with factored linear denominators, and polynomials over prime
//! fields.

mod fp;
mod linalg;
mod linear;
mod poly;
mod ratfunc;

pub use fp::{fp_char_poly_profile, is_prime, CharPolyProfile, FpMatrix, FpPoly};
pub use linalg::{determinant, solve_integral, IntMatrix};
pub use linear::LinearForm;
pub use poly::{Assignment, Monomial, MultiPoly, Subst, MAX_VARS};
pub use ratfunc::{rat_sum, RatFunc};
