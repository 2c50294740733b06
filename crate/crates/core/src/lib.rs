//! Exact intersection theory on hyperplane sections `Y` of the Milnor
//! hypersurface `E ⊂ P^n × P^n`, cut out by a regular semisimple endomorphism.
//!
//! - [`algebra`]: integer polynomials, rational functions with linear
//!   denominators, and prime-field polynomials.
//! - [`gkm`]: fixed points, tangent weights, torus-stable curves, and the
//!   equivariant classes `h`, `x`, `[E_i]`.
//! - [`localization`]: equivariant multiplicities and the localized pairing.
//! - [`chow`]: Chow rings of `P^n` and `E`, the basis of `A(Y)`, Gram matrices,
//!   normal forms and graded motives.
//! - [`artin`]: permutation groups, étale algebras as Galois sets, Hom ranks
//!   of Artin motives, and ingestion of matrices over prime fields.

pub mod algebra;
pub mod artin;
pub mod chow;
pub mod error;
pub mod gkm;
pub mod localization;

pub use error::{Error, Result};
