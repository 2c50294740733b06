//! Chow rings of `P^n` and `E`, the basis of `A(Y)`, normal forms, and
//! graded motives.

mod basis;
mod motive;
mod ring;

pub use basis::{
    basis_labels, basis_of_y, decompose, eliminate_h, gram_matrix, gram_matrix_in,
    intersection_matrix, phi_image, BasisElement, BasisLabel, ChowBasis, Decomposition, NormalForm,
};
pub use motive::{motive_of_y, rank_table, Generator, GradedMotive, Summand};
pub use ring::{chern_of_e, milnor_relation, EClass, HXiPoly, PnClass};
