//! Matrices over the series rings, the action of the cyclic stabilizer,
//! and the normal form of equivariant glue matrices.

mod action;
mod exponents;
mod linalg;
mod matrix;

pub use action::{
    apply_gamma, cocycle_norm, cocycle_norm_check, diagonalize_action, is_equivariant,
    residue_diagonalize, verifies_diagonalization, Diagonalization, GammaAction,
};
pub use exponents::{assemble_f, extract_h, is_equivariant_for, sort_exponents, ExponentVector};
pub use matrix::Matrix;
