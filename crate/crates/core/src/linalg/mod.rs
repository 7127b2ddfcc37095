//! Exact linear algebra over the rationals and over multi-quadratic fields.

pub mod forms;
mod lattice;
mod matrix;
mod rational;
mod signature;

pub use lattice::{hermite_normal_form, integer_kernel, IntegerLattice};
pub use matrix::FieldMatrix;
pub use rational::{field_row_to_rational_system, RationalMatrix};
pub use signature::{diagonalize, is_symmetric_int, signature, Diagonalization, Inertia};
