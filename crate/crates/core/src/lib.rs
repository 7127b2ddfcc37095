//! Exact decision procedures for the transcendence degree of compact complex
//! surfaces: two-dimensional complex tori, Hopf surfaces and K3 surfaces.
//!
//! All scalars live in multi-quadratic number fields ([`field`]), where
//! equality is a coordinate check and signs of real numbers are decided by
//! refining interval enclosures. The classifiers reduce each question to an
//! integer kernel over the rationals ([`linalg`]) or to a multiplicative
//! dependence problem ([`hopf`]).

pub mod error;
pub mod experiment;
pub mod field;
pub mod hopf;
pub mod io;
pub mod k3;
pub mod linalg;
pub mod sampling;
pub mod serde_util;
pub mod torus;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use hopf::{HopfParam, HopfReport};
pub use k3::{IntersectionForm, K3Report, PeriodPoint};
pub use linalg::{FieldMatrix, IntegerLattice};
pub use torus::{PeriodMatrixZ, TorusReport};
