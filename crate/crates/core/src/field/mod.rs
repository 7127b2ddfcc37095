//! Exact arithmetic in multi-quadratic fields `Q(sqrt d_1, ..., sqrt d_k)`.

mod context;
mod element;
mod interval;
mod json;

pub use context::{FieldContext, DEFAULT_MAX_RADICANDS, HARD_MAX_RADICANDS};
pub use element::{ComplexSplit, FieldElement};
pub use interval::{default_precision_bits, ComplexBox, DyadicInterval, PRECISION_ENV};
pub use json::{format_rational, parse_rational};
