//! Exact symbolic engine for the negative Drinfeld subalgebra of quantum
//! affine `sl(2)`: PBW normal ordering, the `Omega` operators and the
//! Kashiwara algebra they generate, the invariant bilinear form, and reduced
//! imaginary Verma modules at level zero.
//!
//! All arithmetic is exact over `Q[q^(±1/2), gam^(±1/2)]`.

pub mod error;
pub mod scalar;
pub mod series;
pub mod nq;
pub mod omega;
pub mod kashiwara;
pub mod linalg;
pub mod form;
pub mod verma;
pub mod parse;
pub mod checks;
pub mod suite;

pub use error::{Error, Result};
pub use nq::{basis_enum, multiply, normal_form, weight_of, Element, Monomial, Weight};
pub use scalar::{g_coeff, q_integer, GVariant, Rational, Scalar};
pub use series::{check_identity_18, series_exp, TruncatedSeries};
