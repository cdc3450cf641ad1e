//! Exact polynomial differential forms on the orthant `O ⊂ R^{n+1}` and the
//! simplex `T = {s = 1}`, where `s = x_1 + ... + x_{n+1}`.
//!
//! Forms on `T` are represented by homogeneous forms on `O`: vertical ones
//! (multiples of `ds`) and horizontal ones (annihilated by contraction with
//! `X = Σ x_i ∂/∂x_i`). The crate builds the spaces `𝐇_rΛ^k`, `𝐏_rΛ^k`,
//! `𝐏_r⁻Λ^k` and their trace-free subspaces, the operators between them,
//! the degenerate-metric Hodge star `*_g`, and exact pairing matrices over
//! the solid simplex `{s <= 1}`.
//!
//! ```
//! use feec_core::{SimplexContext, TForm, ratpoly::Polynomial};
//!
//! let ctx = SimplexContext::new(2).unwrap();
//! // h_1(dx) = s dx - x ds
//! let h = ctx.h_r(&TForm::dx(2, 0), 1).unwrap();
//! assert_eq!(h.restrict_to_t(), TForm::dx(2, 0));
//! assert!(ctx.i_x(&h).is_zero());
//! # let _ = Polynomial::zero(3);
//! ```

pub mod calculus;
pub mod error;
pub mod exterior;
pub mod expr;
pub mod json;
pub mod linalg;
pub mod metric;
pub mod ops;
pub mod pairing;
pub mod ratpoly;
pub mod spaces;
pub mod suite;

pub use error::{Error, Result};
pub use exterior::{DiffForm, IndexSet, SimplexContext, TForm, VectorField};
pub use ratpoly::{MultiIndex, Polynomial, Rational, SLocalPoly};
pub use spaces::{FormSpace, SpaceKind};
