//! Differential forms on the orthant and on the simplex.

mod blade;
mod context;
mod field;
mod form;
mod tform;

pub use blade::IndexSet;
pub use context::{SimplexContext, MAX_N};
pub use field::VectorField;
pub use form::DiffForm;
pub use tform::TForm;
