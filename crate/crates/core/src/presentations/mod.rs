//! Catalog of the algebras used by the verification suites, tensor
//! products, and the JSON algebra-definition format.

pub mod catalog;
pub mod json;
pub mod lie;

pub use catalog::{build_at, build_standard, critical_level, CatalogError, Level, LABELS};
pub use lie::{affine_gl, affine_sl, GlSuper};

pub use crate::engine::Presentation;

/// Tensor product; see [`Presentation::tensor`].
pub fn tensor(a: &Presentation, b: &Presentation) -> Presentation {
    Presentation::tensor(a, b)
}
