//! Exact λ-bracket computations for vertex superalgebras: normal forms,
//! homomorphism and diagram checks, BRST reduction, Segal–Sugawara vectors,
//! graded centers and supersymmetric polynomials.

pub mod brst;
pub mod center;
pub mod engine;
pub mod linalg;
pub mod morphisms;
pub mod presentations;
pub mod scalars;
pub mod suites;
pub mod sugawara;
pub mod susypoly;
