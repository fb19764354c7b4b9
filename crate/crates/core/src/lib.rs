//! Exact tensor algebra for Norden structures on Lie algebras.
//!
//! A structure is a frame `e_1..e_{2n}` with brackets `[e_i, e_j] = C^k_{ij} e_k`,
//! a left-invariant neutral metric `g` and an almost complex structure `J`
//! with `J² = -I` and `g(Jx, Jy) = -g(x, y)`. From that data the crate builds
//! the Levi-Civita connection, the tensor `F = g((∇J)·,·)`, the B-connection
//! `D = ∇ + ½(∇J)J`, the curvatures `R`, `K`, the tensors `P`, `H`, their
//! traces, and checks the identities relating them.
//!
//! All computations are generic over [`field::Scalar`]; the default is
//! exact [`field::Rational`], so identities are verified with residual
//! exactly zero. `f64` is available for fast screening.
//!
//! Indices are 0-based in code and 1-based in files and messages.

pub mod connection;
pub mod curvature;
pub mod field;
pub mod format;
pub mod fourdim;
pub mod linalg;
pub mod report;
pub mod scalars;
pub mod search;
pub mod structure;
pub mod tensor;
pub mod verify;

pub use field::{Mode, Rational, Scalar};
pub use structure::{validate, NordenStructure};
pub use verify::{run_catalogue, Analysis};
