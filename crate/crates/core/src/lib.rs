//! Exact computations with real and complex Clifford algebras: blade
//! arithmetic, the Wedderburn classification, explicit matrix
//! representations, restriction of modules, finitely generated abelian
//! groups and the K-groups they produce.

pub mod abgroup;
pub mod blade;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod structure;

pub use abgroup::{FGAbelianGroup, GroupHom, IntMatrix, Sequence};
pub use blade::{blade_mul, Blade, CliffordElement, Signature, TensorElement};
pub use error::{Error, Result};
pub use scalar::{Gaussian, Rational, ScalarField};
pub use structure::{classify, AlgebraDescriptor, DivisionRing};
