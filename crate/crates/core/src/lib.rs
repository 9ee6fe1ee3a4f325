//! Exact finitely additive invariant measure on ddd-sets of higher local
//! fields `F_p((t1))...((tn))` and of `GL_m`, `SL_m` over them.

pub mod additive;
pub mod error;
pub mod exec;
pub mod expvec;
pub mod family;
pub mod field;
pub mod forest;
pub mod index;
pub mod matrix;
pub mod measure_value;
pub mod oracle;
pub mod precision;
pub mod refine;
pub mod sampling;

pub use additive::{AdditiveDistSet, AdditiveFamily};
pub use error::{AlgebraError, SetError};
pub use exec::Execution;
pub use expvec::ExpVec;
pub use family::{DistinguishedFamily, Trichotomy};
pub use field::{FieldElement, FieldParams, Valuation};
pub use forest::{Classification, Component, DddForest, LevelOf, Node, Presentation, UniformLevel};
pub use index::Index;
pub use matrix::{GroupKind, MatCoset, Matrix, MatrixFamily};
pub use measure_value::MeasureValue;
pub use precision::PrecisionElement;
