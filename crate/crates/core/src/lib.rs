//! Exact structure computations for finite-dimensional Jordan algebras over
//! `Q` and `GF(p)`, `p >= 5`.

pub mod algebra;
pub mod assoc;
pub mod bider;
pub mod catalog;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod module;
pub mod report;
pub mod triple;

pub use algebra::JordanAlgebra;
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
pub use maps::{BilinearMap, LinearMap, Symmetry};
pub use module::JModule;
