//! Exact linear algebra over the rationals.

mod scalar;
mod sparse;
mod subspace;

pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{Accum, SparseMatrix, SparseVec};
pub use subspace::{
    null_space, rank, reduced_echelon, span_contains, subspace_equal, CosetProjector,
    EchelonBuilder, Subspace,
};
