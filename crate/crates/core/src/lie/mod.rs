//! Bracket algebras over exact polynomial scalars.

mod classical;
mod closure;
mod element;
mod matrix;
mod structure;
mod triple;

pub use classical::{classical_generators, form_invariance_check, invariant_forms, ClassicalFamily};
pub use closure::{span_closure, span_closure_bounded, SpanClosure};
pub use element::{Algebra, LieElement};
pub use matrix::SparseMatrix;
pub use structure::{CoordVec, StructureConstantAlgebra};
pub use triple::{BaseResiduals, GeneratorTriple};
