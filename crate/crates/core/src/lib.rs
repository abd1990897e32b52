pub mod arith;
pub mod chevalley;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod presentations;
pub mod sl2;
pub mod weyl;

pub use arith::{LaurentInLambda, MultiPoly, Rational, Var};
pub use error::{Error, Result};
pub use lie::{Algebra, GeneratorTriple, LieElement, SparseMatrix, StructureConstantAlgebra};
