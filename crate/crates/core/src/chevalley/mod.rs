//! Root systems and Chevalley bases for all simple types, and the
//! principal generators of the exceptional algebras.

mod basis;
mod exceptional;
mod roots;

pub use basis::{build_chevalley_algebra, ChevalleyAlgebra};
pub use exceptional::{
    chevalley_algebra, eval_lowering_expression, exceptional_jacobson_generators, principal_coefficients, principal_x, principal_y,
};
pub use roots::{build_root_system, height, CartanType, Root, RootSystem};
