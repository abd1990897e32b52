//! Differential operators in one variable, the even Poisson algebra, and
//! the realization of the enveloping algebra of sl(2) as operators.

mod diffop;
mod limit;
mod poisson;
mod realization;

pub use diffop::{DiffOperator, MAX_ORDER};
pub use limit::{formal_limit_relation, limit_exponent};
pub use poisson::{checked_bracket, poisson_bracket, sl2_triple, PoissonPoly};
pub use realization::{
    apply_involution, casimir_image, component_basis, enveloping_spectrum, generic_lambda, involution_sign, poisson_spectrum,
    realization_generators, x_operator, y_operator, WeylKind,
};
