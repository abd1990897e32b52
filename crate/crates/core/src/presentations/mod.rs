//! Relations between Jacobson generators: the text format, the built-in
//! catalog, exact evaluation, coefficient recovery, and the verification
//! suite.

mod ast;
mod catalog;
mod eval;
mod key;
mod parser;
mod probe;
mod suite;

pub use ast::{CoeffExpr, LinearForm, Param, Relation, RelationKind, Scalar, Side, Term, Word};
pub use catalog::{Catalog, CatalogEntry, Variant};
pub use eval::{evaluate, recover_coefficients, Evaluator, Recovery};
pub use key::AlgebraKey;
pub use parser::{parse_relation, parse_side};
pub use probe::{completeness_probe, lyndon_words, relation_degree, word_degree, LyndonBasis, ProbeResult, MAX_PROBE_DEGREE};
pub use suite::{decomposition_check, generation_check, residual_norm, verified_relations, verify_suite, Outcome, ReportEntry, SuiteOptions, VerificationReport, SCHEMA_VERSION};
