//! Shared inputs for the criterion benches.

use jacobson_core::presentations::{verified_relations, AlgebraKey, Catalog, Relation};

pub fn key(s: &str) -> AlgebraKey {
    s.parse().expect("valid key")
}

/// Relations fed to the completeness probe for `key`.
pub fn probe_input(key: &AlgebraKey) -> (Vec<Relation>, Option<i64>, u32) {
    let relations = verified_relations(key, &Catalog::builtin(key)).expect("catalog verifies");
    let r = key.triple().expect("triple").r;
    (relations, key.n(), r)
}
