use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{height, MultiPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::lie::{span_closure, GeneratorTriple, LieElement};
use crate::sl2::decompose_adjoint;
use crate::weyl::{formal_limit_relation, limit_exponent, WeylKind};

use super::ast::{CoeffExpr, LinearForm, Relation, RelationKind, Side, Term};
use super::catalog::{Catalog, CatalogEntry, Variant};
use super::eval::{evaluate, recover_coefficients, Recovery};
use super::key::AlgebraKey;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Outcome {
    ExactPass,
    RecoveredCoefficient,
    Fail,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::ExactPass => "ExactPass",
            Outcome::RecoveredCoefficient => "RecoveredCoefficient",
            Outcome::Fail => "Fail",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub algebra: String,
    pub relation_id: String,
    pub kind: Option<RelationKind>,
    pub outcome: Outcome,
    /// Solved coefficients, printed as polynomials.
    pub recovered: Option<BTreeMap<String, String>>,
    pub notes: Vec<String>,
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub algebra: String,
    /// One per catalog entry, in catalog order.
    pub results: Vec<ReportEntry>,
    /// Generation and decomposition checks.
    pub checks: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn all(&self) -> impl Iterator<Item = &ReportEntry> {
        self.results.iter().chain(&self.checks)
    }

    /// Worst outcome over relations and checks.
    pub fn worst(&self) -> Outcome {
        self.all().map(|e| e.outcome).max().unwrap_or(Outcome::ExactPass)
    }

    pub fn get(&self, relation_id: &str) -> Option<&ReportEntry> {
        self.all().find(|e| e.relation_id == relation_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} (schema {})", self.algebra, self.schema_version)?;
        for e in self.all() {
            write!(f, "  {:<14} {:<21}", e.relation_id, e.outcome.to_string())?;
            if let Some(r) = &e.recovered {
                let parts: Vec<String> = r.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                write!(f, " [{}]", parts.join(", "))?;
            }
            for n in &e.notes {
                write!(f, " ; {n}")?;
            }
            if let Some(ms) = e.millis {
                write!(f, " ({ms} ms)")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Specialize `t` to this value before evaluating.
    pub t: Option<Rational>,
    pub timings: bool,
    /// Replaces the built-in catalog.
    pub catalog: Option<Catalog>,
    /// Run the generation and decomposition checks.
    pub checks: bool,
}

/// `nnz` plus the largest coefficient height in bits.
pub fn residual_norm(v: &LieElement) -> String {
    let vec = v.to_vector();
    let h = vec.values().map(height).max().unwrap_or(0);
    format!("residual nnz={} height={h}", vec.len())
}

fn show(values: &BTreeMap<String, MultiPoly>) -> BTreeMap<String, String> {
    values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

/// Replaces unknowns by their solved values.
fn substitute(rel: &Relation, values: &BTreeMap<String, MultiPoly>) -> Relation {
    let terms = rel
        .rhs
        .terms
        .iter()
        .filter_map(|t| {
            let mut names = Vec::new();
            if let Some(c) = &t.coeff {
                c.unknowns(&mut names);
            }
            let Some(u) = names.first() else {
                return Some(t.clone());
            };
            let v = values.get(u)?;
            if v.is_zero() {
                return None;
            }
            let neg = v.terms().next_back().is_some_and(|(_, x)| x.is_negative());
            let v = if neg { -v.clone() } else { v.clone() };
            Some(Term {
                neg: t.neg != neg,
                coeff: if v.is_one() { None } else { Some(CoeffExpr::from_poly(&v)) },
                word: t.word.clone(),
            })
        })
        .collect();
    Relation {
        lhs: rel.lhs.clone(),
        rhs: Side { terms },
    }
}

/// Same relation with every right-side coefficient turned into an unknown.
fn unknown_rhs(rel: &Relation) -> Relation {
    let terms = rel
        .rhs
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| Term {
            neg: false,
            coeff: Some(CoeffExpr::Unknown(format!("c{}", i + 1))),
            word: t.word.clone(),
        })
        .collect();
    Relation {
        lhs: rel.lhs.clone(),
        rhs: Side { terms },
    }
}

fn specialize_form(form: LinearForm, t: Option<&Rational>) -> LinearForm {
    match t {
        None => form,
        Some(t) => form
            .into_iter()
            .map(|(k, (w, c))| (k, (w, c.specialize(Var::T, t))))
            .filter(|(_, (_, c))| !c.is_zero())
            .collect(),
    }
}

type Verdict = (Outcome, Option<BTreeMap<String, String>>, Vec<String>);

struct Runner<'a> {
    key: &'a AlgebraKey,
    triple: &'a GeneratorTriple,
    catalog: &'a Catalog,
    t: Option<&'a Rational>,
}

impl Runner<'_> {
    fn residual(&self, rel: &Relation, triple: &GeneratorTriple) -> Result<LieElement> {
        let r = evaluate(rel, triple, self.key.n())?;
        Ok(match self.t {
            Some(t) => r.specialize(Var::T, t),
            None => r,
        })
    }

    fn same_as_reference(&self, id: &str, derived: &Relation) -> Result<Option<bool>> {
        let Some(reference) = self.catalog.reference(id) else {
            return Ok(None);
        };
        let n = self.key.n();
        let a = specialize_form(derived.normal_form(n)?, self.t);
        let b = specialize_form(reference.relation.normal_form(n)?, self.t);
        Ok(Some(a == b))
    }

    fn run(&self, e: &CatalogEntry) -> Verdict {
        match self.try_run(e) {
            Ok(r) => r,
            Err(err) => (Outcome::Fail, None, vec![err.to_string()]),
        }
    }

    fn recover(&self, rel: &Relation) -> Result<Recovery> {
        let tr = match self.t {
            Some(t) => self.triple.specialize_t(t),
            None => self.triple.clone(),
        };
        recover_coefficients(rel, &tr, self.key.n())
    }

    fn try_run(&self, e: &CatalogEntry) -> Result<Verdict> {
        if e.variant == Variant::Recover {
            return Ok(match self.recover(&e.relation)? {
                Recovery::Unique(v) => {
                    let derived = substitute(&e.relation, &v);
                    match self.same_as_reference(&e.id, &derived)? {
                        Some(true) => (Outcome::ExactPass, Some(show(&v)), vec!["matches the listed coefficients".into()]),
                        Some(false) => (
                            Outcome::RecoveredCoefficient,
                            Some(show(&v)),
                            vec![format!("listed coefficients differ; derived {derived}")],
                        ),
                        None => (Outcome::RecoveredCoefficient, Some(show(&v)), vec![format!("derived {derived}")]),
                    }
                }
                Recovery::Family { particular, freedom } => (
                    Outcome::RecoveredCoefficient,
                    Some(show(&particular)),
                    vec![format!("solution not unique ({freedom} free directions)")],
                ),
                Recovery::Infeasible { residual } => (
                    Outcome::Fail,
                    None,
                    vec![format!("left side outside the span of the right-side words ({} coordinates left)", residual.len())],
                ),
            });
        }

        let res = self.residual(&e.relation, self.triple)?;
        if res.is_zero() {
            return Ok((Outcome::ExactPass, None, vec![]));
        }
        let mut notes = vec![format!("as listed: {}", residual_norm(&res))];
        if self.residual(&e.relation, &self.triple.with_negated_z())?.is_zero() {
            notes.push("holds after z -> -z".into());
            return Ok((Outcome::RecoveredCoefficient, None, notes));
        }
        if e.relation.rhs.terms.is_empty() {
            return Ok((Outcome::Fail, None, notes));
        }
        let open = unknown_rhs(&e.relation);
        Ok(match self.recover(&open)? {
            Recovery::Unique(v) => {
                notes.push(format!("derived {}", substitute(&open, &v)));
                (Outcome::RecoveredCoefficient, Some(show(&v)), notes)
            }
            Recovery::Family { particular, freedom } => {
                notes.push(format!("solution not unique ({freedom} free directions)"));
                (Outcome::RecoveredCoefficient, Some(show(&particular)), notes)
            }
            Recovery::Infeasible { .. } => {
                notes.push("left side outside the span of the right-side words".into());
                (Outcome::Fail, None, notes)
            }
        })
    }
}

impl Runner<'_> {
    /// A relation with this entry's left side that holds in the algebra.
    fn holding(&self, e: &CatalogEntry) -> Result<Option<Relation>> {
        let open = match e.variant {
            Variant::Recover => e.relation.clone(),
            _ if self.residual(&e.relation, self.triple)?.is_zero() => return Ok(Some(e.relation.clone())),
            _ if e.relation.rhs.terms.is_empty() => return Ok(None),
            _ => unknown_rhs(&e.relation),
        };
        Ok(match self.recover(&open)? {
            Recovery::Unique(v) => Some(substitute(&open, &v)),
            _ => None,
        })
    }
}

/// One relation per catalog id, each checked against the realization:
/// the listed form when it holds, otherwise the normalized form, otherwise
/// the listed left side with re-solved right-side coefficients.
pub fn verified_relations(key: &AlgebraKey, catalog: &Catalog) -> Result<Vec<Relation>> {
    let triple = key.triple()?;
    let runner = Runner { key, triple: &triple, catalog, t: None };
    let mut ids: Vec<&str> = Vec::new();
    for e in &catalog.entries {
        if !ids.contains(&e.id.as_str()) {
            ids.push(&e.id);
        }
    }
    ids.par_iter()
        .map(|id| {
            for variant in [Variant::Printed, Variant::Normalized, Variant::Recover] {
                for e in catalog.entries.iter().filter(|e| e.id == *id && e.variant == variant) {
                    if let Some(r) = runner.holding(e)? {
                        return Ok(r);
                    }
                }
            }
            Err(Error::Catalog(format!("no entry for {id} holds in {key}")))
        })
        .collect()
}

fn entry(key: &AlgebraKey, id: &str, kind: Option<RelationKind>) -> ReportEntry {
    ReportEntry {
        algebra: key.to_string(),
        relation_id: id.to_string(),
        kind,
        outcome: Outcome::ExactPass,
        recovered: None,
        notes: vec![],
        millis: None,
    }
}

pub fn generation_check(key: &AlgebraKey, triple: &GeneratorTriple) -> ReportEntry {
    let mut e = entry(key, "generation", None);
    let tr = triple.specialize_t(&Rational::from_integer(1.into()));
    match span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone(), tr.z.clone()]) {
        Ok(c) => {
            let want = key.dim().unwrap_or(0);
            e.notes.push(format!("span of x, y, z has dimension {} (expected {want})", c.dim));
            if c.dim != want {
                e.outcome = Outcome::Fail;
            }
        }
        Err(err) => {
            e.outcome = Outcome::Fail;
            e.notes.push(err.to_string());
        }
    }
    e
}

pub fn decomposition_check(key: &AlgebraKey, triple: &GeneratorTriple) -> ReportEntry {
    let mut e = entry(key, "decomposition", None);
    match decompose_adjoint(triple) {
        Ok(p) => {
            let got = p.sorted();
            e.notes.push(format!("highest weights {p}"));
            if Some(&got) != key.expected_exponents().as_ref() {
                e.outcome = Outcome::Fail;
            }
            let printed = key.printed_exponents().filter(|p| Some(p) != key.expected_exponents().as_ref());
            if let Some(printed) = printed {
                let row: Vec<String> = printed.iter().map(u32::to_string).collect();
                e.notes.push(format!(
                    "listed row {{{}}} does not match: it has {} summands and the wrong dimension",
                    row.join(","),
                    row.len()
                ));
            }
        }
        Err(err) => {
            e.outcome = Outcome::Fail;
            e.notes.push(err.to_string());
        }
    }
    e
}

/// Each entry of a limit catalog compared with the limit of the matching
/// `λ` entry.
fn verify_limits(kind: WeylKind, key: &AlgebraKey, catalog: &Catalog) -> Vec<ReportEntry> {
    let source = Catalog::builtin(&AlgebraKey::Weyl(kind));
    let p = limit_exponent(kind);
    catalog
        .entries
        .iter()
        .map(|e| {
            let mut r = entry(key, &e.label(), Some(e.relation.kind()));
            let listed = source.entries.iter().find(|s| s.id == e.id && s.variant == Variant::Printed);
            let Some(from) = listed.or_else(|| source.reference(&e.id)) else {
                r.outcome = Outcome::Fail;
                r.notes.push("no matching relation at finite lambda".into());
                return r;
            };
            match formal_limit_relation(&from.relation, p)
                .and_then(|lim| Ok((lim.normal_form(None)? == e.relation.normal_form(None)?, lim)))
            {
                Ok((true, lim)) => r.notes.push(format!("limit {lim}")),
                Ok((false, lim)) => {
                    r.outcome = Outcome::Fail;
                    r.notes.push(format!("limit {lim} differs"));
                }
                Err(err) => {
                    r.outcome = Outcome::Fail;
                    r.notes.push(err.to_string());
                }
            }
            r
        })
        .collect()
}

/// Runs the catalog of `key` against its generators.
///
/// Listed entries pass exactly, pass after `z -> -z`, or have their right
/// side re-solved; recover entries are solved and compared with the listed
/// coefficients. Entries are evaluated in parallel and reported in catalog
/// order.
pub fn verify_suite(key: &AlgebraKey, options: &SuiteOptions) -> Result<VerificationReport> {
    let builtin;
    let catalog = match &options.catalog {
        Some(c) => c,
        None => {
            builtin = Catalog::builtin(key);
            &builtin
        }
    };
    let mut report = VerificationReport {
        schema_version: SCHEMA_VERSION,
        algebra: key.to_string(),
        results: vec![],
        checks: vec![],
    };
    if let AlgebraKey::Star(kind) = key {
        report.results = verify_limits(*kind, key, catalog);
        return Ok(report);
    }
    let triple = key.triple()?;
    let runner = Runner {
        key,
        triple: &triple,
        catalog,
        t: options.t.as_ref(),
    };
    report.results = catalog
        .entries
        .par_iter()
        .map(|e| {
            let start = Instant::now();
            let (outcome, recovered, notes) = runner.run(e);
            ReportEntry {
                algebra: key.to_string(),
                relation_id: e.label(),
                kind: Some(e.relation.kind()),
                outcome,
                recovered,
                notes,
                millis: options.timings.then(|| start.elapsed().as_millis() as u64),
            }
        })
        .collect();
    if options.checks && key.is_finite_dimensional() {
        report.checks.push(generation_check(key, &triple));
        report.checks.push(decomposition_check(key, &triple));
    }
    Ok(report)
}
