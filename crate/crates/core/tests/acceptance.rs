//! One line per acceptance criterion.
//!
//! Some criteria cannot hold as stated because a listed constant is wrong.
//! Each of those is marked `known` below together with a precise check of
//! the failure, so the run stays green only while the failure is exactly
//! the documented one.

use std::process::ExitCode;
use std::time::Instant;

use jacobson_core::lie::{span_closure, ClassicalFamily};
use jacobson_core::presentations::{
    completeness_probe, parse_relation, verified_relations, verify_suite, AlgebraKey, Catalog, Outcome,
    SuiteOptions, VerificationReport,
};
use jacobson_core::sl2::{casimir_scalar, decompose_adjoint, module_matrices};
use jacobson_core::weyl::{casimir_image, poisson_spectrum};
use jacobson_core::{Error, MultiPoly, Rational};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn key(s: &str) -> AlgebraKey {
    s.parse().unwrap()
}

fn suite(k: &AlgebraKey) -> VerificationReport {
    verify_suite(k, &SuiteOptions::default()).unwrap()
}

fn non_exact(r: &VerificationReport) -> Vec<String> {
    r.results
        .iter()
        .filter(|e| e.outcome != Outcome::ExactPass)
        .map(|e| format!("{} {}", r.algebra, e.relation_id))
        .collect()
}

fn finite_keys() -> Vec<AlgebraKey> {
    AlgebraKey::standard_keys().into_iter().filter(|k| k.is_finite_dimensional()).collect()
}

fn c1_base_relations() -> Verdict {
    let keys = AlgebraKey::standard_keys();
    for k in &keys {
        let res = k.triple().map_err(|e| format!("{k}: {e}"))?.base_residuals().map_err(|e| e.to_string())?;
        if let Some(bad) = res.first_failure() {
            return Err(format!("{k}: {bad} has a nonzero residual"));
        }
    }
    Ok(format!("{} triples, 5 identities each", keys.len()))
}

fn c2_classical_tables() -> Verdict {
    let mut keys = Vec::new();
    keys.extend((3..=8).map(|n| AlgebraKey::Classical(ClassicalFamily::Sl, n)));
    keys.extend((3..=6).map(|n| AlgebraKey::Classical(ClassicalFamily::OOdd, n)));
    keys.extend((3..=6).map(|n| AlgebraKey::Classical(ClassicalFamily::Sp, n)));
    let bad: Vec<String> = keys.iter().flat_map(|k| non_exact(&suite(k))).collect();
    if bad.is_empty() {
        Ok(format!("{} algebras", keys.len()))
    } else {
        Err(format!("not exact: {}", bad.join(", ")))
    }
}

fn c3_complex_size() -> Verdict {
    let lam = MultiPoly::lambda();
    if casimir_image().map_err(|e| e.to_string())? != &lam * &lam - MultiPoly::one() {
        return Err("Casimir image is not lambda^2 - 1".into());
    }
    let bad: Vec<String> = ["sl_lambda", "osp_lambda"].iter().flat_map(|k| non_exact(&suite(&key(k)))).collect();
    if bad.is_empty() {
        Ok("both blocks identical in lambda, t; Casimir lambda^2 - 1".into())
    } else {
        Err(format!("not exact: {}", bad.join(", ")))
    }
}

fn c4_limits() -> Verdict {
    let bad: Vec<String> = ["sl_star", "osp_star"].iter().flat_map(|k| non_exact(&suite(&key(k)))).collect();
    if bad.is_empty() {
        Ok("both limits reproduced".into())
    } else {
        Err(format!("differ: {}", bad.join(", ")))
    }
}

fn c5_exceptional() -> Verdict {
    let mut problems = Vec::new();
    for k in ["g2", "f4"] {
        problems.extend(non_exact(&suite(&key(k))));
    }
    let mut notes = Vec::new();
    for k in ["e6", "e7", "e8"] {
        let r = suite(&key(k));
        for e in &r.results {
            if e.outcome == Outcome::Fail {
                problems.push(format!("{k} {} outside the span", e.relation_id));
            }
        }
        let resolved = |id: &str| r.get(id).map(|e| e.outcome != Outcome::Fail).unwrap_or(false);
        let anomalies: &[&str] = match k {
            "e6" => &["3.4 normalized", "3.4 recover"],
            "e7" => &["3.6", "3.6 normalized", "3.7", "3.7 recover"],
            _ => &[],
        };
        for id in anomalies {
            if !resolved(id) {
                problems.push(format!("{k} {id} unresolved"));
            }
        }
        if k == "e7" {
            let c = r.get("3.6").and_then(|e| e.recovered.as_ref()).and_then(|m| m.get("c1").cloned());
            notes.push(format!("e7 3.6 c1 = {}", c.unwrap_or_default()));
        }
    }
    if problems.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(problems.join(", "))
    }
}

fn c6_generation() -> Verdict {
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    for k in finite_keys() {
        let tr = k.triple().unwrap().specialize_t(&Rational::from_integer(1.into()));
        let dim = k.dim().unwrap();
        let xyz = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone(), tr.z.clone()]).unwrap().dim;
        if xyz != dim {
            problems.push(format!("{k}: x,y,z span {xyz} of {dim}"));
        }
        if matches!(k, AlgebraKey::Classical(ClassicalFamily::Sl, _)) {
            let xy = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone()]).unwrap().dim;
            if xy != dim {
                problems.push(format!("{k}: x,y span {xy} of {dim}"));
            }
        }
        if matches!(k.to_string().as_str(), "e8" | "o_even:4") {
            seen.push(format!("{k} {xyz}"));
        }
    }
    if problems.is_empty() {
        Ok(seen.join(", "))
    } else {
        Err(problems.join("; "))
    }
}

fn c7_decomposition() -> Verdict {
    for k in finite_keys() {
        let p = decompose_adjoint(&k.triple().unwrap()).map_err(|e| format!("{k}: {e}"))?;
        let got = p.sorted();
        match k {
            AlgebraKey::Classical(ClassicalFamily::OEven, n) => {
                if Some(&got) != k.expected_exponents().as_ref() || p.dim() != n * (2 * n - 1) {
                    return Err(format!("{k}: {p}"));
                }
                if k.printed_exponents() == Some(got) {
                    return Err(format!("{k}: listed row unexpectedly matches"));
                }
            }
            _ => {
                if Some(&got) != k.printed_exponents().as_ref() {
                    return Err(format!("{k}: {p} differs from the listed row"));
                }
            }
        }
    }
    Ok("listed rows match; o(2n) rows flagged".into())
}

fn c8_probe() -> Verdict {
    let mut out = Vec::new();
    for (k, d) in [("sl:3", 10), ("sl:4", 12)] {
        let k = key(k);
        let dim = k.dim().unwrap();
        let rels = verified_relations(&k, &Catalog::builtin(&k)).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let p = completeness_probe(&rels, k.n(), k.triple().unwrap().r, d).map_err(|e| e.to_string())?;
        if !p.filtration.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("{k}: filtration not monotone {:?}", p.filtration));
        }
        if p.filtration.iter().any(|&q| q < dim) {
            return Err(format!("{k}: filtration drops below {dim}"));
        }
        if p.stabilized() != Some(dim) {
            return Err(format!("{k}: quotient {:?}", p.quotient));
        }
        out.push(format!("{k} D={d} -> {dim} ({:.1}s)", start.elapsed().as_secs_f64()));
    }
    Ok(out.join(", "))
}

fn c9_representations() -> Verdict {
    let mu = MultiPoly::var(jacobson_core::Var::U);
    let m = module_matrices(&mu, 12);
    if !m.relations_hold() {
        return Err("module relations fail at formal mu".into());
    }
    if !m.casimir_is_scalar(&casimir_scalar(&mu)) {
        return Err("Casimir is not mu^2 + 2 mu".into());
    }
    let spec = poisson_spectrum(6).map_err(|e| e.to_string())?;
    if spec.sorted() != (0..=6).map(|k| 2 * k).collect::<Vec<u32>>() {
        return Err(format!("Poisson spectrum {spec}"));
    }
    Ok(format!("truncation 12, Poisson {spec}"))
}

const MALFORMED: [&str; 20] = [
    "",
    "[z1,z2]",
    "[z1,z2] =",
    "= y",
    "[z1,z2 = y",
    "[z1,z2]] = y",
    "[z1] = y",
    "[,z] = y",
    "[z1,z2] = 24*",
    "[z1,z2] = 24**t*y",
    "[z1,z2] = 24*q*y",
    "[z1,z2] = w",
    "(ad x)^ z = 0",
    "(ad x z = 0",
    "(ad x)^3 = 0",
    "[z1,z2] = t^*y",
    "[z1,z2] = y = z",
    "[z1,z2] = 1/0*y",
    "[z1,z2] = 3 y",
    "[z1;z2] = y",
];

fn c10_parser() -> Verdict {
    let mut keys = AlgebraKey::standard_keys();
    keys.extend(["sl:4", "o_even:4", "o_even:5", "sl_star", "osp_star"].map(key));
    let mut count = 0;
    for k in keys {
        for e in Catalog::builtin(&k).entries {
            let printed = e.relation.to_string();
            let again = parse_relation(&printed).map_err(|err| format!("{k} {}: {err}", e.label()))?;
            if again != e.relation || again.to_string() != printed {
                return Err(format!("{k} {} does not round-trip", e.label()));
            }
            count += 1;
        }
    }
    for s in MALFORMED {
        match parse_relation(s) {
            Err(Error::Syntax { pos, .. } | Error::UnknownSymbol { pos, .. }) if pos <= s.len() => {}
            other => return Err(format!("{s:?} gave {other:?}")),
        }
    }
    Ok(format!("{count} entries round-trip; {} malformed inputs rejected with positions", MALFORMED.len()))
}

/// Documented failures and the exact shape each must have.
fn known(n: usize, detail: &str) -> bool {
    match n {
        2 => detail == "not exact: sl:4 3.2, sl:4 3.2 recover",
        3 => {
                let mut ids: Vec<&str> = detail.trim_start_matches("not exact: ").split(", ").collect();
                ids.sort_unstable();
                ids == [
                    "osp_lambda 2.1",
                    "osp_lambda 2.1 recover",
                    "osp_lambda 2.2",
                    "osp_lambda 2.2 normalized",
                    "osp_lambda 2.2 recover",
                    "osp_lambda 3.2",
                    "osp_lambda 3.2 recover",
                ]
            },
        5 => detail == "e8 2.3 outside the span",
        6 => (3..=8).all(|n| detail.contains(&format!("sl:{n}: x,y span 3 of"))) && !detail.contains("x,y,z"),
        _ => false,
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("relations (0) and (1) on every triple", c1_base_relations),
        ("classical relation tables", c2_classical_tables),
        ("complex-size blocks and Casimir", c3_complex_size),
        ("lambda -> infinity limits", c4_limits),
        ("exceptional catalogs", c5_exceptional),
        ("generation", c6_generation),
        ("adjoint decomposition", c7_decomposition),
        ("completeness probe", c8_probe),
        ("sl(2) modules and Poisson spectrum", c9_representations),
        ("parser round trip and rejection", c10_parser),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        match &v {
            Ok(d) => println!("criterion {n:>2} PASS  {name} [{secs:.1}s]: {d}"),
            Err(d) if known(n, d) => println!("criterion {n:>2} FAIL  {name} [{secs:.1}s] (known): {d}"),
            Err(d) => {
                unexpected += 1;
                println!("criterion {n:>2} FAIL  {name} [{secs:.1}s] (unexpected): {d}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
