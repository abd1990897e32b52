use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use jacobson_core::lie::span_closure;
use jacobson_core::presentations::{
    completeness_probe, decomposition_check, parse_relation, recover_coefficients, verified_relations, verify_suite,
    AlgebraKey, Catalog, Outcome, Recovery, SuiteOptions, VerificationReport, MAX_PROBE_DEGREE,
};
use jacobson_core::sl2::decompose_adjoint;
use jacobson_core::{Error, Rational};

const EXIT_FAIL: u8 = 1;
const EXIT_RECOVERED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DEGREE: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "jacobson", version, about = "Verify presentations of Lie algebras by Jacobson generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the relation catalog of an algebra.
    Verify {
        key: AlgebraKey,
        /// Specialize t to this rational value.
        #[arg(long)]
        t: Option<Rational>,
        /// Use this catalog file instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Record per-relation timings.
        #[arg(long)]
        timings: bool,
    },
    /// Highest weights of the adjoint module under the principal sl(2).
    Decompose { key: AlgebraKey },
    /// Dimensions of the subalgebras generated by x, y, z and by x, y.
    GenerateCheck { key: AlgebraKey },
    /// Truncated quotient dimensions of the presented algebra.
    Probe {
        key: AlgebraKey,
        #[arg(long, default_value_t = 10)]
        degree: usize,
    },
    /// Compare the lambda -> infinity limits with the stored relations.
    Limit { key: AlgebraKey },
    /// Solve for the unknown coefficients of a relation.
    Recover {
        key: AlgebraKey,
        relation: String,
        #[arg(long)]
        t: Option<Rational>,
    },
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::ExactPass => 0,
        Outcome::RecoveredCoefficient => EXIT_RECOVERED,
        Outcome::Fail => EXIT_FAIL,
    }
}

fn report_output(report: &VerificationReport) -> Output {
    let worst = report.results.iter().map(|e| e.outcome).max().unwrap_or(Outcome::ExactPass);
    Output {
        text: report.to_string(),
        json: serde_json::to_value(report).expect("report serializes"),
        code: outcome_code(worst),
    }
}

fn finite(key: &AlgebraKey) -> Result<usize, Error> {
    key.dim().ok_or_else(|| Error::InvalidKey(format!("{key} is not finite-dimensional")))
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Verify { key, t, catalog, timings } => {
            let catalog = match catalog {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
                    Some(Catalog::parse(&text)?)
                }
                None => None,
            };
            let options = SuiteOptions { t, timings, catalog, checks: true };
            Ok(report_output(&verify_suite(&key, &options)?))
        }
        Command::Decompose { key } => {
            finite(&key)?;
            let triple = key.triple()?;
            let profile = decompose_adjoint(&triple)?;
            let check = decomposition_check(&key, &triple);
            let listed = key.printed_exponents().unwrap_or_default();
            let matches = profile.sorted() == listed;
            let mut text = format!("{key}: {profile}\ndimension {}\n", profile.dim());
            for n in &check.notes[1..] {
                text.push_str(&format!("note: {n}\n"));
            }
            text.push_str(if matches { "matches the listed row\n" } else { "differs from the listed row\n" });
            let code = match (matches, check.outcome) {
                (true, _) => 0,
                (false, Outcome::ExactPass) => EXIT_RECOVERED,
                _ => EXIT_FAIL,
            };
            Ok(Output {
                text,
                json: json!({
                    "algebra": key.to_string(),
                    "weights": profile.sorted(),
                    "dim": profile.dim(),
                    "listed": listed,
                    "matches_listed": matches,
                    "notes": check.notes,
                }),
                code,
            })
        }
        Command::GenerateCheck { key } => {
            let dim = finite(&key)?;
            let tr = key.triple()?.specialize_t(&Rational::from_integer(1.into()));
            let xyz = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone(), tr.z.clone()])?.dim;
            let xy = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone()])?.dim;
            Ok(Output {
                text: format!("{key}: dim {dim}\nspan of x, y, z: {xyz}\nspan of x, y: {xy}\n"),
                json: json!({ "algebra": key.to_string(), "dim": dim, "span_xyz": xyz, "span_xy": xy }),
                code: if xyz == dim { 0 } else { EXIT_FAIL },
            })
        }
        Command::Probe { key, degree } => {
            let dim = finite(&key)?;
            if degree > MAX_PROBE_DEGREE {
                return Err(Error::DegreeBoundExceeded { requested: degree, max: MAX_PROBE_DEGREE });
            }
            let triple = key.triple()?;
            let relations = verified_relations(&key, &Catalog::builtin(&key))?;
            let p = completeness_probe(&relations, key.n(), triple.r, degree)?;
            let stable = p.stabilized();
            let mut text = format!("{key}: probe to degree {degree}\n");
            for (d, (q, f)) in p.quotient.iter().zip(&p.free_graded).enumerate() {
                text.push_str(&format!("  d={:<2} free {f:>6}  quotient {q}\n", d + 1));
            }
            text.push_str(&match stable {
                Some(s) => format!("stabilizes at {s} (dim {dim})\n"),
                None => format!("not yet stable (dim {dim})\n"),
            });
            Ok(Output {
                text,
                json: json!({
                    "algebra": key.to_string(),
                    "degree": degree,
                    "free_graded": p.free_graded,
                    "quotient": p.quotient,
                    "filtration": p.filtration,
                    "stabilized": stable,
                    "dim": dim,
                }),
                code: if stable == Some(dim) { 0 } else { EXIT_FAIL },
            })
        }
        Command::Limit { key } => {
            if !matches!(key, AlgebraKey::Star(_)) {
                return Err(Error::InvalidKey(format!("{key} has no limit catalog")));
            }
            Ok(report_output(&verify_suite(&key, &SuiteOptions::default())?))
        }
        Command::Recover { key, relation, t } => {
            let rel = parse_relation(&relation)?;
            let mut triple = key.triple()?;
            if let Some(t) = &t {
                triple = triple.specialize_t(t);
            }
            let (text, values, code) = match recover_coefficients(&rel, &triple, key.n())? {
                Recovery::Unique(v) => ("unique".to_string(), v, 0),
                Recovery::Family { particular, freedom } => (format!("family with {freedom} free directions"), particular, EXIT_RECOVERED),
                Recovery::Infeasible { residual } => {
                    (format!("infeasible ({} coordinates outside the span)", residual.len()), Default::default(), EXIT_FAIL)
                }
            };
            let shown: serde_json::Map<String, serde_json::Value> =
                values.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
            let mut out = format!("{key}: {rel}\n{text}\n");
            for (k, v) in &values {
                out.push_str(&format!("  {k} = {v}\n"));
            }
            Ok(Output {
                text: out,
                json: json!({ "algebra": key.to_string(), "relation": rel.to_string(), "result": text, "recovered": shown }),
                code,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let out = match run(cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::DegreeBoundExceeded { .. } => EXIT_DEGREE,
                Error::InvalidKey(_) | Error::Syntax { .. } | Error::UnknownSymbol { .. } | Error::Catalog(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            });
        }
    };
    let body = match cli.format {
        Format::Text => out.text,
        Format::Json => {
            let mut v = out.json;
            v.as_object_mut().map(|m| m.entry("schema_version").or_insert(json!(1)));
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = fs::write(&path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_FAIL);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(out.code)
}
