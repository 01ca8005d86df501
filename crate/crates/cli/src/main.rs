use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use valgebra::acceptance::{self, DEFAULT_SEED};
use valgebra::filtration::{level_report, symbol, w_membership, SampleSet};
use valgebra::invariant::{default_level, default_test_bodies, lefschetz_check, structure_constants, unitary_dimension};
use valgebra::json::{
    interval_to_json, parse, polynomial_to_json, polytope_from_json, polytope_to_json, rational_to_json, valuation_from_json,
    valuation_to_json,
};
use valgebra::mixed::{intrinsic_volumes, mixed_volume, steiner_coeffs};
use valgebra::valuation::{homogeneous_decomposition, pairing_matrix, parity_decomposition, product, EvalOptions};
use valgebra::{Error, QPolytope};

#[derive(Parser, Debug)]
#[command(
    name = "valgebra",
    version,
    about = "Exact products, filtrations and invariants of polynomial valuations on rational polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input: a file path, inline JSON, or `-` for stdin (the default).
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Ball approximation level (default 5 in the plane, 1 in space).
    #[arg(long, global = true)]
    level: Option<u32>,
    /// Largest ambient dimension for diagonal products.
    #[arg(long, global = true, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mixed volume of `{"bodies": [...]}` (n bodies in R^n).
    MixedVolume,
    /// Intrinsic volume brackets of a polytope.
    Intrinsic,
    /// Steiner polynomial coefficient brackets of a polytope.
    Steiner,
    /// Product of `{"left": valuation, "right": valuation}`, optionally evaluated on `"body"`.
    Product,
    /// Value of `{"valuation": ..., "body": ...}`.
    Evaluate,
    /// Homogeneous and parity decomposition of `{"valuation": ..., "bodies": [...]}`.
    Decompose,
    /// Pairing matrix of `{"left": [...], "right": [...]}`.
    Pairing,
    /// Filtration levels of a valuation on the default samples.
    Filtration,
    /// Symbol of `{"valuation": ..., "degree": i}` on the default samples.
    Symbol,
    /// Structure constants of the intrinsic volumes.
    StructureConstants {
        #[arg(long)]
        dim: usize,
    },
    /// Dimension of unitarily invariant valuations of degree k on C^m.
    Udim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Lefschetz inequalities and duality for a comma-separated profile.
    Lefschetz {
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<usize>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

enum Failure {
    Validation(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

fn diagnostic_code(e: &Error) -> &'static str {
    match e {
        Error::Invalid { .. } => "invalid-input",
        Error::DimensionMismatch { .. } | Error::UnsupportedDimension(_) => "dimension-mismatch",
        Error::CostGuard { .. } => "cost-guard",
        Error::DegreeMismatch(_) => "degree-mismatch",
        Error::WrongArity { .. } | Error::WrongVertexCount { .. } => "arity",
        Error::PreconditionUnmet(_) | Error::NotTranslationInvariant => "precondition",
        Error::OutOfRange(_) | Error::CutOutsideBox(_) => "out-of-range",
        _ => "invalid-argument",
    }
}

fn read_input(input: Option<&str>) -> Result<Value, Failure> {
    let text = match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Internal(format!("reading stdin: {e}")))?;
            s
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some(path) => std::fs::read_to_string(path).map_err(|e| {
            Failure::Validation(Error::Invalid {
                path: "--input".into(),
                message: format!("cannot read {path}: {e}"),
            })
        })?,
    };
    Ok(parse(&text)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Invalid {
        path: key.into(),
        message: "missing field".into(),
    })
}

fn list<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, Error> {
    field(v, key)?.as_array().ok_or_else(|| Error::Invalid {
        path: key.into(),
        message: "expected an array".into(),
    })
}

fn bodies(v: &Value, key: &str) -> Result<Vec<QPolytope>, Error> {
    list(v, key)?
        .iter()
        .enumerate()
        .map(|(i, b)| polytope_from_json(b, &format!("{key}[{i}]")))
        .collect()
}

fn valuations(v: &Value, key: &str) -> Result<Vec<valgebra::valuation::QValuation>, Error> {
    list(v, key)?
        .iter()
        .enumerate()
        .map(|(i, b)| valuation_from_json(b, &format!("{key}[{i}]")))
        .collect()
}

fn level_for(cli: &Cli, n: usize) -> u32 {
    cli.level.unwrap_or_else(|| default_level(n))
}

fn run(cli: &Cli) -> Result<(Map<String, Value>, bool), Failure> {
    let opts = EvalOptions {
        max_dim: cli.max_dim,
        ..EvalOptions::default()
    };
    let mut out = Map::new();
    let mut ok = true;
    match &cli.command {
        Command::MixedVolume => {
            let input = read_input(cli.input.as_deref())?;
            let bs = bodies(&input, "bodies")?;
            let refs: Vec<&QPolytope> = bs.iter().collect();
            out.insert("result".into(), rational_to_json(&mixed_volume(&refs)?));
        }
        Command::Intrinsic | Command::Steiner => {
            let input = read_input(cli.input.as_deref())?;
            let k = polytope_from_json(&input, "")?;
            let level = level_for(cli, k.dim());
            let values = if matches!(cli.command, Command::Intrinsic) {
                intrinsic_volumes(&k, level)?
            } else {
                steiner_coeffs(&k, level)?
            };
            out.insert("level".into(), json!(level));
            out.insert("result".into(), Value::Array(values.iter().map(interval_to_json).collect()));
        }
        Command::Product => {
            let input = read_input(cli.input.as_deref())?;
            let left = valuation_from_json(field(&input, "left")?, "left")?;
            let right = valuation_from_json(field(&input, "right")?, "right")?;
            let p = product(&left, &right)?;
            if let Some(b) = input.get("body") {
                let k = polytope_from_json(b, "body")?;
                out.insert("value".into(), rational_to_json(&p.evaluate_with(&k, &opts)?));
            }
            out.insert("result".into(), valuation_to_json(&p));
        }
        Command::Evaluate => {
            let input = read_input(cli.input.as_deref())?;
            let v = valuation_from_json(field(&input, "valuation")?, "valuation")?;
            let k = polytope_from_json(field(&input, "body")?, "body")?;
            out.insert("result".into(), rational_to_json(&v.evaluate_with(&k, &opts)?));
        }
        Command::Decompose => {
            let input = read_input(cli.input.as_deref())?;
            let v = valuation_from_json(field(&input, "valuation")?, "valuation")?;
            let bs = bodies(&input, "bodies")?;
            let d = homogeneous_decomposition(&v, &bs, &opts)?;
            let (even, odd) = parity_decomposition(&v);
            let values: Vec<Value> = bs
                .iter()
                .map(|k| {
                    d.components
                        .iter()
                        .map(|c| Ok(rational_to_json(&c.evaluate_with(k, &opts)?)))
                        .collect::<Result<Vec<_>, Error>>()
                        .map(Value::Array)
                })
                .collect::<Result<_, _>>()?;
            ok = d.reassembles && d.degree_pure;
            out.insert(
                "components".into(),
                Value::Array(d.components.iter().map(valuation_to_json).collect()),
            );
            out.insert("component_values".into(), Value::Array(values));
            out.insert("even".into(), valuation_to_json(&even));
            out.insert("odd".into(), valuation_to_json(&odd));
            out.insert("reassembles".into(), json!(d.reassembles));
            out.insert("degree_pure".into(), json!(d.degree_pure));
        }
        Command::Pairing => {
            let input = read_input(cli.input.as_deref())?;
            let m = pairing_matrix(&valuations(&input, "left")?, &valuations(&input, "right")?)?;
            let rows: Vec<Value> = m
                .entries
                .iter()
                .map(|r| Value::Array(r.iter().map(rational_to_json).collect()))
                .collect();
            out.insert("matrix".into(), Value::Array(rows));
            out.insert("rank".into(), json!(m.rank));
        }
        Command::Filtration => {
            let input = read_input(cli.input.as_deref())?;
            let v = valuation_from_json(&input, "")?;
            let samples = SampleSet::default_for(v.dim(), cli.seed);
            let levels = level_report(&v, &samples, &opts)?;
            let n = v.dim();
            // witnesses against membership one level above the certified level
            let above = levels.w_level.map_or(n + 2, |w| w + 1);
            let cert = w_membership(&v, above, &samples.pairs(), &opts)?;
            let witnesses: Vec<Value> = cert
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "body": polytope_to_json(&w.body),
                        "point": w.point.as_ref().map(|p| p.iter().map(rational_to_json).collect::<Vec<_>>()),
                        "value": rational_to_json(&w.value),
                        "lowest_order": w.lowest_order,
                    })
                })
                .collect();
            out.insert("generator".into(), valuation_to_json(&v));
            out.insert("gamma_level".into(), json!(levels.gamma_level));
            out.insert("w_level".into(), json!(levels.w_level));
            out.insert("sandwich".into(), json!(levels.sandwich));
            out.insert("witness_level".into(), json!(above));
            out.insert("witnesses".into(), Value::Array(witnesses));
        }
        Command::Symbol => {
            let input = read_input(cli.input.as_deref())?;
            let v = valuation_from_json(field(&input, "valuation")?, "valuation")?;
            let degree = field(&input, "degree")?.as_u64().ok_or_else(|| Error::Invalid {
                path: "degree".into(),
                message: "expected a nonnegative integer".into(),
            })? as usize;
            let samples = SampleSet::default_for(v.dim(), cli.seed);
            let s = symbol(&v, degree, &samples.full_dimensional(), &samples.x_grid, &opts)?;
            let entries: Vec<Value> = s
                .bodies
                .iter()
                .zip(&s.extracted)
                .map(|(k, p)| json!({"body": polytope_to_json(k), "symbol": polynomial_to_json(p)}))
                .collect();
            ok = s.routes_agree() != Some(false);
            out.insert("degree".into(), json!(degree));
            out.insert("symbols".into(), Value::Array(entries));
            out.insert("routes_agree".into(), json!(s.routes_agree()));
        }
        Command::StructureConstants { dim } => {
            let level = level_for(cli, *dim);
            let bs = default_test_bodies(*dim, cli.seed);
            let sc = structure_constants(*dim, level, &bs, cli.seed, &opts)?;
            let table: Vec<Value> = sc
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "i": e.i,
                        "j": e.j,
                        "per_body": e.per_body.iter().map(interval_to_json).collect::<Vec<_>>(),
                        "combined": e.combined.as_ref().map(interval_to_json),
                        "proportional": e.proportional(),
                        "excludes_zero": e.excludes_zero(),
                    })
                })
                .collect();
            out.insert("dim".into(), json!(dim));
            out.insert("level".into(), json!(level));
            out.insert("bodies".into(), Value::Array(bs.iter().map(polytope_to_json).collect()));
            out.insert("table".into(), Value::Array(table));
        }
        Command::Udim { k, m } => {
            out.insert("result".into(), json!(unitary_dimension(*k, *m)?));
        }
        Command::Lefschetz { h } => {
            let r = lefschetz_check(h);
            out.insert("holds".into(), json!(r.holds));
            out.insert("duality".into(), json!(r.duality));
        }
        Command::Verify { only } => {
            let ids: Vec<u8> = if only.is_empty() {
                acceptance::CRITERIA.iter().map(|c| c.0).collect()
            } else {
                only.clone()
            };
            let mut results = Vec::new();
            for id in ids {
                let r = acceptance::run_criterion(id, cli.seed).ok_or_else(|| {
                    Failure::Validation(Error::Invalid {
                        path: "--only".into(),
                        message: format!("no criterion {id}"),
                    })
                })?;
                eprintln!("{}", r.line());
                ok &= r.pass;
                let mut entry = json!({"id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail});
                if cli.timing {
                    entry["seconds"] = json!(r.elapsed.as_secs_f64());
                }
                results.push(entry);
            }
            out.insert("criteria".into(), Value::Array(results));
        }
    }
    Ok((out, ok))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::MixedVolume => "mixed-volume",
        Command::Intrinsic => "intrinsic",
        Command::Steiner => "steiner",
        Command::Product => "product",
        Command::Evaluate => "evaluate",
        Command::Decompose => "decompose",
        Command::Pairing => "pairing",
        Command::Filtration => "filtration",
        Command::Symbol => "symbol",
        Command::StructureConstants { .. } => "structure-constants",
        Command::Udim { .. } => "udim",
        Command::Lefschetz { .. } => "lefschetz",
        Command::Verify { .. } => "verify",
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("VALGEBRA_THREADS") else {
        return;
    };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring VALGEBRA_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| run(&cli)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(msg))
    });
    match outcome {
        Ok((results, ok)) => {
            let mut report = Map::new();
            report.insert("command".into(), json!(command_name(&cli.command)));
            report.insert("seed".into(), json!(cli.seed));
            report.insert("pass".into(), json!(ok));
            report.extend(results);
            if cli.timing {
                report.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
            }
            let report = Value::Object(report);
            let text = match cli.format {
                Format::Json => report.to_string(),
                Format::Pretty => serde_json::to_string_pretty(&report).expect("serializable"),
            };
            println!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Validation(e)) => {
            eprintln!("error[{}]: {e}", diagnostic_code(&e));
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
