//! `sfcensus`: JSON front end for the invariant, bundle and census engine.
//!
//! Every subcommand prints one JSON document on stdout, except `enumerate`,
//! which streams JSON lines. Exit status is 0 on success, 1 when the input
//! is well formed but violates a precondition, 2 when it is malformed.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use sfcensus::json::{
    anosov_to_json, budget_from_json, certificate_to_json, cutoffs_to_json, flat_base_to_json,
    h1_to_json, int_from_json, int_to_json, mat2_from_json, mat2_to_json, partition_to_json,
    record_to_json, seifert_raw_from_json, seifert_to_json, summary_to_json, target_from_json,
    verdict_to_json,
};
use sfcensus::torus_bundle::{self, Conjugacy};
use sfcensus::{homology, AnosovMatrix, DominationBudget, Error, SeifertData, Target};

#[derive(Parser)]
#[command(
    name = "sfcensus",
    version,
    about = "Exact invariants and degree-one target censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Opts {
    /// JSON payload; read from stdin when omitted and needed
    payload: Option<String>,
    /// Budget JSON file
    #[arg(long)]
    budget: Option<PathBuf>,
    /// Also write the output to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace bound k
    #[arg(long)]
    max_trace: Option<i64>,
    /// First BFS entry cap (never below 2k² + 1)
    #[arg(long)]
    cap: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Put a Seifert invariant in standard form
    Normalize(Opts),
    /// e, χ, SV, torsion order and geometry of a Seifert manifold
    Invariants(Opts),
    /// Geometry of a Seifert manifold or torus bundle
    Classify(Opts),
    /// The closed orientable flat 2-orbifolds
    FlatBases(Opts),
    /// Trace, torsion order and H_1 of a Sol torus bundle
    BundleInvariants(Opts),
    /// Conjugate a monodromy into the box of entries <= 2k² + 1
    Reduce(Opts),
    /// SL(2,Z) conjugacy classes of Anosov matrices with |trace| <= k
    Classes(Opts),
    /// Decide whether two monodromies give the same bundle
    SameBundle(Opts),
    /// Evaluate the degree-one obstructions for a target under a budget
    Check(Opts),
    /// List every target passing all obstructions, as JSON lines
    Enumerate(Opts),
}

enum Failure {
    /// Well-formed input, violated precondition: status 1.
    Domain(Error),
    /// Status 2.
    Malformed(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(m) => Failure::Malformed(m),
            other => Failure::Domain(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Split the nested result of the two-level JSON parsers.
fn lift<T>(r: sfcensus::Result<sfcensus::Result<T>>) -> Outcome<T> {
    Ok(r??)
}

fn payload(opts: &Opts) -> Outcome<Value> {
    let text = match &opts.payload {
        Some(p) => p.clone(),
        None => io::read_to_string(io::stdin())?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("invalid JSON: {e}")))
}

fn seifert(opts: &Opts) -> Outcome<SeifertData> {
    Ok(seifert_raw_from_json(&payload(opts)?)?.normalize()?)
}

fn anosov(v: &Value) -> Outcome<AnosovMatrix> {
    Ok(AnosovMatrix::validate(mat2_from_json(v)?)?)
}

fn member<'a>(v: &'a Value, key: &str) -> Outcome<&'a Value> {
    v.get(key)
        .ok_or_else(|| Failure::Malformed(format!("missing field {key:?}")))
}

fn budget(opts: &Opts, payload: Option<&Value>) -> Outcome<DominationBudget> {
    match (&opts.budget, payload) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Malformed(format!("invalid budget JSON: {e}")))?;
            lift(budget_from_json(&v))
        }
        (None, Some(v)) => lift(budget_from_json(v)),
        (None, None) => Err(Failure::Malformed("a budget is required".into())),
    }
}

/// `--max-trace` wins over a `"k"` field, which wins over `default`.
fn trace_bound(opts: &Opts, v: Option<&Value>, default: Option<BigInt>) -> Outcome<BigInt> {
    if let Some(k) = opts.max_trace {
        return Ok(BigInt::from(k));
    }
    if let Some(k) = v.and_then(|v| v.get("k")) {
        return Ok(int_from_json(k)?);
    }
    default.ok_or_else(|| Failure::Malformed("a trace bound is required (--max-trace)".into()))
}

fn emit(opts: &Opts, v: &Value) -> Outcome<()> {
    let text = serde_json::to_string(v).expect("serializable");
    println!("{text}");
    if let Some(path) = &opts.out {
        fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn run(cmd: &Command) -> Outcome<()> {
    match cmd {
        Command::Normalize(o) => emit(o, &seifert_to_json(&seifert(o)?)),
        Command::Invariants(o) => emit(o, &summary_to_json(&seifert(o)?.summary())),
        Command::Classify(o) => {
            let geometry = match lift(target_from_json(&payload(o)?))? {
                Target::Seifert(n) => n.classify_geometry().as_str(),
                Target::Bundle(_) => "Sol",
            };
            emit(o, &json!({ "geometry": geometry }))
        }
        Command::FlatBases(o) => {
            let list: Vec<Value> = sfcensus::enumerate_flat_bases()
                .iter()
                .map(flat_base_to_json)
                .collect();
            emit(o, &Value::Array(list))
        }
        Command::BundleInvariants(o) => {
            let a = anosov(&payload(o)?)?;
            emit(
                o,
                &json!({
                    "trace": int_to_json(&a.trace()),
                    "torsion": int_to_json(&a.bundle_torsion_order()),
                    "h1": h1_to_json(&homology::h1_bundle(&a)),
                    "geometry": "Sol",
                }),
            )
        }
        Command::Reduce(o) => {
            let v = payload(o)?;
            let a = anosov(&v)?;
            let k = trace_bound(
                o,
                Some(&v),
                Some(BigInt::from(a.trace().magnitude().clone())),
            )?;
            let cert = torus_bundle::reduce_trace_bounded(&a, &k)?;
            emit(o, &certificate_to_json(&cert))
        }
        Command::Classes(o) => {
            let v = match (&o.payload, o.max_trace) {
                (None, Some(_)) => None,
                _ => Some(payload(o)?),
            };
            let k = trace_bound(o, v.as_ref(), None)?;
            let k = i64::try_from(&k).map_err(|_| Error::InvalidBound(format!("k = {k}")))?;
            let part = torus_bundle::conjugacy_classes_bounded(k, o.cap)?;
            if !part.initial_cap_stable {
                eprintln!(
                    "warning: partition changed above the first cap; stable from cap {}",
                    part.stable_cap
                );
            }
            emit(o, &partition_to_json(&part))
        }
        Command::SameBundle(o) => {
            let v = payload(o)?;
            let a = anosov(member(&v, "a")?)?;
            let b = anosov(member(&v, "b")?)?;
            let out = match torus_bundle::same_bundle(&a, &b, o.cap)? {
                Conjugacy::Conjugate { conjugator } => json!({
                    "same": true,
                    "conjugator": mat2_to_json(&conjugator),
                }),
                Conjugacy::TraceDiffers => json!({ "same": false, "reason": "trace differs" }),
                Conjugacy::NotConjugate { cap } => json!({
                    "same": false,
                    "reason": "not conjugate",
                    "cap": cap,
                }),
            };
            emit(o, &out)
        }
        Command::Check(o) => {
            let v = payload(o)?;
            let (budget, target) = if o.budget.is_some() {
                (budget(o, None)?, lift(target_from_json(&v))?)
            } else {
                let b = budget(o, Some(member(&v, "budget")?))?;
                (b, lift(target_from_json(member(&v, "target")?))?)
            };
            let verdict = sfcensus::check_necessary_conditions(&budget, &target);
            let mut out = verdict_to_json(&verdict);
            out["target"] = match &target {
                Target::Seifert(n) => seifert_to_json(n),
                Target::Bundle(a) => anosov_to_json(a),
            };
            out["torsion"] = int_to_json(&verdict.torsion);
            emit(o, &out)
        }
        Command::Enumerate(o) => {
            let v = if o.budget.is_some() {
                None
            } else {
                Some(payload(o)?)
            };
            let budget = budget(o, v.as_ref())?;
            let census = sfcensus::enumerate_all(&budget, o.cap)?;
            let stdout = io::stdout();
            let mut console = BufWriter::new(stdout.lock());
            let mut file = o
                .out
                .as_ref()
                .map(File::create)
                .transpose()?
                .map(BufWriter::new);
            for r in &census.records {
                let line = serde_json::to_string(&record_to_json(r)).expect("serializable");
                writeln!(console, "{line}")?;
                if let Some(f) = file.as_mut() {
                    writeln!(f, "{line}")?;
                }
            }
            console.flush()?;
            if let Some(mut f) = file {
                f.flush()?;
            }
            for t in &census.unstable_traces {
                eprintln!("warning: trace {t} partition changed above the first cap");
            }
            eprintln!(
                "{}",
                json!({ "records": census.records.len(), "cutoffs": cutoffs_to_json(&census.cutoffs) })
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
        Err(Failure::Malformed(m)) => {
            println!("{}", json!({ "error": m }));
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("sfcensus: {e}");
            ExitCode::from(2)
        }
    }
}
