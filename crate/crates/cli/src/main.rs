//! Command-line front end: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 a checked property is false, 2 input error,
//! 3 resource cap exceeded, 4 theorem contradiction (an outcome whose
//! impossibility is mathematically guaranteed, surfacing a bug in the
//! input or the implementation).

mod verify;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use wclones::classify::classify;
use wclones::clone_gen::CloneSlice;
use wclones::domain::FiniteDomain;
use wclones::enumerate::{enumerate_operations, OpFilter};
use wclones::error::Error;
use wclones::gordan::{solve_gordan, QMatrix};
use wclones::json::{projection_shorthand, InstanceDoc};
use wclones::ops::Operation;
use wclones::pipeline::{find_witness, PipelineCaps, SliceSource};
use wclones::relation::Language;
use wclones::weighting::Weighting;
use wclones::wpol_search::{core_reduce, find_weighted_polymorphism, WpolPool};

#[derive(Parser)]
#[command(
    name = "wclones",
    about = "Weighted clones over finite domains: classification, weightings, witnesses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite operations: classification and enumeration.
    Op {
        #[command(subcommand)]
        command: OpCommand,
    },
    /// Weightings: validity, superposition, symmetrization.
    Weighting {
        #[command(subcommand)]
        command: WeightingCommand,
    },
    /// The exact Gordan-alternative solver.
    Gordan {
        #[command(subcommand)]
        command: GordanCommand,
    },
    /// The constructive witness pipeline.
    Witness {
        #[command(subcommand)]
        command: WitnessCommand,
    },
    /// VCSP instances: brute-force optimization and expressibility.
    Vcsp {
        #[command(subcommand)]
        command: VcspCommand,
    },
    /// Valued constraint languages: cores and weighted-polymorphism search.
    Lang {
        #[command(subcommand)]
        command: LangCommand,
    },
    /// Built-in verification suites.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum OpCommand {
    /// Classify an operation: projection, idempotence, sharpness, taxonomy.
    Classify(ClassifyArgs),
    /// Enumerate operations in ascending table order.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Path to an operation JSON file, or an inline "e:k:i" shorthand.
    #[arg(long)]
    op: String,
    /// Domain size for shorthand input.
    #[arg(long)]
    domain: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    domain: usize,
    #[arg(long)]
    arity: usize,
    /// One of: idempotent, idempotent-non-projection, sharp,
    /// near-unanimity, majority, minority, semiprojection.
    #[arg(long)]
    filter: Option<String>,
    /// Cap on the enumeration (full space without a filter, yielded
    /// operations with one).
    #[arg(long)]
    cap: Option<u128>,
    /// Print only the count.
    #[arg(long)]
    count_only: bool,
}

#[derive(Subcommand)]
enum WeightingCommand {
    /// Report zero-sum status, sign violations, positivity.
    Check(WeightingFileArgs),
    /// Superpose a weighting with a tuple of operations.
    Superpose(SuperposeArgs),
    /// Cyclic symmetrization to projection weights −1.
    Symmetrize(WeightingFileArgs),
}

#[derive(Args)]
struct WeightingFileArgs {
    /// Path to a weighting JSON file.
    #[arg(long)]
    weighting: String,
}

#[derive(Args)]
struct SuperposeArgs {
    #[arg(long)]
    weighting: String,
    /// Path to a JSON array of operations (shorthands allowed).
    #[arg(long)]
    with: String,
    /// Fail when the result places negative weight on a non-projection.
    #[arg(long)]
    require_proper: bool,
}

#[derive(Subcommand)]
enum GordanCommand {
    /// Decide the alternative for a rational matrix.
    Solve(MatrixArgs),
}

#[derive(Args)]
struct MatrixArgs {
    /// Path to a matrix JSON file.
    #[arg(long)]
    matrix: String,
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Produce a certified witness weighting from a generator.
    Find(WitnessArgs),
}

#[derive(Args)]
struct WitnessArgs {
    /// Path to the generator weighting JSON file.
    #[arg(long)]
    weighting: String,
    /// Cap on generated clone-slice sizes.
    #[arg(long)]
    max_ops: Option<usize>,
    /// Optional pre-generated clone slice (JSON) to use for the
    /// elimination systems instead of generating one.
    #[arg(long)]
    slice: Option<String>,
}

#[derive(Subcommand)]
enum VcspCommand {
    /// Exact brute-force minimization.
    Solve(SolveArgs),
    /// Express a weighted relation by minimizing over bound variables.
    Express(ExpressArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Path to an instance JSON file.
    #[arg(long)]
    instance: String,
    /// Cap on the number of assignments.
    #[arg(long)]
    cap: Option<u128>,
    /// Keep at most this many minimizers.
    #[arg(long)]
    max_argmin: Option<usize>,
}

#[derive(Args)]
struct ExpressArgs {
    #[arg(long)]
    instance: String,
    /// Comma-separated ordered list of free variables, e.g. `0,2`.
    #[arg(long)]
    free: String,
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Subcommand)]
enum LangCommand {
    /// Shrink a language to a core, reporting the range chain.
    CoreReduce(LangArgs),
    /// Search for a positive weighted polymorphism of the given arity.
    FindWpol(FindWpolArgs),
}

#[derive(Args)]
struct LangArgs {
    /// Path to a language JSON file.
    #[arg(long)]
    language: String,
}

#[derive(Args)]
struct FindWpolArgs {
    #[arg(long)]
    language: String,
    #[arg(long)]
    arity: usize,
    /// Path to a JSON array of pool operations; the full operation space
    /// is enumerated when omitted.
    #[arg(long)]
    pool: Option<String>,
    /// Cap on the pool enumeration.
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the bundled example-verification suite.
    PaperExamples(PaperExamplesArgs),
}

#[derive(Args)]
struct PaperExamplesArgs {
    /// Print the embedded fixtures as JSON instead of running the checks.
    #[arg(long)]
    dump_fixtures: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) => 2u8,
                Error::Resource { .. } => 3,
                Error::TheoremContradiction(_) | Error::Structural(_) => 4,
                Error::Improper { .. } | Error::Validity(_) | Error::Certificate(_) => 1,
            })
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &str, what: &str) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {what} file {path:?}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("cannot parse {what} file {path:?}: {e}")))
}

fn emit<T: Serialize>(payload: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(payload)
        .map_err(|e| Error::input(format!("cannot serialize payload: {e}")))?;
    println!("{text}");
    Ok(())
}

fn load_operation(spec: &str, domain: Option<usize>) -> Result<Operation, Error> {
    if spec.starts_with("e:") {
        let size = domain.ok_or_else(|| {
            Error::input("shorthand operations need --domain to fix the label set")
        })?;
        return projection_shorthand(spec, FiniteDomain::new(size)?);
    }
    read_json(spec, "operation")
}

fn parse_filter(name: &str) -> Result<OpFilter, Error> {
    Ok(match name {
        "idempotent" => OpFilter::Idempotent,
        "idempotent-non-projection" => OpFilter::IdempotentNonProjection,
        "sharp" => OpFilter::Sharp,
        "near-unanimity" => OpFilter::NearUnanimity,
        "majority" => OpFilter::Majority,
        "minority" => OpFilter::Minority,
        "semiprojection" => OpFilter::Semiprojection,
        other => {
            return Err(Error::input(format!(
                "unknown filter {other:?}; see --help for the list"
            )))
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Op { command } => match command {
            OpCommand::Classify(args) => {
                let op = load_operation(&args.op, args.domain)?;
                let class = classify(&op);
                #[derive(Serialize)]
                struct Payload {
                    op: Operation,
                    class: wclones::classify::OpClass,
                }
                emit(&Payload { op, class })?;
                Ok(ExitCode::SUCCESS)
            }
            OpCommand::Enumerate(args) => {
                let domain = FiniteDomain::new(args.domain)?;
                let filter = args.filter.as_deref().map(parse_filter).transpose()?;
                let ops = enumerate_operations(domain, args.arity, filter, args.cap)?
                    .collect::<Result<Vec<_>, Error>>()?;
                #[derive(Serialize)]
                struct Payload {
                    count: usize,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    operations: Option<Vec<Operation>>,
                }
                emit(&Payload {
                    count: ops.len(),
                    operations: if args.count_only { None } else { Some(ops) },
                })?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Weighting { command } => match command {
            WeightingCommand::Check(args) => {
                let w: Weighting = read_json(&args.weighting, "weighting")?;
                let report = w.validate();
                let support_commutative = if w.arity() == 2 {
                    Some(w.support().all(|op| classify(op).commutative == Some(true)))
                } else {
                    None
                };
                #[derive(Serialize)]
                struct Payload {
                    report: wclones::weighting::ValidityReport,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    support_commutative: Option<bool>,
                }
                let ok = report.is_valid();
                emit(&Payload {
                    report,
                    support_commutative,
                })?;
                Ok(if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
            WeightingCommand::Superpose(args) => {
                let w: Weighting = read_json(&args.weighting, "weighting")?;
                let inputs: Vec<wclones::json::OpInput> = read_json(&args.with, "operation list")?;
                let gs: Vec<Operation> = inputs
                    .into_iter()
                    .map(|i| i.resolve(Some(w.domain())))
                    .collect::<Result<_, Error>>()?;
                let out = w.superpose(&gs, args.require_proper)?;
                emit(&out)?;
                Ok(ExitCode::SUCCESS)
            }
            WeightingCommand::Symmetrize(args) => {
                let w: Weighting = read_json(&args.weighting, "weighting")?;
                let out = w.symmetrize()?;
                emit(&out)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Gordan { command } => match command {
            GordanCommand::Solve(args) => {
                let matrix: QMatrix = read_json(&args.matrix, "matrix")?;
                emit(&solve_gordan(&matrix))?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Witness { command } => match command {
            WitnessCommand::Find(args) => {
                let w: Weighting = read_json(&args.weighting, "weighting")?;
                let caps = PipelineCaps {
                    op_cap: args.max_ops.unwrap_or(wclones::clone_gen::DEFAULT_OP_CAP),
                };
                let report = match args.slice {
                    Some(path) => {
                        let slice: CloneSlice = read_json(&path, "clone slice")?;
                        slice.verify_structure()?;
                        wclones::pipeline::find_witness_with_slice(
                            &[w],
                            &caps,
                            SliceSource::Ready(slice),
                        )?
                    }
                    None => find_witness(&[w], &caps)?,
                };
                emit(&report)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Vcsp { command } => match command {
            VcspCommand::Solve(args) => {
                let doc: InstanceDoc = read_json(&args.instance, "instance")?;
                let inst = doc.into_instance()?;
                let res = inst.solve_bruteforce(args.cap, args.max_argmin)?;
                #[derive(Serialize)]
                struct Payload {
                    optimum: wclones::rational::ExtRational,
                    argmin: Vec<Vec<usize>>,
                    truncated: bool,
                }
                emit(&Payload {
                    optimum: res.optimum,
                    argmin: res.argmin,
                    truncated: res.truncated,
                })?;
                Ok(ExitCode::SUCCESS)
            }
            VcspCommand::Express(args) => {
                let doc: InstanceDoc = read_json(&args.instance, "instance")?;
                let inst = doc.into_instance()?;
                let free: Vec<usize> = args
                    .free
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::input(format!("bad variable index {s:?}")))
                    })
                    .collect::<Result<_, Error>>()?;
                let rel = inst.express(&free, args.cap)?;
                emit(&rel)?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Lang { command } => match command {
            LangCommand::CoreReduce(args) => {
                let lang: Language = read_json(&args.language, "language")?;
                let red = core_reduce(&lang)?;
                #[derive(Serialize)]
                struct StepPayload {
                    op: Operation,
                    range: Vec<usize>,
                }
                #[derive(Serialize)]
                struct Payload {
                    domain: usize,
                    language: Language,
                    chain: Vec<StepPayload>,
                }
                emit(&Payload {
                    domain: red.domain.size(),
                    language: red.language,
                    chain: red
                        .chain
                        .into_iter()
                        .map(|s| StepPayload {
                            op: s.op,
                            range: s.range,
                        })
                        .collect(),
                })?;
                Ok(ExitCode::SUCCESS)
            }
            LangCommand::FindWpol(args) => {
                let lang: Language = read_json(&args.language, "language")?;
                let pool_ops: Option<Vec<Operation>> = match &args.pool {
                    Some(path) => Some(read_json(path, "pool")?),
                    None => None,
                };
                let pool = match &pool_ops {
                    Some(ops) => WpolPool::Ops(ops),
                    None => WpolPool::Enumerate { cap: args.cap },
                };
                let outcome = find_weighted_polymorphism(&lang, args.arity, pool)?;
                #[derive(Serialize)]
                struct ReportPayload {
                    pool_size: usize,
                    discarded: usize,
                    families: usize,
                    objective: String,
                }
                #[derive(Serialize)]
                struct Payload {
                    found: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    weighting: Option<Weighting>,
                    report: ReportPayload,
                }
                let report = outcome.report().clone();
                let payload = Payload {
                    found: outcome.weighting().is_some(),
                    weighting: outcome.weighting().cloned(),
                    report: ReportPayload {
                        pool_size: report.pool_size,
                        discarded: report.discarded,
                        families: report.families,
                        objective: report.objective.to_string(),
                    },
                };
                let found = payload.found;
                emit(&payload)?;
                Ok(if found {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Command::Verify { command } => match command {
            VerifyCommand::PaperExamples(args) => {
                if args.dump_fixtures {
                    emit(&verify::fixture_bundle()?)?;
                    return Ok(ExitCode::SUCCESS);
                }
                let checks = verify::run_paper_examples()?;
                let all_pass = checks.iter().all(|c| c.pass);
                for c in &checks {
                    eprintln!(
                        "{}: {} — {}",
                        c.name,
                        if c.pass { "pass" } else { "FAIL" },
                        c.detail
                    );
                }
                emit(&checks)?;
                Ok(if all_pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
    }
}
