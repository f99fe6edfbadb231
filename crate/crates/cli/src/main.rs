mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mptq::search::{
    self, Checkpoint, GridStrategy, SearchMode, SearchOptions, SearchReport, SequenceCertificate,
};
use mptq::setops::{classify, ClassificationReport};
use mptq::{transforms, AdditiveSet, MultiplicativeSet};
use num_bigint::BigInt;
use serde::Serialize;

use input::AnySet;

const SCHEMA_VERSION: u32 = 1;
const CHECKPOINT_EVERY: Duration = Duration::from_secs(10);

#[derive(Parser)]
#[command(
    name = "mptq",
    version,
    about = "Product/quotient and sum/difference set toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum World {
    Multiplicative,
    Additive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Mptq,
    Mstd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    HillClimb,
    RandomRestart,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sequence {
    Fib2,
    SignedPowers,
    Primes,
    File,
}

#[derive(Subcommand)]
enum Command {
    /// Derived-set sizes and verdict of one set.
    Classify {
        /// JSON array, @file, or fixture name.
        set: String,
        #[arg(long, value_enum)]
        mode: Option<World>,
    },
    /// Exhaustive search over subsets of {1..N}.
    Search(SearchArgs),
    #[command(subcommand)]
    Transform(Transform),
    /// Re-insert excluded primes into an MPTQ set.
    Expand {
        set: String,
        #[arg(long)]
        level: u64,
        /// Comma-separated primes.
        #[arg(long)]
        primes: String,
    },
    /// Certify that a sequence has no MPTQ subset.
    Certify {
        #[arg(long, value_enum)]
        sequence: Sequence,
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON array of number literals, for `--sequence file`.
        #[arg(long)]
        file: Option<String>,
    },
    /// Monte Carlo MPTQ/MSTD proportions among subsets of {1..n}.
    Density {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized search for MPTQ subsets of {2^a 3^b}.
    Grid {
        #[arg(long, default_value_t = 6)]
        max_e2: u32,
        #[arg(long, default_value_t = 6)]
        max_e3: u32,
        #[arg(long, value_enum, default_value_t = Strategy::HillClimb)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Classify every set with a multiplier sequence over given ratios.
    Explore {
        #[arg(long)]
        size: usize,
        /// Comma-separated ratio literals.
        #[arg(long, allow_hyphen_values = true)]
        candidates: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        head: String,
    },
    /// Classify all subsets of the first primes.
    Audit {
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[arg(long)]
        max_size: Option<usize>,
    },
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long = "max")]
    max: u64,
    #[arg(long, value_enum, default_value_t = Mode::Mptq)]
    mode: Mode,
    /// Worker threads (default: all cores).
    #[arg(long, env = "MPTQ_PARALLEL")]
    parallel: Option<usize>,
    /// Leading elements fixed per task; the search runs 2^split tasks.
    #[arg(long, default_value_t = 8)]
    split: usize,
    /// Stop after examining this many subsets.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    min_size: usize,
    #[arg(long)]
    max_size: Option<usize>,
    /// Keep every found set in the summary, not just the first ones.
    #[arg(long)]
    report_all: bool,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from --checkpoint if it exists.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
}

#[derive(Subcommand)]
enum Transform {
    /// log_r of a set of powers of r.
    Log { set: String, base: String },
    /// r^B for an additive set B.
    Exp { set: String, base: String },
    /// Replace prime p by prime q throughout.
    PrimeSwitch { set: String, p: u64, q: u64 },
    /// k-digit base-m expansion of an additive set; m may be `auto`.
    BaseExpand { set: String, k: usize, m: String },
    /// MPTQ sets built from a positive MPTQ set of powers of 2.
    Family {
        set: String,
        #[arg(required = true)]
        k: Vec<usize>,
    },
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(body: T) -> Result<()> {
    let line = serde_json::to_string(&Versioned {
        schema_version: SCHEMA_VERSION,
        body,
    })?;
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SetOutput<S: Serialize> {
    set: S,
}

#[derive(Serialize)]
struct ReportedSet<'a> {
    set: &'a MultiplicativeSet,
    #[serde(flatten)]
    report: &'a ClassificationReport,
}

enum Outcome {
    Done,
    Incomplete,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Incomplete) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Classify { set, mode } => {
            let additive = mode.map(|m| matches!(m, World::Additive));
            let report = match input::any_set(&set, additive)? {
                AnySet::Multiplicative(a) => classify(&a)?,
                AnySet::Additive(b) => classify(&b)?,
            };
            emit(report)?;
        }
        Command::Search(args) => return run_search(args),
        Command::Transform(t) => run_transform(t)?,
        Command::Expand { set, level, primes } => {
            let a = input::multiplicative(&set)?;
            let primes = primes
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .with_context(|| format!("bad prime `{p}`"))
                })
                .collect::<Result<Vec<_>>>()?;
            let sets = search::expand_with_primes(&a, level, &primes)?;
            emit(serde_json::json!({ "count": sets.len(), "sets": sets }))?;
        }
        Command::Certify {
            sequence,
            terms,
            r,
            seed,
            file,
        } => run_certify(sequence, terms, r, seed, file)?,
        Command::Density { n, samples, seed } => emit(search::density_estimate(n, samples, seed)?)?,
        Command::Grid {
            max_e2,
            max_e3,
            strategy,
            seed,
            budget,
        } => {
            let strategy = match strategy {
                Strategy::HillClimb => GridStrategy::HillClimb,
                Strategy::RandomRestart => GridStrategy::RandomRestart,
            };
            let found = search::grid_search(max_e2, max_e3, strategy, seed, budget)?;
            let sets: Vec<_> = found
                .iter()
                .map(|(set, report)| ReportedSet { set, report })
                .collect();
            emit(serde_json::json!({ "count": sets.len(), "found": sets }))?;
        }
        Command::Explore {
            size,
            candidates,
            head,
        } => {
            let candidates = input::numbers(&candidates)?;
            let head = input::number(&head)?;
            emit(search::explore_multiplier_space(size, &candidates, &head)?)?;
        }
        Command::Audit { count, max_size } => emit(search::prime_subset_audit(count, max_size)?)?,
    }
    Ok(Outcome::Done)
}

fn run_transform(t: Transform) -> Result<()> {
    match t {
        Transform::Log { set, base } => {
            let b = transforms::log_power(&input::multiplicative(&set)?, &input::number(&base)?)?;
            emit(SetOutput { set: b })
        }
        Transform::Exp { set, base } => {
            let a = transforms::exp_power(&input::additive(&set)?, &input::number(&base)?)?;
            emit(SetOutput { set: a })
        }
        Transform::PrimeSwitch { set, p, q } => emit(SetOutput {
            set: transforms::prime_switch(&input::multiplicative(&set)?, p, q)?,
        }),
        Transform::BaseExpand { set, k, m } => {
            let b: AdditiveSet = input::additive(&set)?;
            let m = if m == "auto" {
                transforms::safe_base(&b)
            } else {
                m.parse::<BigInt>()
                    .with_context(|| format!("bad base `{m}`"))?
            };
            let out = transforms::base_expansion(&b, k, &m)?;
            emit(serde_json::json!({ "m": m.to_string(), "size": out.len(), "set": out }))
        }
        Transform::Family { set, k } => {
            let sets = transforms::mptq_family(&input::multiplicative(&set)?, &k)?;
            let sizes: Vec<usize> = sets.iter().map(MultiplicativeSet::len).collect();
            emit(serde_json::json!({ "k": k, "sizes": sizes, "sets": sets }))
        }
    }
}

fn run_certify(
    sequence: Sequence,
    terms: Option<usize>,
    r: usize,
    seed: u64,
    file: Option<String>,
) -> Result<()> {
    if let Sequence::Primes = sequence {
        let audit = search::prime_subset_audit(terms.unwrap_or(12), None)?;
        return emit(audit);
    }
    let prefix = match sequence {
        Sequence::Fib2 => search::fibonacci_powers_of_two(terms.context("--terms is required")?)?,
        Sequence::SignedPowers => {
            search::signed_fibonacci_powers(terms.context("--terms is required")?, seed)?
        }
        Sequence::File => {
            let mut values = input::sequence_file(file.as_deref().context("--file is required")?)?;
            if let Some(k) = terms {
                values.truncate(k);
            }
            values
        }
        Sequence::Primes => unreachable!(),
    };
    if prefix.len() < r + 1 {
        bail!(
            "need at least r + 1 = {} terms, got {}",
            r + 1,
            prefix.len()
        );
    }
    let cert: SequenceCertificate = search::certify_sequence(&prefix, r)?;
    emit(cert)
}

#[derive(Serialize)]
struct FoundLine<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    elements: &'a [u64],
    #[serde(flatten)]
    report: &'a ClassificationReport,
}

#[derive(Serialize)]
struct Summary<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(flatten)]
    report: &'a SearchReport,
}

fn run_search(args: SearchArgs) -> Result<Outcome> {
    let stop = Arc::new(AtomicBool::new(false));
    {
        let stop = Arc::clone(&stop);
        ctrlc::set_handler(move || stop.store(true, Ordering::Relaxed))
            .context("installing Ctrl-C handler")?;
    }
    let options = SearchOptions {
        mode: match args.mode {
            Mode::Mptq => SearchMode::Mptq,
            Mode::Mstd => SearchMode::Mstd,
        },
        min_size: args.min_size,
        max_size: args.max_size,
        parallel_width: args.split,
        workers: args.parallel,
        report_all: args.report_all,
        budget: args.budget,
        stop: Some(stop),
    };
    let resumed = match &args.checkpoint {
        Some(path) if args.resume && path.exists() => Some(Checkpoint::load(path)?),
        _ => None,
    };
    let mut live = resumed
        .clone()
        .unwrap_or_else(|| Checkpoint::new(args.max, &options));
    let mut last_save = Instant::now();
    let mut save_error = None;
    let mut out = io::stdout().lock();
    let report = search::exhaustive_search_with(args.max, &options, resumed.as_ref(), |task| {
        for f in &task.found {
            let line = FoundLine {
                kind: "found",
                elements: &f.elements,
                report: &f.report,
            };
            if let Ok(text) = serde_json::to_string(&line) {
                let _ = writeln!(out, "{text}");
            }
        }
        let _ = out.flush();
        live.record(task.clone());
        if let Some(path) = &args.checkpoint {
            if last_save.elapsed() >= CHECKPOINT_EVERY {
                if let Err(e) = live.save(path) {
                    save_error.get_or_insert(e);
                }
                last_save = Instant::now();
            }
        }
    })?;
    if let Some(path) = &args.checkpoint {
        live.save(path)
            .with_context(|| format!("writing checkpoint {}", path.display()))?;
    }
    if let Some(e) = save_error {
        eprintln!("warning: periodic checkpoint write failed: {e}");
    }
    drop(out);
    emit(Summary {
        kind: "summary",
        report: &report,
    })?;
    if report.is_complete() {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Incomplete)
    }
}
