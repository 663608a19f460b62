//! `qsocle`: run quasi-socle cases and sweeps from the command line.
//!
//! Exit codes: 0 when every case agrees, 1 on a disagreement or failed case,
//! 2 on usage or I/O errors, 3 when `--strict` is set and a case was skipped
//! by a cap.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qsocle_core::harness::{box_cap_from_env, write_report, BOX_CAP_ENV};
use qsocle_core::verify;
use qsocle_core::{
    closure_diagonal, closure_generators, in_closure_diagonal, in_closure_general, run_single, run_sweep,
    CaseDescriptor, Caps, CaseSpec, ExponentVector, Format, MonomialIdeal, RunOptions, RunReport, SemigroupSpec, SweepRanges, SweepSpec,
};

#[derive(Parser)]
#[command(name = "qsocle", version, about = "Quasi-socle ideals Q : m^q, predicted and computed")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one case given by flags or a descriptor file.
    Analyze(AnalyzeArgs),
    /// Run every case in a range of parameters.
    Sweep(SweepArgs),
    /// Integral closure membership and generators.
    Closure(ClosureArgs),
    /// Analyze one case of the numerical semigroup model.
    Semigroup(SemigroupArgs),
    /// Run the built-in acceptance suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Regular,
    Semigroup,
    PredictorOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    JsonLines,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::JsonLines => Format::JsonLines,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with 3 when any case was skipped by a cap.
    #[arg(long)]
    strict: bool,
    /// Leave the run timestamp out of the report.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum, default_value = "regular")]
    model: ModelArg,
    /// Exponents, comma separated (a single value for the semigroup model).
    #[arg(long, value_delimiter = ',')]
    a: Vec<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    gm_a_invariant: Option<i64>,
    /// JSON case descriptor; replaces the case flags.
    #[arg(long, conflicts_with_all = ["a", "b", "n", "q", "gm_a_invariant"])]
    descriptor: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "regular")]
    model: ModelArg,
    /// Dimensions, as a list or range such as `2,3` or `2-3`.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Defaults to `1..=rho` per case.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gm_a_invariant: Option<i64>,
    /// JSON sweep spec; replaces the range flags.
    #[arg(long, conflicts_with_all = ["dims", "a", "b", "n", "q", "gm_a_invariant"])]
    spec: Option<PathBuf>,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Skip cases not started within this many seconds.
    #[arg(long)]
    time_budget: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ClosureArgs {
    /// Exponents of a diagonal ideal `(x_1^{a_1}, ..., x_d^{a_d})`.
    #[arg(long, value_delimiter = ',', conflicts_with = "ideal")]
    diagonal: Vec<u32>,
    /// Generators of a monomial ideal, `;` between generators: `2,0;1,1;0,3`.
    #[arg(long)]
    ideal: Option<String>,
    /// Test this point instead of listing closure generators.
    #[arg(long, value_delimiter = ',')]
    point: Vec<u32>,
}

#[derive(Args)]
struct SemigroupArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    criterion: Vec<u8>,
}

/// `1-4`, `1,2,5` or a mix such as `1-3,7`.
fn parse_range<T>(s: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr + Copy + PartialOrd + TryFrom<u64>,
    u64: TryFrom<T>,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parse = |x: &str| -> Result<T> { x.trim().parse::<T>().ok().with_context(|| format!("bad number {x:?}")) };
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi)?);
                let (lo, hi) = (
                    u64::try_from(lo).ok().context("range bound")?,
                    u64::try_from(hi).ok().context("range bound")?,
                );
                if lo > hi {
                    bail!("empty range {part:?}");
                }
                for v in lo..=hi {
                    out.push(T::try_from(v).ok().context("range bound")?);
                }
            }
            None => out.push(parse(part)?),
        }
    }
    Ok(out)
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("missing --{flag}"))
}

fn caps_with_env(mut caps: Caps) -> Result<Caps> {
    if std::env::var_os(BOX_CAP_ENV).is_some() {
        caps.box_points = box_cap_from_env()?;
    }
    Ok(caps)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes the report and maps it to an exit code.
fn emit(report: &RunReport, output: &Output) -> Result<ExitCode> {
    let format = output.format.into();
    match &output.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_report(report, format, &mut w)?;
            w.flush()?;
        }
        None => write_report(report, format, io::stdout().lock())?,
    }
    Ok(if !report.passed() {
        ExitCode::from(1)
    } else if output.strict && report.summary.skipped_by_cap > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

/// Rejects a malformed single case up front, so it exits as a usage error.
fn validate(descriptor: &CaseDescriptor) -> Result<()> {
    match descriptor {
        CaseDescriptor::Regular { a, q } => CaseSpec::regular(a.clone(), *q).map(drop),
        CaseDescriptor::Semigroup { a, b, n, q } => SemigroupSpec::new(*a, *b, *n, *q).map(drop),
        CaseDescriptor::PredictorOnly { a, q, gm_a_invariant } => CaseSpec::new(a.clone(), *q, *gm_a_invariant).map(drop),
    }?;
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let descriptor = match &args.descriptor {
        Some(path) => read_json(path)?,
        None => {
            let q = required(args.q, "q")?;
            match args.model {
                ModelArg::Regular => CaseDescriptor::Regular { a: args.a, q },
                ModelArg::PredictorOnly => CaseDescriptor::PredictorOnly {
                    a: args.a,
                    q,
                    gm_a_invariant: required(args.gm_a_invariant, "gm-a-invariant")?,
                },
                ModelArg::Semigroup => {
                    let [a] = args.a[..] else {
                        bail!("the semigroup model takes a single --a");
                    };
                    CaseDescriptor::Semigroup {
                        a,
                        b: required(args.b, "b")?,
                        n: required(args.n, "n")?,
                        q,
                    }
                }
            }
        }
    };
    validate(&descriptor)?;
    let caps = caps_with_env(Caps::default())?;
    let report = run_single(&descriptor, &caps, !args.output.no_timestamp)?;
    emit(&report, &args.output)
}

fn sweep(args: SweepArgs) -> Result<ExitCode> {
    let mut spec: SweepSpec = match &args.spec {
        Some(path) => read_json(path)?,
        None => {
            let q = args.q.as_deref().map(parse_range::<u32>).transpose()?;
            let ranges = match args.model {
                ModelArg::Regular => SweepRanges::Regular {
                    dims: parse_range(required(args.dims.as_deref(), "dims")?)?,
                    a: parse_range(required(args.a.as_deref(), "a")?)?,
                    q,
                },
                ModelArg::PredictorOnly => SweepRanges::PredictorOnly {
                    dims: parse_range(required(args.dims.as_deref(), "dims")?)?,
                    a: parse_range(required(args.a.as_deref(), "a")?)?,
                    q: required(q, "q")?,
                    gm_a_invariant: required(args.gm_a_invariant, "gm-a-invariant")?,
                },
                ModelArg::Semigroup => SweepRanges::Semigroup {
                    a: parse_range(required(args.a.as_deref(), "a")?)?,
                    b: parse_range(required(args.b.as_deref(), "b")?)?,
                    n: parse_range(required(args.n.as_deref(), "n")?)?,
                    q,
                },
            };
            SweepSpec {
                ranges,
                caps: Caps::default(),
            }
        }
    };
    if args.time_budget.is_some() {
        spec.caps.time_budget_secs = args.time_budget;
    }
    spec.caps = caps_with_env(spec.caps)?;
    let opts = RunOptions {
        workers: args.workers,
        timestamp: !args.output.no_timestamp,
    };
    let report = run_sweep(&spec, &opts)?;
    emit(&report, &args.output)
}

fn parse_ideal(s: &str) -> Result<MonomialIdeal> {
    let gens: Vec<Vec<u32>> = s
        .split(';')
        .map(|g| {
            g.split(',')
                .map(|x| x.trim().parse::<u32>().with_context(|| format!("bad generator {g:?}")))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let dim = gens.first().map_or(0, Vec::len);
    Ok(MonomialIdeal::from_generators(dim, gens)?)
}

fn closure(args: ClosureArgs) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    if !args.diagonal.is_empty() {
        if args.point.is_empty() {
            writeln!(out, "{}", closure_diagonal(&args.diagonal)?)?;
        } else {
            if args.point.len() != args.diagonal.len() {
                bail!("--point has {} coordinates, --diagonal has {}", args.point.len(), args.diagonal.len());
            }
            writeln!(out, "{}", in_closure_diagonal(&args.diagonal, &args.point)?)?;
        }
        return Ok(ExitCode::SUCCESS);
    }
    let ideal = parse_ideal(required(args.ideal.as_deref(), "ideal or --diagonal")?)?;
    if args.point.is_empty() {
        writeln!(out, "{}", closure_generators(&ideal)?)?;
    } else {
        let alpha = ExponentVector::new(args.point)?;
        writeln!(out, "{}", in_closure_general(&ideal, &alpha)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn semigroup(args: SemigroupArgs) -> Result<ExitCode> {
    let descriptor = CaseDescriptor::Semigroup {
        a: args.a,
        b: args.b,
        n: args.n,
        q: args.q,
    };
    validate(&descriptor)?;
    let caps = caps_with_env(Caps::default())?;
    let report = run_single(&descriptor, &caps, !args.output.no_timestamp)?;
    emit(&report, &args.output)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let suites = [
        verify::criterion_1,
        verify::criterion_2,
        verify::criterion_3,
        verify::criterion_4,
        verify::criterion_5,
        verify::criterion_6,
        verify::criterion_7,
        verify::criterion_8,
        verify::criterion_9,
    ];
    if let Some(bad) = args.criterion.iter().find(|&&c| c == 0 || usize::from(c) > suites.len()) {
        bail!("no criterion {bad}");
    }
    let mut all = true;
    for (k, run) in suites.iter().enumerate() {
        let id = k as u8 + 1;
        if !args.criterion.is_empty() && !args.criterion.contains(&id) {
            continue;
        }
        let outcome = run();
        all &= outcome.passed;
        println!("{}", outcome.line());
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Sweep(a) => sweep(a),
        Command::Closure(a) => closure(a),
        Command::Semigroup(a) => semigroup(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
