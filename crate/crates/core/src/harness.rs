//! Case descriptors, parameter sweeps and report writers.
//!
//! A sweep expands its ranges into cases in lexicographic order of the case
//! tuple, evaluates them on a bounded worker pool and reassembles the results
//! in that order, so the report does not depend on the worker count.

use std::io::Write;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boxmodel::DEFAULT_BOX_CAP;
use crate::error::{Error, Result};
use crate::quasisocle::{analyze, predict_only, AnalyzeOptions, CaseReport, CaseSpec, Model};
use crate::semigroup::{sg_analyze, NumericalSemigroup, SemigroupSpec};

/// Environment variable overriding the box point cap.
pub const BOX_CAP_ENV: &str = "QSOCLE_BOX_CAP";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Box cap from [`BOX_CAP_ENV`], or the default when unset.
pub fn box_cap_from_env() -> Result<usize> {
    match std::env::var(BOX_CAP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(Error::Invalid(format!("{BOX_CAP_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(DEFAULT_BOX_CAP),
    }
}

/// One case to run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum CaseDescriptor {
    Regular {
        a: Vec<u32>,
        q: u32,
    },
    Semigroup {
        a: u32,
        b: u32,
        n: u32,
        q: u32,
    },
    PredictorOnly {
        a: Vec<u32>,
        q: u32,
        gm_a_invariant: i64,
    },
}

impl CaseDescriptor {
    pub fn model(&self) -> Model {
        match self {
            CaseDescriptor::Regular { .. } => Model::Regular,
            CaseDescriptor::Semigroup { .. } => Model::Semigroup,
            CaseDescriptor::PredictorOnly { .. } => Model::PredictorOnly,
        }
    }

    pub fn label(&self) -> String {
        let join = |a: &[u32]| a.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            CaseDescriptor::Regular { a, q } => format!("a=({}) q={q}", join(a)),
            CaseDescriptor::Semigroup { a, b, n, q } => format!("S=<{a},{b}> n={n} q={q}"),
            CaseDescriptor::PredictorOnly { a, q, gm_a_invariant } => {
                format!("a=({}) q={q} aG(m)={gm_a_invariant}", join(a))
            }
        }
    }
}

/// Resource limits applied to every case of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub box_points: usize,
    pub n_max: Option<u32>,
    /// Cases not started within this many seconds of the run start are skipped.
    pub time_budget_secs: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            box_points: DEFAULT_BOX_CAP,
            n_max: None,
            time_budget_secs: None,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> Result<()> {
        if self.box_points == 0 || self.n_max == Some(0) || self.time_budget_secs == Some(0) {
            return Err(Error::Invalid("caps must be positive".into()));
        }
        Ok(())
    }
}

pub fn run_case(descriptor: &CaseDescriptor, caps: &Caps) -> Result<CaseReport> {
    match descriptor {
        CaseDescriptor::Regular { a, q } => {
            let spec = CaseSpec::regular(a.clone(), *q)?;
            let opts = AnalyzeOptions {
                box_cap: caps.box_points,
                n_max: caps.n_max,
            };
            analyze(&spec, &opts)
        }
        CaseDescriptor::Semigroup { a, b, n, q } => sg_analyze(&SemigroupSpec::new(*a, *b, *n, *q)?),
        CaseDescriptor::PredictorOnly { a, q, gm_a_invariant } => {
            Ok(predict_only(&CaseSpec::new(a.clone(), *q, *gm_a_invariant)?))
        }
    }
}

/// Ranges of a sweep, per model. Absent `q` ranges default to `1..=ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum SweepRanges {
    /// Every `a_i` ranges over `a` independently.
    Regular {
        dims: Vec<usize>,
        a: Vec<u32>,
        #[serde(default)]
        q: Option<Vec<u32>>,
    },
    /// Only coprime pairs `a < b` are used.
    Semigroup {
        a: Vec<u32>,
        b: Vec<u32>,
        n: Vec<u32>,
        #[serde(default)]
        q: Option<Vec<u32>>,
    },
    PredictorOnly {
        dims: Vec<usize>,
        a: Vec<u32>,
        q: Vec<u32>,
        gm_a_invariant: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(flatten)]
    pub ranges: SweepRanges,
    #[serde(default)]
    pub caps: Caps,
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn tuples(dim: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn q_values(explicit: &Option<Vec<u32>>, rho: i64) -> Vec<u32> {
    match explicit {
        Some(qs) => sorted(qs).into_iter().filter(|&q| q >= 1).collect(),
        None => (1..=rho.max(0) as u32).collect(),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.caps.validate()?;
        let bad = match &self.ranges {
            SweepRanges::Regular { dims, a, .. } | SweepRanges::PredictorOnly { dims, a, .. } => {
                dims.contains(&0) || a.contains(&0)
            }
            SweepRanges::Semigroup { n, .. } => n.contains(&0),
        };
        if bad {
            return Err(Error::Invalid("dimensions, exponents and n must be positive".into()));
        }
        Ok(())
    }

    /// The Cartesian product of the ranges in lexicographic case order.
    pub fn cases(&self) -> Vec<CaseDescriptor> {
        let mut out = Vec::new();
        match &self.ranges {
            SweepRanges::Regular { dims, a, q } => {
                let mut dims = dims.clone();
                dims.sort_unstable();
                dims.dedup();
                for d in dims {
                    for t in tuples(d, &sorted(a)) {
                        let rho: i64 = t.iter().map(|&x| i64::from(x) - 1).sum();
                        for q in q_values(q, rho) {
                            out.push(CaseDescriptor::Regular { a: t.clone(), q });
                        }
                    }
                }
            }
            SweepRanges::Semigroup { a, b, n, q } => {
                for &x in &sorted(a) {
                    for &y in &sorted(b) {
                        if NumericalSemigroup::new(x, y).is_err() {
                            continue;
                        }
                        for &k in &sorted(n) {
                            let rho = i64::from(x) + i64::from(k) - 2;
                            for q in q_values(q, rho) {
                                out.push(CaseDescriptor::Semigroup { a: x, b: y, n: k, q });
                            }
                        }
                    }
                }
            }
            SweepRanges::PredictorOnly {
                dims,
                a,
                q,
                gm_a_invariant,
            } => {
                let mut dims = dims.clone();
                dims.sort_unstable();
                dims.dedup();
                for d in dims {
                    for t in tuples(d, &sorted(a)) {
                        for &q in sorted(q).iter().filter(|&&q| q >= 1) {
                            out.push(CaseDescriptor::PredictorOnly {
                                a: t.clone(),
                                q,
                                gm_a_invariant: *gm_a_invariant,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Result of one case within a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CaseOutcome {
    Analyzed {
        descriptor: CaseDescriptor,
        report: CaseReport,
    },
    Skipped {
        descriptor: CaseDescriptor,
        reason: String,
    },
    Failed {
        descriptor: CaseDescriptor,
        error: String,
    },
}

impl CaseOutcome {
    pub fn descriptor(&self) -> &CaseDescriptor {
        match self {
            CaseOutcome::Analyzed { descriptor, .. }
            | CaseOutcome::Skipped { descriptor, .. }
            | CaseOutcome::Failed { descriptor, .. } => descriptor,
        }
    }

    pub fn report(&self) -> Option<&CaseReport> {
        match self {
            CaseOutcome::Analyzed { report, .. } => Some(report),
            _ => None,
        }
    }

    fn from_result(descriptor: CaseDescriptor, result: Result<CaseReport>) -> Self {
        match result {
            Ok(report) => CaseOutcome::Analyzed { descriptor, report },
            Err(e @ Error::BoxCapExceeded { .. }) => CaseOutcome::Skipped {
                descriptor,
                reason: e.to_string(),
            },
            Err(e) => CaseOutcome::Failed {
                descriptor,
                error: e.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub improper: usize,
    pub skipped_by_cap: usize,
    pub errors: usize,
}

impl Summary {
    fn tally(cases: &[CaseOutcome]) -> Self {
        let mut s = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in cases {
            match c {
                CaseOutcome::Analyzed { report, .. } if !report.agreement => s.disagree += 1,
                CaseOutcome::Analyzed { report, .. } if report.prediction.improper => s.improper += 1,
                CaseOutcome::Analyzed { .. } => s.agree += 1,
                CaseOutcome::Skipped { .. } => s.skipped_by_cap += 1,
                CaseOutcome::Failed { .. } => s.errors += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub cases: Vec<CaseOutcome>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(cases: Vec<CaseOutcome>, timestamp: bool) -> Self {
        let summary = Summary::tally(&cases);
        let timestamp = timestamp.then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        });
        Self {
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
            cases,
            summary,
        }
    }

    /// No disagreement and no failed case.
    pub fn passed(&self) -> bool {
        self.summary.disagree == 0 && self.summary.errors == 0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `0` lets the pool decide.
    pub workers: usize,
    pub timestamp: bool,
}

/// Runs every case of the sweep and reports them in case order.
pub fn run_sweep(spec: &SweepSpec, opts: &RunOptions) -> Result<RunReport> {
    spec.validate()?;
    let cases = spec.cases();
    let caps = spec.caps;
    let start = Instant::now();
    let run_one = |descriptor: &CaseDescriptor| {
        if let Some(budget) = caps.time_budget_secs {
            if start.elapsed().as_secs() >= budget {
                return CaseOutcome::Skipped {
                    descriptor: descriptor.clone(),
                    reason: format!("time budget of {budget}s exhausted"),
                };
            }
        }
        CaseOutcome::from_result(descriptor.clone(), run_case(descriptor, &caps))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?;
    let outcomes: Vec<CaseOutcome> = pool.install(|| cases.par_iter().map(run_one).collect());
    Ok(RunReport::new(outcomes, opts.timestamp))
}

/// Runs a single descriptor and wraps it as a one-case report.
pub fn run_single(descriptor: &CaseDescriptor, caps: &Caps, timestamp: bool) -> Result<RunReport> {
    caps.validate()?;
    let outcome = CaseOutcome::from_result(descriptor.clone(), run_case(descriptor, caps));
    Ok(RunReport::new(vec![outcome], timestamp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            other => Err(Error::Invalid(format!("unknown format {other:?}"))),
        }
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "model",
    "case",
    "rho",
    "ell",
    "integral_pred",
    "integral_oracle",
    "r_pred",
    "r_oracle",
    "g_gor_pred",
    "g_gor_oracle",
    "rees_cm_pred",
    "rees_gor_pred",
    "agreement",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(outcome: &CaseOutcome) -> Vec<String> {
    let d = outcome.descriptor();
    let head = vec![d.model().as_str().to_string(), d.label()];
    match outcome {
        CaseOutcome::Analyzed { report, .. } => {
            let p = &report.prediction;
            let mut row = head;
            row.extend([
                p.rho.to_string(),
                p.ell.to_string(),
                p.integral.to_string(),
                opt(report.integral_oracle),
                opt(p.reduction_number),
                opt(report.reduction_number_oracle),
                opt(p.g_gorenstein),
                opt(report.g_gorenstein_oracle),
                opt(p.rees_cm),
                opt(p.rees_gorenstein),
                report.agreement.to_string(),
            ]);
            row
        }
        CaseOutcome::Skipped { .. } | CaseOutcome::Failed { .. } => {
            let mut row = head;
            row.extend(std::iter::repeat_n(String::new(), 10));
            let tag = if matches!(outcome, CaseOutcome::Skipped { .. }) {
                "skipped"
            } else {
                "error"
            };
            row.push(tag.to_string());
            row
        }
    }
}

pub fn write_report<W: Write>(report: &RunReport, format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Text => write_text(report, out),
        Format::Csv => write_csv(report, out),
        Format::JsonLines => write_json_lines(report, out),
    }
}

pub fn write_csv<W: Write>(report: &RunReport, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for c in &report.cases {
        w.write_record(csv_row(c))?;
    }
    w.flush()
}

/// One JSON object per case, then a summary object.
pub fn write_json_lines<W: Write>(report: &RunReport, mut out: W) -> std::io::Result<()> {
    for c in &report.cases {
        serde_json::to_writer(&mut out, c)?;
        writeln!(out)?;
    }
    #[derive(Serialize)]
    struct Trailer<'a> {
        tool_version: &'a str,
        #[serde(skip_serializing_if = "Option::is_none")]
        timestamp: Option<u64>,
        summary: &'a Summary,
    }
    serde_json::to_writer(
        &mut out,
        &Trailer {
            tool_version: &report.tool_version,
            timestamp: report.timestamp,
            summary: &report.summary,
        },
    )?;
    writeln!(out)
}

pub fn write_text<W: Write>(report: &RunReport, mut out: W) -> std::io::Result<()> {
    for c in &report.cases {
        let d = c.descriptor();
        match c {
            CaseOutcome::Analyzed { report: r, .. } => {
                let p = &r.prediction;
                let tag = match (r.agreement, p.improper) {
                    (false, _) => "DISAGREE",
                    (true, true) => "improper",
                    (true, false) => "agree",
                };
                write!(
                    out,
                    "[{tag}] {} {}: rho={} ell={} integral={}",
                    d.model().as_str(),
                    d.label(),
                    p.rho,
                    p.ell,
                    p.integral
                )?;
                if let Some(o) = r.integral_oracle {
                    write!(out, "/{o}")?;
                }
                if let Some(rp) = p.reduction_number {
                    write!(out, " r={rp}")?;
                    if let Some(ro) = r.reduction_number_oracle {
                        write!(out, "/{ro}")?;
                    }
                }
                if let Some(a) = p.a_invariant {
                    write!(out, " a(G(I))={a}")?;
                }
                if let Some(g) = p.g_gorenstein {
                    write!(out, " G(I)-gorenstein={g}")?;
                    if let Some(go) = r.g_gorenstein_oracle {
                        write!(out, "/{go}")?;
                    }
                }
                if let Some(cm) = p.rees_cm {
                    write!(out, " R(I)-cm={cm}")?;
                }
                if let Some(rg) = p.rees_gorenstein {
                    write!(out, " R(I)-gorenstein={rg}")?;
                }
                writeln!(out)?;
                if !r.generators.is_empty() {
                    let gens: Vec<String> = r.generators.iter().map(|g| format_point(g)).collect();
                    writeln!(out, "    I = ({})", gens.join(", "))?;
                }
                let failed: Vec<&str> = r.failed_checks().collect();
                if !failed.is_empty() {
                    writeln!(out, "    failed checks: {}", failed.join(", "))?;
                }
            }
            CaseOutcome::Skipped { reason, .. } => {
                writeln!(out, "[skipped] {} {}: {reason}", d.model().as_str(), d.label())?;
            }
            CaseOutcome::Failed { error, .. } => {
                writeln!(out, "[ERROR] {} {}: {error}", d.model().as_str(), d.label())?;
            }
        }
    }
    let s = &report.summary;
    write!(
        out,
        "qsocle {}: {} cases, {} agree, {} disagree, {} improper, {} skipped by cap, {} errors",
        report.tool_version, s.total, s.agree, s.disagree, s.improper, s.skipped_by_cap, s.errors
    )?;
    if let Some(t) = report.timestamp {
        write!(out, " (unix time {t})")?;
    }
    writeln!(out)
}

fn format_point(p: &[u32]) -> String {
    if p.len() == 1 {
        return format!("t^{}", p[0]);
    }
    let coords: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("x^({})", coords.join(","))
}
