//! Command-line driver. [`run`] parses arguments, runs one command and
//! returns the process exit code: 0 success, 1 unreadable or malformed
//! input, 2 invalid request, 3 search limit exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use hdepth::{
    check_hilbert_depth, check_stanley_depth, hdepth, hdepth_of_series, render_decomposition, sdepth, series_of,
    subtract_checked, verify_decomposition, verify_partition, verify_stanley_decomposition, CoverOrder, Driver,
    ElementOrder, Error, HilbertPartition, Limit, ModuleExpr, MonomialIdeal, QuotientModule, SearchConfig,
    SearchStats, TruncatedSeries,
};
use serde::Serialize;

use crate::partition::parse_partition;
use crate::problem::{parse_problem, ProblemFile, Target};
use crate::report::{
    millis, part_lines, space_lines, BenchReport, BenchRow, ConfigOut, Format, Kind, Query, RowStatus, RunReport,
    StatsOut,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

const ZERO_MODULE_WARNING: &str = "the module is zero; its depth is reported as n by convention";

#[derive(Parser, Debug)]
#[command(name = "hdepth", version, about = "Exact multigraded Hilbert depth and Stanley depth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert depth of the module or series in FILE.
    Hdepth {
        /// Problem file
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Stanley depth of the quotient of monomial ideals in FILE.
    Sdepth {
        /// Problem file
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Decide whether the depth of FILE is at least K.
    Check {
        /// Problem file
        file: PathBuf,
        #[arg(long = "s", value_name = "K")]
        s: usize,
        #[arg(long, value_enum, default_value = "hilbert")]
        kind: Kind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check a partition listing against the truncated series of FILE.
    Verify {
        /// Problem file
        file: PathBuf,
        /// Partition listing
        partition_file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Depth of the maximal ideal for each n in A..B.
    Bench {
        #[arg(long, value_name = "A..B")]
        maxideal: String,
        #[arg(long, value_enum, default_value = "hilbert")]
        kind: Kind,
        /// Run the rows concurrently, one thread each.
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Order in which uncovered elements are branched on.
    #[arg(long, default_value = "fewestCoversFirst",
          value_parser = PossibleValuesParser::new(ElementOrder::NAMES).map(|s| s.parse::<ElementOrder>().unwrap()))]
    order: ElementOrder,
    /// Order in which covers of an element are tried.
    #[arg(long, default_value = "lexAsc",
          value_parser = PossibleValuesParser::new(CoverOrder::NAMES).map(|s| s.parse::<CoverOrder>().unwrap()))]
    cover_order: CoverOrder,
    /// Print the certificate as a list of intervals.
    #[arg(long)]
    partition: bool,
    /// Print the certificate as a list of spaces K[Z](-c).
    #[arg(long)]
    decomposition: bool,
    /// Print search statistics.
    #[arg(long)]
    stats: bool,
    /// Wall-clock limit per search, in seconds.
    #[arg(long, value_name = "SECS", default_value_t = 300.0)]
    timeout: f64,
    /// Limit on search nodes per query.
    #[arg(long, value_name = "N")]
    node_limit: Option<u64>,
    /// Try s = 0, 1, ... in turn instead of binary search.
    #[arg(long)]
    scan: bool,
    /// Remember residuals that are known to fail.
    #[arg(long)]
    memoize: bool,
    /// Disable the level-counting bound for squarefree bounds.
    #[arg(long)]
    no_counting_bound: bool,
    /// Stanley search: accept covers by disjointness with earlier choices.
    #[arg(long)]
    disjointness_check: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Opts {
    fn config(&self) -> Result<SearchConfig, Failure> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            return Err(Failure::Invalid(format!("--timeout must be positive, got {}", self.timeout)));
        }
        let cfg = SearchConfig {
            element_order: self.order,
            cover_order: self.cover_order,
            node_limit: self.node_limit,
            time_limit: Some(Duration::from_secs_f64(self.timeout)),
            driver: if self.scan { Driver::Scan } else { Driver::Binary },
            memoize_failures: self.memoize,
            counting_bound: !self.no_counting_bound,
            disjointness_check: self.disjointness_check,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Limit(_) => EXIT_LIMIT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded(_) => Failure::Limit(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut warnings = Vec::new();
    let result = execute(cli, out, &mut warnings);
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn load(path: &Path) -> Result<ProblemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, report: &T, text: String, csv: String) -> Result<(), Failure> {
    let body = match format {
        Format::Text => text,
        Format::Csv => csv,
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
    };
    out.write_all(body.as_bytes())
        .map_err(|e| Failure::Invalid(format!("cannot write output: {e}")))
}

fn execute(cli: Cli, out: &mut dyn Write, warnings: &mut Vec<String>) -> Result<i32, Failure> {
    match cli.command {
        Command::Hdepth { file, opts } => {
            let problem = load(&file)?;
            let report = hilbert_value(&problem, &opts, warnings)?;
            finish(out, &opts, &report, warnings)
        }
        Command::Sdepth { file, opts } => {
            let problem = load(&file)?;
            let report = stanley_value(&problem, &opts, warnings)?;
            finish(out, &opts, &report, warnings)
        }
        Command::Check { file, s, kind, opts } => {
            let problem = load(&file)?;
            let report = check(&problem, s, kind, &opts, warnings)?;
            finish(out, &opts, &report, warnings)
        }
        Command::Verify {
            file,
            partition_file,
            opts,
        } => {
            let problem = load(&file)?;
            let text = std::fs::read_to_string(&partition_file)
                .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", partition_file.display())))?;
            let pp = parse_partition(&text).map_err(|e| Failure::Parse(format!("{}: {e}", partition_file.display())))?;
            let report = verify(&problem, &pp, &opts)?;
            finish(out, &opts, &report, warnings)
        }
        Command::Bench {
            maxideal,
            kind,
            parallel,
            opts,
        } => {
            let (lo, hi) = parse_range(&maxideal)?;
            let cfg = opts.config()?;
            let report = bench_max_ideal(lo..=hi, kind, &cfg, parallel)?;
            let limited = report.rows.iter().any(|r| r.status == RowStatus::LimitExceeded);
            emit(out, opts.format, &report, report.to_text(), report.to_csv())?;
            Ok(if limited { EXIT_LIMIT } else { EXIT_OK })
        }
    }
}

fn finish(out: &mut dyn Write, opts: &Opts, report: &RunReport, warnings: &[String]) -> Result<i32, Failure> {
    let mut report = report.clone();
    report.warnings = warnings.to_vec();
    emit(out, opts.format, &report, report.to_text(opts.stats), report.to_csv())?;
    Ok(EXIT_OK)
}

fn base_report(command: &str, kind: Kind, problem: &ProblemFile, bound: &[u32], cfg: &SearchConfig) -> RunReport {
    RunReport {
        command: command.into(),
        kind,
        variables: problem.variables.clone(),
        bound: bound.to_vec(),
        value: None,
        query: None,
        partition: None,
        decomposition: None,
        stats: StatsOut::from(&SearchStats::default()),
        config: ConfigOut::from(cfg),
        warnings: Vec::new(),
    }
}

fn is_zero_module(problem: &ProblemFile) -> bool {
    matches!(&problem.target, Target::Module(m) if m.terms().is_empty())
}

/// Listings of a Hilbert certificate, each checked before it is shown.
fn hilbert_listings(series: &TruncatedSeries, pp: &HilbertPartition, problem: &ProblemFile, opts: &Opts, report: &mut RunReport) {
    assert!(verify_partition(series, pp), "search returned an invalid Hilbert partition");
    if opts.partition {
        report.partition = Some(part_lines(pp));
    }
    if opts.decomposition {
        let d = render_decomposition(pp);
        assert!(verify_decomposition(series, &d), "rendered decomposition does not match the series");
        report.decomposition = Some(space_lines(&problem.variables, &d.spaces));
    }
}

fn hilbert_value(problem: &ProblemFile, opts: &Opts, warnings: &mut Vec<String>) -> Result<RunReport, Failure> {
    let cfg = opts.config()?;
    let series = problem.series()?;
    if series.is_zero() {
        warnings.push(ZERO_MODULE_WARNING.into());
    }
    let found = hdepth_of_series(&series, &cfg)?;
    let mut report = base_report("hdepth", Kind::Hilbert, problem, series.bound().coords(), &cfg);
    report.value = Some(found.value);
    report.stats = StatsOut::from(&found.stats);
    hilbert_listings(&series, &found.certificate, problem, opts, &mut report);
    Ok(report)
}

fn quotient(problem: &ProblemFile) -> Result<QuotientModule, Failure> {
    match &problem.target {
        Target::Raw(_) => Err(Failure::Invalid(
            "Stanley depth needs a module expression; a raw series has no ideal structure".into(),
        )),
        Target::Module(m) => Ok(QuotientModule::from_module(m)?),
    }
}

fn stanley_guard(opts: &Opts) -> Result<(), Failure> {
    if opts.partition {
        return Err(Failure::Invalid(
            "Stanley certificates are decompositions; use --decomposition".into(),
        ));
    }
    Ok(())
}

fn stanley_value(problem: &ProblemFile, opts: &Opts, warnings: &mut Vec<String>) -> Result<RunReport, Failure> {
    let cfg = opts.config()?;
    stanley_guard(opts)?;
    if is_zero_module(problem) {
        warnings.push(ZERO_MODULE_WARNING.into());
        let n = problem.dim();
        let mut report = base_report("sdepth", Kind::Stanley, problem, &vec![0; n], &cfg);
        report.value = Some(n);
        report.decomposition = opts.decomposition.then(Vec::new);
        return Ok(report);
    }
    let q = quotient(problem)?;
    if q.series().is_zero() {
        warnings.push(ZERO_MODULE_WARNING.into());
    }
    let found = sdepth(&q, &cfg)?;
    assert!(
        verify_stanley_decomposition(&q, &found.certificate),
        "search returned an invalid Stanley decomposition"
    );
    let mut report = base_report("sdepth", Kind::Stanley, problem, q.bound().coords(), &cfg);
    report.value = Some(found.value);
    report.stats = StatsOut::from(&found.stats);
    if opts.decomposition {
        report.decomposition = Some(space_lines(&problem.variables, &found.certificate.spaces));
    }
    Ok(report)
}

fn check(problem: &ProblemFile, s: usize, kind: Kind, opts: &Opts, warnings: &mut Vec<String>) -> Result<RunReport, Failure> {
    let cfg = opts.config()?;
    let n = problem.dim();
    if s > n {
        return Err(Failure::Invalid(format!("--s {s} exceeds the number of variables {n}")));
    }
    match kind {
        Kind::Hilbert => {
            let series = problem.series()?;
            if series.is_zero() {
                warnings.push(ZERO_MODULE_WARNING.into());
            }
            let outcome = check_hilbert_depth(&series, s, &cfg)?;
            let mut report = base_report("check", kind, problem, series.bound().coords(), &cfg);
            report.stats = StatsOut::from(&outcome.stats);
            report.query = Some(Query {
                s: Some(s),
                holds: outcome.certificate.is_some(),
                detail: None,
            });
            if let Some(pp) = &outcome.certificate {
                hilbert_listings(&series, pp, problem, opts, &mut report);
            }
            Ok(report)
        }
        Kind::Stanley => {
            stanley_guard(opts)?;
            if is_zero_module(problem) {
                warnings.push(ZERO_MODULE_WARNING.into());
                let mut report = base_report("check", kind, problem, &vec![0; n], &cfg);
                report.query = Some(Query {
                    s: Some(s),
                    holds: true,
                    detail: None,
                });
                report.decomposition = opts.decomposition.then(Vec::new);
                return Ok(report);
            }
            let q = quotient(problem)?;
            let outcome = check_stanley_depth(&q, s, &cfg)?;
            let mut report = base_report("check", kind, problem, q.bound().coords(), &cfg);
            report.stats = StatsOut::from(&outcome.stats);
            report.query = Some(Query {
                s: Some(s),
                holds: outcome.certificate.is_some(),
                detail: None,
            });
            if let Some(d) = &outcome.certificate {
                assert!(verify_stanley_decomposition(&q, d), "search returned an invalid Stanley decomposition");
                if opts.decomposition {
                    report.decomposition = Some(space_lines(&problem.variables, &d.spaces));
                }
            }
            Ok(report)
        }
    }
}

fn verify(problem: &ProblemFile, pp: &HilbertPartition, opts: &Opts) -> Result<RunReport, Failure> {
    let cfg = opts.config()?;
    if pp.dim() != problem.dim() {
        return Err(Failure::Invalid(format!(
            "the partition has {} coordinates, the problem {}",
            pp.dim(),
            problem.dim()
        )));
    }
    let series = match &problem.target {
        Target::Module(m) => series_of(m, pp.bound()),
        Target::Raw(p) if p.bound() == pp.bound() => Ok(p.clone()),
        Target::Raw(p) => Err(Error::Precondition(format!(
            "the partition is truncated at {} but the series at {}",
            pp.bound(),
            p.bound()
        ))),
    };
    let mut report = base_report("verify", Kind::Hilbert, problem, pp.bound().coords(), &cfg);
    let (holds, detail) = match series {
        Err(e) => (false, e.to_string()),
        Ok(series) => {
            if verify_partition(&series, pp) {
                (true, format!("{} intervals, min rho = {}", pp.len(), pp.min_rho()))
            } else {
                let why = match subtract_checked(&series, &pp.series()) {
                    Err(neg) => format!("the intervals cover {} more often than the series allows", neg.witness),
                    Ok(rest) => {
                        let (a, _) = rest.iter().next().expect("a mismatch leaves a remainder");
                        format!("the intervals miss {a}")
                    }
                };
                (false, why)
            }
        }
    };
    if holds && opts.partition {
        report.partition = Some(part_lines(pp));
    }
    report.query = Some(Query {
        s: None,
        holds,
        detail: Some(detail),
    });
    Ok(report)
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Invalid(format!("--maxideal expects A..B with 2 <= A <= B, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a < 2 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn bench_row(n: usize, kind: Kind, cfg: &SearchConfig) -> Result<BenchRow, Error> {
    let expected = n.div_ceil(2);
    let start = Instant::now();
    let result = match kind {
        Kind::Hilbert => hdepth(&ModuleExpr::ideal(MonomialIdeal::maximal(n)), cfg).map(|r| (r.value, r.stats)),
        Kind::Stanley => QuotientModule::new(MonomialIdeal::maximal(n), MonomialIdeal::zero(n))
            .and_then(|q| sdepth(&q, cfg))
            .map(|r| (r.value, r.stats)),
    };
    let elapsed_ms = millis(start.elapsed());
    match result {
        Ok((value, stats)) => {
            assert_eq!(value, expected, "depth of the maximal ideal in {n} variables");
            Ok(BenchRow {
                n,
                value: Some(value),
                expected,
                elapsed_ms,
                nodes_visited: Some(stats.nodes_visited),
                status: RowStatus::Ok,
            })
        }
        Err(Error::LimitExceeded(limit)) => Ok(BenchRow {
            n,
            value: None,
            expected,
            elapsed_ms,
            nodes_visited: match limit {
                Limit::Nodes(k) => Some(k),
                Limit::Time(_) => None,
            },
            status: RowStatus::LimitExceeded,
        }),
        Err(e) => Err(e),
    }
}

/// Depth of the maximal ideal for each `n` in `range`, asserting `⌈n/2⌉`.
/// Rows that hit a limit are marked and the run continues.
pub fn bench_max_ideal(
    range: std::ops::RangeInclusive<usize>,
    kind: Kind,
    cfg: &SearchConfig,
    parallel: bool,
) -> Result<BenchReport, Error> {
    let rows: Vec<Result<BenchRow, Error>> = if parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = range.map(|n| scope.spawn(move || bench_row(n, kind, cfg))).collect();
            handles.into_iter().map(|h| h.join().expect("bench row panicked")).collect()
        })
    } else {
        range.map(|n| bench_row(n, kind, cfg)).collect()
    };
    Ok(BenchReport {
        command: "bench".into(),
        kind,
        config: ConfigOut::from(cfg),
        rows: rows.into_iter().collect::<Result<_, _>>()?,
    })
}
