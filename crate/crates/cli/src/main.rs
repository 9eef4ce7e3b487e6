mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psibound::field::validate;
use psibound::oracle::{verify_bound, OracleField, QuadraticField, VonMangoldt};
use psibound::parse::{parse_field_spec, parse_field_spec_with_log_disc, OutputFormat, RunConfig};
use psibound::tables::{
    crossover_reference, format_cmax, reference_cmax, reference_crossovers, CrossoverComparison, MinDiscTable,
};
use psibound::{selftest, BoundFormula, Constants, Error, FieldProfile};
use serde::Serialize;

use output::{emit, num, Table};

const EXIT_SELFTEST: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "psibound", version, about = "Explicit bounds for |psi_K(x) - x| under GRH")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Significant digits in human and CSV output
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: Option<u32>,
    /// Upper end of the crossover search
    #[arg(long = "x-cap", global = true)]
    x_cap: Option<u64>,
    /// JSON file replacing the built-in minimal discriminants
    #[arg(long = "min-disc-table", global = true)]
    min_disc_table: Option<PathBuf>,
    /// Treat field-profile warnings as errors
    #[arg(long, global = true)]
    strict: bool,
    /// JSON run configuration; flags given on the command line win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a bound for one field at one x
    Eval(EvalArgs),
    /// Recompute the reference tables and compare with the published values
    Tables {
        /// crossover: where the optimized bound overtakes each earlier bound;
        /// crossover-best: the same using the smaller of optimized and fixed-T;
        /// cmax: the truncation remainder constant per degree
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Check a bound against exact psi for Q or a quadratic field
    Verify(VerifyArgs),
    /// Run the internal consistency checks
    Selftest {
        /// Overwrite a constant before running, as NAME=VALUE
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Field as n,disc,r1,r2 (disc may be written like 6.5467e749)
    #[arg(long, default_value = "1,1,1,0")]
    field: String,
    /// Natural log of the discriminant; the field is then n,r1,r2
    #[arg(long, allow_hyphen_values = true)]
    logdisc: Option<f64>,
    /// Point at which to evaluate, x >= 3
    #[arg(long)]
    x: f64,
    /// optimized, fixed-t, prior-x100, prior-x3, prior-x2000 or general
    #[arg(long, default_value = "optimized")]
    formula: BoundFormula,
    /// Truncation height, for the general bound
    #[arg(long = "T", alias = "t")]
    t: Option<f64>,
    /// Smoothing width, for the general bound
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Crossover,
    CrossoverBest,
    Cmax,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fundamental discriminant of a quadratic field
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "rational",
        required_unless_present = "rational"
    )]
    disc: Option<i64>,
    /// Use the rational field instead
    #[arg(long)]
    rational: bool,
    /// Largest x checked (at most 1e8)
    #[arg(long, default_value = "1e6")]
    xmax: f64,
    /// Any formula except general
    #[arg(long, default_value = "optimized")]
    formula: BoundFormula,
}

/// Failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn run_config(g: &GlobalOpts) -> Result<RunConfig, Fail> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = g.format {
        cfg.output_format = match f {
            FormatArg::Human => OutputFormat::Human,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(p) = g.precision {
        cfg.precision_digits = p;
    }
    if let Some(c) = g.x_cap {
        cfg.x_cap = c;
    }
    if let Some(p) = &g.min_disc_table {
        cfg.min_disc_table = Some(p.clone());
    }
    cfg.strict_validation |= g.strict;
    cfg.validate()?;
    Ok(cfg)
}

fn check_profile(profile: &FieldProfile, cfg: &RunConfig) -> Result<(), Fail> {
    for d in validate(profile, cfg.strict_validation)? {
        eprintln!("warning [{}]: {}", d.code, d.message);
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalRow {
    formula: BoundFormula,
    field: FieldProfile,
    #[serde(flatten)]
    result: psibound::BoundResult,
}

fn cmd_eval(a: &EvalArgs, cfg: &RunConfig, out: &mut impl Write) -> Result<(), Fail> {
    let profile = match a.logdisc {
        Some(ld) => parse_field_spec_with_log_disc(&a.field, ld)?,
        None => parse_field_spec(&a.field)?,
    };
    check_profile(&profile, cfg)?;
    if !a.formula.needs_parameters() && (a.t.is_some() || a.kappa.is_some()) {
        return Err(usage(format!(
            "--T and --kappa only apply to the general bound, not '{}'",
            a.formula
        )));
    }
    let r = a.formula.evaluate_with(&profile, a.x, a.t, a.kappa)?;
    let p = cfg.precision_digits;
    let opt = |v: Option<f64>| v.map(|v| num(v, p)).unwrap_or_default();
    match cfg.output_format {
        OutputFormat::Human => {
            writeln!(out, "formula  {}", a.formula)?;
            writeln!(out, "field    {profile}")?;
            writeln!(out, "x        {}", num(a.x, p))?;
            if let Some(t) = r.params.t {
                writeln!(out, "T        {}", num(t, p))?;
            }
            if let Some(k) = r.params.kappa {
                writeln!(out, "kappa    {}", num(k, p))?;
            }
            writeln!(out, "bound    {}", num(r.value, p))?;
            writeln!(out, "  disc     {}", num(r.terms.disc, p))?;
            writeln!(out, "  degree   {}", num(r.terms.degree, p))?;
            writeln!(out, "  const    {}", num(r.terms.constant, p))?;
            writeln!(out, "  epsilon  {}", num(r.terms.epsilon, p))?;
        }
        fmt => {
            let mut t = Table::new(vec![
                "formula", "n", "log_disc", "r1", "r2", "x", "T", "kappa", "value", "disc", "degree", "const",
                "epsilon",
            ]);
            t.push(vec![
                a.formula.to_string(),
                profile.degree().to_string(),
                num(profile.log_disc(), p),
                profile.r1().to_string(),
                profile.r2().to_string(),
                num(a.x, p),
                opt(r.params.t),
                opt(r.params.kappa),
                num(r.value, p),
                num(r.terms.disc, p),
                num(r.terms.degree, p),
                num(r.terms.constant, p),
                num(r.terms.epsilon, p),
            ]);
            let row = EvalRow {
                formula: a.formula,
                field: profile,
                result: r,
            };
            emit(fmt, &t, &[row], None::<()>, out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Summary {
    matched: usize,
    total: usize,
}

fn summary_line(out: &mut impl Write, fmt: OutputFormat, s: &Summary) -> io::Result<()> {
    if fmt == OutputFormat::Human {
        writeln!(out, "\n{}/{} rows match", s.matched, s.total)?;
    }
    Ok(())
}

fn crossover_table(rows: &[CrossoverComparison]) -> Table {
    let mut t = Table::new(vec![
        "table",
        "n",
        "disc",
        "r1",
        "r2",
        "rival",
        "computed",
        "published",
        "delta",
        "clamped",
        "match",
        "error",
    ]);
    for r in rows {
        t.push(vec![
            r.table.clone(),
            r.n.to_string(),
            r.disc.clone(),
            r.r1.to_string(),
            r.r2.to_string(),
            r.rival.to_string(),
            r.computed.map(|v| v.to_string()).unwrap_or_default(),
            r.published.to_string(),
            r.delta.map(|d| format!("{d:+}")).unwrap_or_default(),
            r.clamped.map(|c| c.to_string()).unwrap_or_default(),
            if r.matches { "yes" } else { "NO" }.to_string(),
            r.error.clone().unwrap_or_default(),
        ]);
    }
    t
}

fn cmd_tables(which: Which, cfg: &RunConfig, out: &mut impl Write) -> Result<(), Fail> {
    let fmt = cfg.output_format;
    let p = cfg.precision_digits;
    let summary = match which {
        Which::Crossover | Which::CrossoverBest => {
            let best = matches!(which, Which::CrossoverBest);
            let rows = reference_crossovers(&crossover_reference(), best, cfg.x_cap);
            let s = Summary {
                matched: rows.iter().filter(|r| r.matches).count(),
                total: rows.len(),
            };
            emit(fmt, &crossover_table(&rows), &rows, Some(&s), out)?;
            s
        }
        Which::Cmax => {
            let discs = match &cfg.min_disc_table {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    MinDiscTable::parse(&text)?
                }
                None => MinDiscTable::embedded(),
            };
            let rows = reference_cmax(&discs);
            let mut t = Table::new(vec![
                "n",
                "disc",
                "c_max",
                "x_at_max",
                "n_points",
                "published_c_max",
                "published_x_at_max",
                "published_n_points",
                "match",
                "error",
            ]);
            for r in &rows {
                let (disc, c, x, np) = match &r.computed {
                    Some(c) => {
                        let cm = if fmt == OutputFormat::Human {
                            format_cmax(c.c_max)
                        } else {
                            num(c.c_max, p)
                        };
                        (num(c.disc_used, p), cm, c.x_at_max.to_string(), c.n_points.to_string())
                    }
                    None => Default::default(),
                };
                let (pc, px, pn) = match &r.published {
                    Some(pb) => (
                        pb.c_max.map(|v| format!("{v:.4}")).unwrap_or_else(|| "<0".into()),
                        pb.x_at_max.to_string(),
                        pb.n_points.to_string(),
                    ),
                    None => Default::default(),
                };
                t.push(vec![
                    r.label.clone(),
                    disc,
                    c,
                    x,
                    np,
                    pc,
                    px,
                    pn,
                    if r.matches { "yes" } else { "NO" }.into(),
                    r.error.clone().unwrap_or_default(),
                ]);
            }
            let s = Summary {
                matched: rows.iter().filter(|r| r.matches).count(),
                total: rows.len(),
            };
            emit(fmt, &t, &rows, Some(&s), out)?;
            s
        }
    };
    summary_line(out, fmt, &summary)?;
    if summary.matched != summary.total {
        return Err(Fail {
            code: EXIT_MISMATCH,
            message: format!(
                "{} of {} rows differ from the published values",
                summary.total - summary.matched,
                summary.total
            ),
        });
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, cfg: &RunConfig, out: &mut impl Write) -> Result<(), Fail> {
    let field = match a.disc {
        Some(d) => OracleField::Quadratic(QuadraticField::new(d)?),
        None => OracleField::Rational,
    };
    if !(a.xmax.is_finite() && a.xmax >= 0.0) {
        return Err(usage(format!("--xmax must be a finite number, got {}", a.xmax)));
    }
    check_profile(&field.profile(), cfg)?;
    let sieve = VonMangoldt::new(a.xmax.floor() as u64)?;
    let report = verify_bound(&field, &sieve, a.formula, a.xmax)?;
    let p = cfg.precision_digits;
    match cfg.output_format {
        OutputFormat::Human => {
            writeln!(out, "field      {}", report.field)?;
            writeln!(out, "formula    {}", report.formula)?;
            writeln!(out, "x_max      {}", num(report.x_max, p))?;
            writeln!(out, "samples    {}", report.samples)?;
            writeln!(out, "max ratio  {}", num(report.max_ratio, p))?;
            writeln!(out, "at x       {}", num(report.argmax_x, p))?;
            writeln!(
                out,
                "|psi - x|  {}",
                num((report.psi_at_max - report.argmax_x).abs(), p)
            )?;
            writeln!(out, "bound      {}", num(report.bound_at_max, p))?;
            writeln!(out, "result     {}", if report.pass { "PASS" } else { "FAIL" })?;
        }
        fmt => {
            let mut t = Table::new(vec!["field", "formula", "x_max", "max_ratio", "argmax_x", "pass"]);
            t.push(vec![
                report.field.clone(),
                report.formula.to_string(),
                num(report.x_max, p),
                num(report.max_ratio, p),
                num(report.argmax_x, p),
                report.pass.to_string(),
            ]);
            emit(fmt, &t, std::slice::from_ref(&report), None::<()>, out)?;
        }
    }
    if !report.pass {
        return Err(Fail {
            code: EXIT_VIOLATION,
            message: format!("bound exceeded: ratio {} at x = {}", report.max_ratio, report.argmax_x),
        });
    }
    Ok(())
}

fn cmd_selftest(corrupt: Option<&str>, cfg: &RunConfig, out: &mut impl Write) -> Result<(), Fail> {
    let mut constants = Constants::standard().clone();
    if let Some(spec) = corrupt {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| usage("--corrupt expects NAME=VALUE"))?;
        let value: f64 = value.parse().map_err(|_| usage(format!("bad value '{value}'")))?;
        if !constants.set(name, value) {
            return Err(usage(format!("unknown constant '{name}'")));
        }
    }
    let checks = selftest::run(&constants);
    let mut t = Table::new(vec!["check", "result", "detail"]);
    for c in &checks {
        t.push(vec![
            c.name.to_string(),
            if c.passed { "PASS" } else { "FAIL" }.into(),
            c.detail.clone(),
        ]);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let s = Summary {
        matched: checks.len() - failed.len(),
        total: checks.len(),
    };
    emit(cfg.output_format, &t, &checks, Some(&s), out)?;
    if !failed.is_empty() {
        return Err(Fail {
            code: EXIT_SELFTEST,
            message: format!("failed checks: {}", failed.join(", ")),
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Fail> {
    let cfg = run_config(&cli.global)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let r = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &cfg, &mut out),
        Command::Tables { which } => cmd_tables(*which, &cfg, &mut out),
        Command::Verify(a) => cmd_verify(a, &cfg, &mut out),
        Command::Selftest { corrupt } => cmd_selftest(corrupt.as_deref(), &cfg, &mut out),
    };
    out.flush()?;
    r
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
