//! `locc-ident` command-line harness.
//!
//! Exit status: 0 when every check passes, 1 on a failed check or a
//! computation error, 2 on an invalid configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::global::{optimal_global_povm, p_max_closed_form, success_from_trace, PriorPair};
use crate::locc::{build_e1_locc, dim_identity_check, local_factorization_check};
use crate::protocol::{Mode, RunSummary, Simulator};
use crate::sectors::{build_d_a, dim_antisymmetric, dim_mixed, dim_symmetric, SymmetrySectors};
use crate::tensor::{ComplexMatrix, HilbertLayout};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;

/// Significant digits for machine-readable output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits for human tables.
pub const HUMAN_DIGITS: usize = 6;

pub const CSV_SCHEMA: u32 = 1;

/// z-score bound for `simulate`.
pub const SIMULATE_Z_BOUND: f64 = 4.0;
/// Allowed gap between spectral and closed-form optimum.
pub const SPECTRAL_TOL: f64 = 1e-9;
/// Allowed gap between the LOCC construction and the global optimum.
pub const LOCC_TOL: f64 = 1e-8;
/// Residual bound for operator identities.
pub const IDENTITY_TOL: f64 = 1e-10;
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "locc-ident",
    version,
    about = "Optimal global and LOCC identification of bipartite pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Alice's local dimension.
    #[arg(long = "da", global = true, default_value_t = 2)]
    pub d_a: usize,

    /// Bob's local dimension.
    #[arg(long = "db", global = true, default_value_t = 2)]
    pub d_b: usize,

    /// Prior probability of the first reference state.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub eta1: f64,

    /// Monte Carlo trials per mode.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,

    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Prior grid spacing for `sweep`; must divide 1.
    #[arg(long = "grid-step", global = true, default_value_t = 0.05)]
    pub grid_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build both optimal measurements and check every identity.
    Verify,
    /// Monte Carlo simulation of the global and/or LOCC measurement.
    Simulate,
    /// Tabulate the optimum over a grid of priors.
    Sweep,
    /// Sector dimensions and the mixed-sector dimension identity.
    Dims,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Global,
    Locc,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeArg::Global => vec![Mode::Global],
            ModeArg::Locc => vec![Mode::Locc],
            ModeArg::Both => vec![Mode::Global, Mode::Locc],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub layout: HilbertLayout,
    pub priors: PriorPair,
    pub trials: u64,
    pub seed: u64,
    pub mode: ModeArg,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub grid_points: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> std::result::Result<Self, String> {
        let layout = HilbertLayout::new(cli.d_a, cli.d_b).map_err(|e| e.to_string())?;
        if !(0.0..=1.0).contains(&cli.eta1) {
            return Err(format!("--eta1 must lie in [0, 1], got {}", cli.eta1));
        }
        let priors = PriorPair::from_eta1(cli.eta1).map_err(|e| e.to_string())?;
        if matches!(cli.command, Command::Verify | Command::Simulate) && layout.d() < 2 {
            return Err("verify and simulate need d_a * d_b >= 2".into());
        }
        if cli.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        let grid_points = grid_intervals(cli.grid_step)
            .ok_or_else(|| format!("--grid-step {} does not divide 1 evenly", cli.grid_step))?;
        Ok(Self {
            command: cli.command,
            layout,
            priors,
            trials: cli.trials,
            seed: cli.seed,
            mode: cli.mode,
            format: cli.format,
            out: cli.out.clone(),
            grid_points,
        })
    }
}

/// Number of intervals `n` with `n * step = 1`, if `step` divides 1.
fn grid_intervals(step: f64) -> Option<usize> {
    if !(step > 0.0 && step <= 1.0) {
        return None;
    }
    let n = (1.0 / step).round();
    ((1.0 / step - n).abs() <= 1e-9 && n >= 1.0).then_some(n as usize)
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
    Empty,
}

impl Cell {
    fn render(&self, digits: usize) -> String {
        match self {
            Cell::Num(x) => {
                let r = round_sig(*x, digits);
                if r.is_finite() {
                    format!("{r}")
                } else {
                    format!("{r}").to_lowercase()
                }
            }
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(true) => "PASS".into(),
            Cell::Flag(false) => "FAIL".into(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                serde_json::Number::from_f64(round_sig(*x, MACHINE_DIGITS)).map_or(Value::Null, Value::Number)
            }
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Flag(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Section {
    fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Output of one command plus whether all of its checks passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub sections: Vec<Section>,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            sections: Vec::new(),
            passed: true,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) -> bool {
        if !ok {
            self.passed = false;
            self.failures.push(name.to_string());
        }
        ok
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::from(self.command));
        obj.insert("schema".into(), Value::from(CSV_SCHEMA));
        obj.insert("passed".into(), Value::from(self.passed));
        for section in &self.sections {
            let rows = section
                .rows
                .iter()
                .map(|row| {
                    let mut r = Map::new();
                    for (col, cell) in section.columns.iter().zip(row) {
                        r.insert((*col).into(), cell.to_json());
                    }
                    Value::Object(r)
                })
                .collect();
            obj.insert(section.name.into(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    fn render_csv(&self) -> String {
        let mut out = format!("# schema={CSV_SCHEMA}\n");
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "# section={}", section.name);
            let _ = writeln!(out, "{}", section.columns.join(","));
            for row in &section.rows {
                let cells: Vec<String> = row.iter().map(|c| c.render(MACHINE_DIGITS)).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            let cells: Vec<Vec<String>> = section
                .rows
                .iter()
                .map(|row| row.iter().map(|c| c.render(HUMAN_DIGITS)).collect())
                .collect();
            let widths: Vec<usize> = section
                .columns
                .iter()
                .enumerate()
                .map(|(j, col)| {
                    cells
                        .iter()
                        .map(|r| r[j].len())
                        .chain([col.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: Vec<&str>| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "[{}]", section.name);
            let _ = writeln!(out, "{}", line(section.columns.clone()));
            for row in &cells {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {}",
            self.command,
            if self.passed {
                "all checks PASS".to_string()
            } else {
                format!("FAIL ({})", self.failures.join(", "))
            }
        );
        out
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID_CONFIG
            } else {
                EXIT_OK
            };
        }
    };
    let config = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INVALID_CONFIG;
        }
    };
    let report = match execute(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    let text = report.render(config.format);
    let written = match &config.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_CHECK_FAILED;
    }
    if report.passed {
        EXIT_OK
    } else {
        eprintln!("failed checks: {}", report.failures.join(", "));
        EXIT_CHECK_FAILED
    }
}

pub fn execute(config: &RunConfig) -> Result<Report> {
    match config.command {
        Command::Verify => cmd_verify(config),
        Command::Simulate => cmd_simulate(config),
        Command::Sweep => cmd_sweep(config),
        Command::Dims => Ok(cmd_dims(config)),
    }
}

fn operator_identity_residuals(d: usize) -> Result<[f64; 3]> {
    let sectors = SymmetrySectors::build(d)?;
    let (dop, aop) = build_d_a(d);
    let id = ComplexMatrix::identity(d.pow(3));
    let d2 = dop.matmul(&dop);
    let anti = &dop.matmul(&aop) + &aop.matmul(&dop);
    Ok([
        d2.max_abs_diff(&sectors.m3.scale(0.75)),
        anti.max_abs(),
        aop.matmul(&aop).max_abs_diff(&(&id - &d2)),
    ])
}

pub fn cmd_verify(config: &RunConfig) -> Result<Report> {
    let layout = config.layout;
    let priors = config.priors;
    let d = layout.d();
    let mut report = Report::new("verify");

    let mut dims = Section::new("dims", &["system", "dim", "dim_s", "dim_a", "dim_m", "pass"]);
    for (name, k) in [("a", layout.d_a()), ("b", layout.d_b()), ("d", d)] {
        let s = SymmetrySectors::build(k)?;
        let kk = k as u64;
        let ok = report.check(
            &format!("sector_dims_{name}"),
            s.dims() == (dim_symmetric(kk), dim_antisymmetric(kk), dim_mixed(kk)),
        );
        dims.push(vec![
            Cell::Text(name.into()),
            Cell::Int(kk),
            Cell::Int(s.dim_s),
            Cell::Int(s.dim_a),
            Cell::Int(s.dim_m),
            Cell::Flag(ok),
        ]);
    }
    report.sections.push(dims);

    let (global, locc) = rayon::join(
        || optimal_global_povm(d, priors),
        || build_e1_locc(layout, priors),
    );
    let (global, locc) = (global?, locc?);
    let sectors = SymmetrySectors::build(d)?;

    let mut checks = Section::new("checks", &["check", "value", "expected", "pass"]);
    let mut row = |report: &mut Report, name: &str, value: Cell, expected: Cell, ok: bool| {
        let ok = report.check(name, ok);
        checks.push(vec![Cell::Text(name.into()), value, expected, Cell::Flag(ok)]);
    };

    row(&mut report, "eta1", Cell::Num(priors.eta1()), Cell::Empty, true);
    row(
        &mut report,
        "lambda_plus",
        Cell::Num(global.lambda_plus),
        Cell::Empty,
        global.lambda_plus >= 0.0,
    );
    row(
        &mut report,
        "lambda_minus",
        Cell::Num(global.lambda_minus),
        Cell::Empty,
        global.lambda_minus <= 0.0,
    );

    let census = delta_census_residual(&global.delta_eigenvalues, &sectors, priors);
    row(
        &mut report,
        "delta_eigen_census",
        Cell::Num(census),
        Cell::Num(0.0),
        census <= SPECTRAL_TOL,
    );

    row(
        &mut report,
        "p_max_closed",
        Cell::Num(global.p_max_closed),
        Cell::Empty,
        true,
    );
    row(
        &mut report,
        "p_max_spectral",
        Cell::Num(global.p_max_spectral),
        Cell::Num(global.p_max_closed),
        (global.p_max_spectral - global.p_max_closed).abs() <= SPECTRAL_TOL,
    );
    let locc_trace = locc.e1().trace_product(&global.delta).re;
    let p_locc = success_from_trace(locc_trace, d, priors);
    row(
        &mut report,
        "p_locc",
        Cell::Num(p_locc),
        Cell::Num(global.p_max_closed),
        (p_locc - global.p_max_closed).abs() <= LOCC_TOL,
    );
    row(
        &mut report,
        "locc_trace_gap",
        Cell::Num((locc_trace - global.positive_trace).abs()),
        Cell::Num(0.0),
        (locc_trace - global.positive_trace).abs() <= LOCC_TOL,
    );

    let global_valid = global.povm.validate()?.is_valid();
    row(
        &mut report,
        "global_povm_valid",
        Cell::Flag(global_valid),
        Cell::Empty,
        global_valid,
    );
    let locc_valid = locc.povm.validate()?.is_valid();
    row(
        &mut report,
        "locc_povm_valid",
        Cell::Flag(locc_valid),
        Cell::Empty,
        locc_valid,
    );
    let idem = locc.e1().idempotency_residual();
    row(
        &mut report,
        "locc_idempotency",
        Cell::Num(idem),
        Cell::Num(0.0),
        idem <= IDENTITY_TOL,
    );

    let [d2, anti, a2] = operator_identity_residuals(d)?;
    row(
        &mut report,
        "d_squared_is_three_quarters_m3",
        Cell::Num(d2),
        Cell::Num(0.0),
        d2 <= IDENTITY_TOL,
    );
    row(
        &mut report,
        "da_anticommutator",
        Cell::Num(anti),
        Cell::Num(0.0),
        anti <= IDENTITY_TOL,
    );
    row(
        &mut report,
        "a_squared_is_one_minus_d_squared",
        Cell::Num(a2),
        Cell::Num(0.0),
        a2 <= IDENTITY_TOL,
    );

    let fact = local_factorization_check(layout);
    let worst = fact.d_residual.max(fact.a_residual);
    row(
        &mut report,
        "local_factorization",
        Cell::Num(worst),
        Cell::Num(0.0),
        worst <= IDENTITY_TOL,
    );

    let ident = dim_identity_check(layout);
    row(
        &mut report,
        "dim_identity",
        Cell::Flag(ident.holds),
        Cell::Empty,
        ident.holds,
    );
    report.sections.push(checks);
    Ok(report)
}

/// Max distance between the sorted spectrum of `Δ` and the predicted multiset.
pub fn delta_census_residual(eigenvalues: &[f64], sectors: &SymmetrySectors, priors: PriorPair) -> f64 {
    let (lp, lm) = crate::global::lambda_pm(priors);
    let half = (sectors.dim_m / 2) as usize;
    let mut expected: Vec<f64> = std::iter::repeat_n(priors.bias(), sectors.dim_s as usize)
        .chain(std::iter::repeat_n(0.0, sectors.dim_a as usize))
        .chain(std::iter::repeat_n(lp, half))
        .chain(std::iter::repeat_n(lm, half))
        .collect();
    expected.sort_by(f64::total_cmp);
    let mut actual = eigenvalues.to_vec();
    actual.sort_by(f64::total_cmp);
    if actual.len() != expected.len() {
        return f64::INFINITY;
    }
    actual
        .iter()
        .zip(&expected)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max)
}

pub fn cmd_simulate(config: &RunConfig) -> Result<Report> {
    let sim = Simulator::new(config.layout, config.priors)?;
    let mut report = Report::new("simulate");
    let mut section = Section::new(
        "runs",
        &[
            "mode",
            "d_a",
            "d_b",
            "eta1",
            "trials",
            "successes",
            "empirical_p",
            "std_error",
            "reference_p",
            "z_score",
            "pass",
        ],
    );
    for mode in config.mode.modes() {
        let s: RunSummary = sim.run(mode, config.trials, config.seed)?;
        let ok = report.check(
            &format!("z_score_{}", mode.name()),
            s.z_score.abs() <= SIMULATE_Z_BOUND,
        );
        section.push(vec![
            Cell::Text(mode.name().into()),
            Cell::Int(config.layout.d_a() as u64),
            Cell::Int(config.layout.d_b() as u64),
            Cell::Num(config.priors.eta1()),
            Cell::Int(s.trials),
            Cell::Int(s.successes),
            Cell::Num(s.empirical_p),
            Cell::Num(s.std_error),
            Cell::Num(s.reference_p),
            Cell::Num(s.z_score),
            Cell::Flag(ok),
        ]);
    }
    report.sections.push(section);
    Ok(report)
}

/// One grid point of `sweep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub eta1: f64,
    pub p_max_closed: f64,
    pub p_global_spectral: f64,
    pub p_locc_constructive: f64,
    pub discrepancy: f64,
}

pub fn sweep_point(layout: HilbertLayout, eta1: f64) -> Result<SweepPoint> {
    let priors = PriorPair::from_eta1(eta1)?;
    let d = layout.d();
    let global = optimal_global_povm(d, priors)?;
    let locc = build_e1_locc(layout, priors)?;
    let p_locc = success_from_trace(locc.e1().trace_product(&global.delta).re, d, priors);
    let closed = p_max_closed_form(d, priors);
    Ok(SweepPoint {
        eta1,
        p_max_closed: closed,
        p_global_spectral: global.p_max_spectral,
        p_locc_constructive: p_locc,
        discrepancy: (global.p_max_spectral - closed)
            .abs()
            .max((p_locc - closed).abs()),
    })
}

pub fn cmd_sweep(config: &RunConfig) -> Result<Report> {
    let n = config.grid_points;
    let points: Vec<SweepPoint> = (0..=n)
        .into_par_iter()
        .map(|k| sweep_point(config.layout, k as f64 / n as f64))
        .collect::<Result<_>>()?;

    let mut report = Report::new("sweep");
    let mut section = Section::new(
        "sweep",
        &[
            "d_a",
            "d_b",
            "eta1",
            "p_max_closed",
            "p_global_spectral",
            "p_locc_constructive",
            "discrepancy",
        ],
    );
    for pt in &points {
        section.push(vec![
            Cell::Int(config.layout.d_a() as u64),
            Cell::Int(config.layout.d_b() as u64),
            Cell::Num(pt.eta1),
            Cell::Num(pt.p_max_closed),
            Cell::Num(pt.p_global_spectral),
            Cell::Num(pt.p_locc_constructive),
            Cell::Num(pt.discrepancy),
        ]);
    }
    let worst = points.iter().map(|p| p.discrepancy).fold(0.0, f64::max);
    report.check("discrepancy", worst <= LOCC_TOL);
    let asymmetry = points
        .iter()
        .zip(points.iter().rev())
        .map(|(a, b)| (a.p_max_closed - b.p_max_closed).abs())
        .fold(0.0, f64::max);
    report.check("prior_symmetry", asymmetry <= SYMMETRY_TOL);
    report.sections.push(section);
    Ok(report)
}

pub fn cmd_dims(config: &RunConfig) -> Report {
    let layout = config.layout;
    let mut report = Report::new("dims");
    let mut sectors = Section::new("sectors", &["system", "dim", "dim_s", "dim_a", "dim_m"]);
    for (name, k) in [("a", layout.d_a()), ("b", layout.d_b()), ("d", layout.d())] {
        let k = k as u64;
        sectors.push(vec![
            Cell::Text(name.into()),
            Cell::Int(k),
            Cell::Int(dim_symmetric(k)),
            Cell::Int(dim_antisymmetric(k)),
            Cell::Int(dim_mixed(k)),
        ]);
    }
    report.sections.push(sectors);

    let ident = dim_identity_check(layout);
    let mut section = Section::new(
        "identity",
        &[
            "dim_m",
            "s_a_m_b",
            "m_a_s_b",
            "a_a_m_b",
            "m_a_a_b",
            "half_m_a_m_b",
            "holds",
        ],
    );
    let mut row = vec![Cell::Int(ident.dim_m)];
    row.extend(ident.terms.iter().map(|&t| Cell::Int(t)));
    row.push(Cell::Flag(ident.holds));
    section.push(row);
    report.check("dim_identity", ident.holds);
    report.sections.push(section);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_step_validation() {
        assert_eq!(grid_intervals(0.05), Some(20));
        assert_eq!(grid_intervals(0.25), Some(4));
        assert_eq!(grid_intervals(1.0), Some(1));
        assert_eq!(grid_intervals(0.3), None);
        assert_eq!(grid_intervals(0.0), None);
        assert_eq!(grid_intervals(-0.5), None);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(round_sig(0.716506350946, 6), 0.716506);
        assert_eq!(round_sig(0.822204860433_3, 12), 0.822204860433);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(round_sig(123456.789, 3), 123000.0);
    }

    #[test]
    fn cell_rendering() {
        assert_eq!(
            Cell::Num(0.5 + 3f64.sqrt() / 12.0).render(HUMAN_DIGITS),
            "0.644338"
        );
        assert_eq!(Cell::Flag(false).render(6), "FAIL");
        assert_eq!(Cell::Num(f64::INFINITY).render(6), "inf");
        assert_eq!(Cell::Num(f64::INFINITY).to_json(), Value::Null);
    }
}
