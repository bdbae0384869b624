//! Argument parsing and the subcommands behind `canonical-aut`.

use std::io::Write;
use std::path::PathBuf;

use canaut_core::analysis::{analyze, Analysis};
use canaut_core::charlattice::two_factor_survey;
use canaut_core::error::{Error, ErrorClass};
use canaut_core::oracle;
use canaut_core::pointcfg::build_config;
use canaut_core::surface::{complete_square, validate};
use canaut_core::wpoly::parse;
use canaut_core::Tolerances;
use clap::{Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::batch::{equations, map_ordered};
use crate::report::{AnalysisReport, ErrorReport, SurveyJson, ValidityJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "canonical-aut",
    version,
    about = "Automorphism groups of surfaces w^2 = F10(x,y,z) in P(1,1,2,5)"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Chordal distance below which two roots are one point.
    #[arg(long, global = true, default_value_t = 1e-6, value_name = "EPS")]
    pub cluster_tol: f64,
    /// Relative distance below which two matrices are one group element.
    #[arg(long, global = true, default_value_t = 1e-7, value_name = "EPS")]
    pub match_tol: f64,
    /// Worker threads for `batch` (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Seed for randomized oracle runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute and name the automorphism group of one surface.
    Analyze { equation: String },
    /// Analyze one equation per line of a file (`#` starts a comment).
    Batch { file: PathBuf },
    /// Enumerate all two-factor surfaces with monomial slices.
    Survey,
    /// Check the admissibility conditions only.
    Validate { equation: String },
    #[command(hide = true, subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Count diagonal solutions by enumeration, e.g. `--rows 1,7;9,1`.
    Diagonal {
        #[arg(long)]
        rows: String,
        #[arg(long)]
        modulus: u64,
    },
    /// Count configuration symmetries by the all-anchors search.
    Config { equation: String },
    /// Compare main path and oracle on seeded random configurations.
    Random {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

impl Cli {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            cluster: self.cluster_tol,
            matching: self.match_tol,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Usage => EXIT_USAGE,
        ErrorClass::InvalidSurface => EXIT_INVALID,
        ErrorClass::Numerical => EXIT_NUMERICAL,
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let tol = cli.tolerances();
    if !(tol.cluster > 0.0 && tol.matching > 0.0) {
        let _ = writeln!(err, "error: tolerances must be positive");
        return EXIT_USAGE;
    }
    let result = match &cli.command {
        Command::Analyze { equation } => cmd_analyze(&cli, equation, out),
        Command::Batch { file } => cmd_batch(&cli, file, out, err),
        Command::Survey => cmd_survey(&cli, out),
        Command::Validate { equation } => cmd_validate(&cli, equation, out),
        Command::Oracle(sub) => cmd_oracle(&cli, sub, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = std::io::Result<i32>;

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    let line = serde_json::to_string(value).map_err(std::io::Error::other)?;
    writeln!(out, "{line}")
}

/// One analysis as a JSON value plus its exit code.
fn analysis_json(equation: &str, tol: &Tolerances) -> (serde_json::Value, i32) {
    let outcome = analyze(equation, tol).and_then(|a| AnalysisReport::new(&a, tol).map(|r| (a, r)));
    let (value, code) = match outcome {
        Ok((a, r)) => (
            serde_json::to_value(r),
            if a.is_valid() { EXIT_OK } else { EXIT_INVALID },
        ),
        Err(e) => (
            serde_json::to_value(ErrorReport::new(equation, &e)),
            exit_code(&e),
        ),
    };
    (value.expect("report types serialize"), code)
}

fn cmd_analyze(cli: &Cli, equation: &str, out: &mut dyn Write) -> CmdResult {
    let tol = cli.tolerances();
    if cli.json {
        let (v, code) = analysis_json(equation, &tol);
        write_json(out, &v)?;
        return Ok(code);
    }
    match analyze(equation, &tol) {
        Ok(a) => {
            write_analysis_text(out, &a)?;
            Ok(if a.is_valid() { EXIT_OK } else { EXIT_INVALID })
        }
        Err(e) => {
            writeln!(out, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}

fn write_analysis_text(out: &mut dyn Write, a: &Analysis) -> std::io::Result<()> {
    writeln!(out, "equation:     {}", a.equation)?;
    writeln!(out, "support size: {}", a.validity.support_size)?;
    if !a.is_valid() {
        writeln!(out, "valid:        no")?;
        for v in &a.validity.violations {
            writeln!(out, "  {}: {}", v.code, v.message)?;
        }
    } else {
        writeln!(out, "valid:        yes")?;
    }
    if let (Some(g), Some(s)) = (&a.group, &a.structure) {
        writeln!(out, "order:        {}", g.order)?;
        writeln!(out, "kernel:       {}", g.kernel_order)?;
        writeln!(out, "mobius image: {}", g.mobius_type)?;
        writeln!(out, "structure:    {} [{}]", s.human_name, s.shape)?;
    }
    for w in &a.warnings {
        writeln!(out, "warning:      {w}")?;
    }
    Ok(())
}

fn cmd_batch(cli: &Cli, file: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", file.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let lines = equations(&text);
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let tol = cli.tolerances();
    let results = map_ordered(&lines, jobs, |eq| analysis_json(eq, &tol).0);
    for v in results {
        write_json(out, &v)?;
    }
    Ok(EXIT_OK)
}

fn cmd_survey(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let report = two_factor_survey();
    let json = SurveyJson::from(&report);
    if cli.json {
        write_json(out, &json)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "admissible surfaces: {}", json.surfaces)?;
    writeln!(out, "orders:  {:?}", json.orders)?;
    writeln!(out, "primes:  {:?}", json.primes)?;
    writeln!(out, "max det: {}", json.max_det)?;
    let inv: Vec<String> = json
        .invariant_factors
        .iter()
        .filter(|(d1, _)| *d1 > 1)
        .map(|(d1, d2)| format!("C_{d1} x C_{d2}"))
        .collect();
    writeln!(out, "non-cyclic groups: {}", inv.join(", "))?;
    for (p, eq) in &report.witnesses {
        writeln!(out, "witness for {p}: {eq}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_validate(cli: &Cli, equation: &str, out: &mut dyn Write) -> CmdResult {
    let tol = cli.tolerances();
    let report = parse(equation)
        .and_then(|p| complete_square(&p))
        .and_then(|c| validate(&c.form, &tol));
    match report {
        Ok(r) => {
            if cli.json {
                write_json(out, &ValidityJson::from(&r))?;
            } else {
                writeln!(out, "valid: {}", if r.is_valid { "yes" } else { "no" })?;
                writeln!(out, "support size: {}", r.support_size)?;
                for v in &r.violations {
                    writeln!(out, "{}: {}", v.code, v.message)?;
                }
                for w in &r.warnings {
                    writeln!(out, "warning: {w}")?;
                }
            }
            Ok(if r.is_valid { EXIT_OK } else { EXIT_INVALID })
        }
        Err(e) => {
            if cli.json {
                write_json(out, &ErrorReport::new(equation, &e))?;
            } else {
                writeln!(out, "error: {e}")?;
            }
            Ok(exit_code(&e))
        }
    }
}

fn parse_rows(text: &str) -> Option<Vec<(u32, u32)>> {
    text.split(';')
        .map(|pair| {
            let (a, b) = pair.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect()
}

fn cmd_oracle(cli: &Cli, sub: &OracleCommand, out: &mut dyn Write) -> CmdResult {
    let tol = cli.tolerances();
    let outcome: Result<String, Error> = match sub {
        OracleCommand::Diagonal { rows, modulus } => match parse_rows(rows) {
            Some(rows) => oracle::brute_force_diagonal(&rows, *modulus)
                .map(|r| format!("{}: {}", r.method, r.count)),
            None => {
                writeln!(out, "error: rows must look like 1,7;9,1")?;
                return Ok(EXIT_USAGE);
            }
        },
        OracleCommand::Config { equation } => parse(equation)
            .and_then(|p| complete_square(&p))
            .and_then(|c| build_config(&c.form, &tol))
            .and_then(|cfg| oracle::brute_force_config_group(&cfg, &tol))
            .map(|r| format!("{}: {}", r.method, r.count)),
        OracleCommand::Random { count } => {
            let seed = cli.seed.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut lines = vec![format!("seed {seed}")];
            let mut failed = None;
            for k in 0..*count {
                let cfg = oracle::random_config(&mut rng, &tol);
                let main = canaut_core::mobius::symmetries_of_config(&cfg, &tol).map(|g| g.order());
                let brute = oracle::brute_force_config_group(&cfg, &tol).map(|r| r.count);
                match (main, brute) {
                    (Ok(m), Ok(b)) => {
                        lines.push(format!(
                            "#{k}: {} points, search {m}, oracle {b}",
                            cfg.len()
                        ));
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        failed = Some(e);
                        break;
                    }
                }
            }
            match failed {
                Some(e) => Err(e),
                None => Ok(lines.join("\n")),
            }
        }
    };
    match outcome {
        Ok(text) => {
            writeln!(out, "{text}")?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}
