//! The `charp` command line.
//!
//! Exit codes: 0 computation completed (negative verdicts included),
//! 1 internal error or failing fuzz suite, 2 usage or precondition error,
//! 3 parse error, 4 bound exceeded (retry with other bounds).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::deriv::{DerivError, Derivation, TupleF};
use crate::fuzz::{run_suite, Suite};
use crate::pconst::{
    certify_jacobian_witness, classify_two_vars, find_generator_two_vars, hunt_counterexamples,
    kernel_basis, ConstError, HuntConfig,
};
use crate::poly::{Context, Poly};
use crate::textio::{
    emit_report, parse_derivation_spec, parse_poly, CertifyOutcome, Format, GeneratorOutcome,
    ParseError, PolyReport, Report,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// Ceiling on the default `--max-degree` of `generator`.
pub const DEFAULT_MAX_DEGREE_CAP: u32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "charp",
    version,
    about = "Derivations of F_p[x_1, .., x_n]: Jacobian tests, rings of constants, p-bases"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-variable classification: divergence, top coefficients, Jacobian verdict.
    Classify {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// The generator f with K[x,y]^d = K[x^p, y^p, f] and d = c * d_f.
    Generator {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        /// Degree bound of the search [default: 2p * max(1, max image degree), capped at 64]
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Check that f_1 .. f_{n-1} witness d as a Jacobian derivation.
    Certify {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Differential gcd of a tuple of polynomials.
    Dgcd {
        #[arg(long)]
        p: u32,
        /// Main variables, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Parameters of K, comma separated.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Basis of the constants of d up to a degree bound.
    Kernel {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(short = 'D', long = "degree")]
        degree: u32,
    },
    /// Apply d to a polynomial.
    Apply {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        expr: String,
    },
    /// Divergence of d.
    Divergence {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Run a seeded property suite.
    Fuzz {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search three-variable derivations for ones with no witness in reach.
    Hunt {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        deg: u32,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failed command: exit code plus message for the diagnostic stream.
struct Failure(i32, String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(EXIT_PARSE, e.to_string())
    }
}

impl From<DerivError> for Failure {
    fn from(e: DerivError) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

impl From<ConstError> for Failure {
    fn from(e: ConstError) -> Self {
        let code = if e.is_bound_exceeded() {
            EXIT_BOUND
        } else if matches!(e, ConstError::Inconsistency(_)) {
            EXIT_INTERNAL
        } else {
            EXIT_USAGE
        };
        Failure(code, e.to_string())
    }
}

fn load(path: &Path) -> Result<(Arc<Context>, Derivation), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_derivation_spec(&text)
        .map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn parse_all(exprs: &[String], ctx: &Arc<Context>) -> Result<Vec<Poly>, Failure> {
    exprs
        .iter()
        .map(|s| parse_poly(s, ctx).map_err(|e| Failure(EXIT_PARSE, format!("`{s}`: {e}"))))
        .collect()
}

fn render<R: Report>(r: &R, format: Format) -> Result<(i32, String), Failure> {
    Ok((EXIT_OK, emit_report(r, format)))
}

/// Default search bound for `generator`.
pub fn default_max_degree(d: &Derivation) -> u32 {
    let top = d.images().iter().map(Poly::main_degree).max().unwrap_or(0);
    (2 * d.ctx().p() * top.max(1)).min(DEFAULT_MAX_DEGREE_CAP)
}

fn execute(command: Command, format: Format) -> Result<(i32, String), Failure> {
    match command {
        Command::Classify { file } => {
            let (_, d) = load(&file)?;
            render(&classify_two_vars(&d)?, format)
        }
        Command::Generator { file, max_degree } => {
            let (_, d) = load(&file)?;
            let bound = max_degree.unwrap_or_else(|| default_max_degree(&d));
            let outcome = match find_generator_two_vars(&d, bound) {
                Ok((f, c)) => GeneratorOutcome::Found { f, c },
                Err(ConstError::NotJacobian) => GeneratorOutcome::NotJacobian,
                Err(ConstError::NotIrreducible(_)) => {
                    GeneratorOutcome::NotIrreducible(d.image_gcd())
                }
                Err(e) => return Err(e.into()),
            };
            render(&outcome, format)
        }
        Command::Certify { file, entries } => {
            let (ctx, d) = load(&file)?;
            let tuple = TupleF::new(&ctx, parse_all(&entries, &ctx)?)?;
            let outcome = match certify_jacobian_witness(&d, &tuple) {
                Ok(w) => CertifyOutcome::Certified(w),
                Err(
                    e @ (ConstError::NotAConstant(_)
                    | ConstError::DgcdNotUnit(_)
                    | ConstError::RatioNotUnit),
                ) => CertifyOutcome::Rejected(e.to_string()),
                Err(e) => return Err(e.into()),
            };
            render(&outcome, format)
        }
        Command::Dgcd {
            p,
            vars,
            params,
            entries,
        } => {
            let ctx =
                Context::new(p, vars, params).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            let tuple = TupleF::new(&ctx, parse_all(&entries, &ctx)?)?;
            render(
                &PolyReport {
                    label: "dgcd",
                    value: tuple.dgcd(),
                },
                format,
            )
        }
        Command::Kernel { file, degree } => {
            let (_, d) = load(&file)?;
            render(&kernel_basis(&d, degree)?, format)
        }
        Command::Apply { file, expr } => {
            let (ctx, d) = load(&file)?;
            let f = parse_all(&[expr], &ctx)?.remove(0);
            render(
                &PolyReport {
                    label: "image",
                    value: d.apply(&f)?,
                },
                format,
            )
        }
        Command::Divergence { file } => {
            let (_, d) = load(&file)?;
            render(
                &PolyReport {
                    label: "divergence",
                    value: d.divergence(),
                },
                format,
            )
        }
        Command::Fuzz {
            suite,
            trials,
            seed,
        } => {
            let report = run_suite(suite, trials, seed);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            };
            Ok((code, emit_report(&report, format)))
        }
        Command::Hunt {
            p,
            deg,
            trials,
            seed,
        } => {
            let report = hunt_counterexamples(HuntConfig {
                p,
                deg,
                trials,
                seed,
            })?;
            render(&report, format)
        }
    }
}

/// Runs the command line, writing verdicts to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match execute(cli.command, format) {
        Ok((code, text)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
