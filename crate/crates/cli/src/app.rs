//! Subcommand dispatch. [`run`] never panics on user input and returns the
//! process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use quadfact_core::factor::Constructive;
use quadfact_core::oracle::{cross_check, product_set, EnumerationDomain};
use quadfact_core::{
    decide, factor, invariant_report, verify_witness, Decision, Error as CoreError, FactorSpec,
    Matrix, Witness,
};
use thiserror::Error;

use crate::format::{
    parse_field, parse_matrix, parse_spec, parse_witness, render_report, write_matrix, write_spec,
    write_witness, OutputFormat, ParseError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quadfact",
    version,
    about = "Factor square matrices into idempotent and square-zero matrices with prescribed nullities"
)]
pub struct Cli {
    /// Output renderer.
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print n, rank, nullity, n0, dim(R cap N) and dim(R + N).
    Invariants {
        /// Matrix file.
        input: PathBuf,
    },
    /// Evaluate the feasibility conditions for a factor spec.
    Decide {
        input: PathBuf,
        /// Factor spec, e.g. `idem=1 sqz=1,1`.
        #[arg(long, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Build a witness, verify it and write it to a file.
    Factor {
        input: PathBuf,
        #[arg(long, num_args = 1..)]
        spec: Vec<String>,
        /// Witness file to write.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Check a witness file against a matrix.
    Verify {
        input: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Compare the decision with exhaustive search over a small prime field.
    Oracle {
        /// `GF <p>` or `GF<p>`.
        #[arg(long)]
        field: String,
        /// Matrix order.
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 1..)]
        spec: Vec<String>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::ConstructionError(_)) => EXIT_INTERNAL,
            CliError::Core(CoreError::Infeasible(_)) => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Core(c) => CliError::Core(c),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_matrix(path: &Path) -> Result<Matrix, CliError> {
    parse_matrix(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn load_spec(parts: &[String], g: &Matrix) -> Result<FactorSpec, CliError> {
    Ok(parse_spec(&parts.join(" "), g.field())?)
}

fn render_decision(d: &Decision, spec: &FactorSpec, format: OutputFormat) -> String {
    let mut s = String::new();
    let verdict = if d.feasible { "feasible" } else { "infeasible" };
    let constructive = match d.constructive {
        Constructive::Full => "full",
        Constructive::DecisionOnly => "decision-only",
    };
    match format {
        OutputFormat::Keyvalue => {
            s += &format!("spec={}\n", write_spec(spec));
            for (i, c) in d.conditions.iter().enumerate() {
                let j = i + 1;
                s += &format!("condition_{j}_id={}\n", c.id);
                s += &format!("condition_{j}={c}\n");
                s += &format!("condition_{j}_passed={}\n", c.passed());
            }
            s += &format!("feasible={}\nconstructive={constructive}\n", d.feasible);
        }
        OutputFormat::Human => {
            s += &format!("spec: {}\n", write_spec(spec));
            let width = d.conditions.iter().map(|c| c.to_string().len()).max().unwrap_or(0);
            for c in &d.conditions {
                let mark = if c.passed() { "ok" } else { "FAILS" };
                s += &format!("{:<5} {:<width$}  {mark}\n", c.id, c.to_string());
            }
            if d.feasible {
                s += &format!("verdict: {verdict} (construction: {constructive})\n");
            } else {
                s += &format!("verdict: {verdict}\n");
            }
        }
    }
    s
}

fn render_verification(w: &Witness, target: &Matrix, format: OutputFormat) -> (String, bool) {
    let report = verify_witness(target, w);
    let mut s = String::new();
    for (i, (f, c)) in w.factors.iter().zip(&report.factors).enumerate() {
        let j = i + 1;
        match format {
            OutputFormat::Keyvalue => {
                s += &format!(
                    "factor_{j}_role={}\nfactor_{j}_declared_nullity={}\nfactor_{j}_nullity={}\nfactor_{j}_passed={}\n",
                    f.role, f.declared_nullity, c.actual_nullity, c.passed()
                );
            }
            OutputFormat::Human => {
                let mark = if c.passed() { "ok" } else { "FAILS" };
                let detail = if !c.shape_ok {
                    "wrong shape or field".to_string()
                } else if !c.role_ok {
                    format!("not {}", f.role)
                } else {
                    format!("nullity {} (declared {})", c.actual_nullity, f.declared_nullity)
                };
                s += &format!("factor {j}: {:<17} {detail:<26} {mark}\n", f.role.as_str());
            }
        }
    }
    match format {
        OutputFormat::Keyvalue => {
            s += &format!("factors={}\nproduct_ok={}\nverified={}\n", w.factors.len(), report.product_ok, report.passed);
        }
        OutputFormat::Human => {
            let product = if report.product_ok { "equals the input" } else { "DIFFERS from the input" };
            s += &format!("product of {} factors {product}\n", w.factors.len());
            s += &format!("verdict: {}\n", if report.passed { "verified" } else { "NOT verified" });
        }
    }
    (s, report.passed)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let format = cli.format;
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    };
    match &cli.command {
        Command::Invariants { input } => {
            let g = load_matrix(input)?;
            emit(out, &render_report(&invariant_report(&g)?, format))?;
            Ok(EXIT_OK)
        }
        Command::Decide { input, spec } => {
            let g = load_matrix(input)?;
            let spec = load_spec(spec, &g)?;
            let d = decide(&g, &spec)?;
            emit(out, &render_decision(&d, &spec, format))?;
            Ok(if d.feasible { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Factor { input, spec, output } => {
            if input == output {
                return Err(CliError::Usage("the witness file must differ from the input file".into()));
            }
            let g = load_matrix(input)?;
            let spec = load_spec(spec, &g)?;
            let d = decide(&g, &spec)?;
            if !d.feasible {
                emit(out, &render_decision(&d, &spec, format))?;
                return Ok(EXIT_NEGATIVE);
            }
            let w = match factor(&g, &spec) {
                Ok(w) => w,
                Err(CoreError::DecisionOnly(why)) => {
                    return Err(CliError::Usage(format!(
                        "feasible, but no construction is available for this shape ({why}); use `decide`"
                    )))
                }
                Err(e) => return Err(e.into()),
            };
            fs::write(output, write_witness(&w)).map_err(|source| CliError::Io {
                path: output.display().to_string(),
                source,
            })?;
            let (text, passed) = render_verification(&w, &g, format);
            emit(out, &text)?;
            if format == OutputFormat::Human {
                emit(out, &format!("witness written to {}\n", output.display()))?;
            }
            Ok(if passed { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::Verify { input, witness } => {
            let g = load_matrix(input)?;
            let w = parse_witness(&read(witness)?).map_err(|source| CliError::Parse {
                path: witness.display().to_string(),
                source,
            })?;
            let (text, passed) = render_verification(&w, &g, format);
            emit(out, &text)?;
            Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Oracle { field, n, spec } => {
            let field = parse_field(field).map_err(CliError::Usage)?;
            let dom = EnumerationDomain::new(field, *n)?;
            let spec = parse_spec(&spec.join(" "), field)?;
            let reachable = product_set(&dom, &spec)?.len();
            let mismatches = cross_check(&dom, &spec)?;
            let mut s = String::new();
            match format {
                OutputFormat::Keyvalue => {
                    s += &format!(
                        "field={field}\nn={n}\nspec={}\ndomain_size={}\nproduct_set_size={reachable}\nmismatches={}\n",
                        write_spec(&spec),
                        dom.size(),
                        mismatches.len()
                    );
                }
                OutputFormat::Human => {
                    s += &format!("domain: {n}x{n} matrices over {field} ({} total)\n", dom.size());
                    s += &format!("spec: {}\n", write_spec(&spec));
                    s += &format!("reachable products: {reachable}\n");
                    s += &format!("mismatches: {}\n", mismatches.len());
                }
            }
            for (i, m) in mismatches.iter().enumerate() {
                s += &format!(
                    "mismatch {} in_product_set={} decided_feasible={}\n{}",
                    i + 1,
                    m.in_product_set,
                    m.decided_feasible,
                    write_matrix(&m.matrix)
                );
            }
            emit(out, &s)?;
            Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            let kind = if code == EXIT_INTERNAL { "internal error" } else { "error" };
            let _ = writeln!(err, "quadfact: {kind}: {e}");
            code
        }
    }
}
