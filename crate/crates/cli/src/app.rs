//! Subcommands, output formatting and exit codes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use chowcalc::checks;
use chowcalc::koszul::{koszul_homology, GradedRing, HomogeneousSequence};
use chowcalc::rr::{self, CurveContext, SurfaceContext};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::eval::{evaluate, evaluate_bundle, ErrorKind, EvalError};
use crate::expr::{parse, ParseError};
use crate::polyparse::parse_sequence;
use crate::workspace::Workspace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "chowcalc", version, about = "Exact characteristic classes and Riemann-Roch on projective space")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Ambient {
    /// Dimension n of the ambient projective space.
    #[arg(short = 'n', long = "ambient")]
    pub n: Option<usize>,
    /// Workspace file with named bundles and contexts.
    #[arg(long)]
    pub workspace: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression.
    Eval {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare chi(E) from K-theory with the integral of ch(E) td(P^n).
    Hrr {
        #[command(flatten)]
        ambient: Ambient,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// chi(O(d)) three ways for a range of twists.
    ChiTable {
        #[arg(short = 'n', long = "ambient")]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        dmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        dmax: i64,
    },
    /// Koszul homology dimensions of a homogeneous sequence.
    Koszul {
        /// Number of variables x0..x{m-1}.
        #[arg(long)]
        vars: usize,
        /// Comma-separated polynomials.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Run every invariant suite.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Riemann-Roch for a divisor on a surface.
    SurfaceChi {
        #[arg(long)]
        workspace: Option<PathBuf>,
        /// Surface name in the workspace; the projective plane when omitted.
        #[arg(long)]
        surface: Option<String>,
        /// Divisor coordinates, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Riemann-Roch for a bundle on a curve.
    CurveChi {
        #[arg(long)]
        workspace: Option<PathBuf>,
        #[arg(long, conflicts_with = "genus")]
        curve: Option<String>,
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
}

/// What a run produced: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

struct Failure {
    code: i32,
    message: String,
    /// Output to show even though the command failed.
    stdout: String,
}

fn user(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USER, message: message.into(), stdout: String::new() }
}

fn internal(message: impl Into<String>, stdout: String) -> Failure {
    Failure { code: EXIT_INTERNAL, message: message.into(), stdout }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        user(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        let code = if e.kind == ErrorKind::Internal { EXIT_INTERNAL } else { EXIT_USER };
        Failure { code, message: e.to_string(), stdout: String::new() }
    }
}

/// Exit code for an error raised by the engine.
pub fn exit_code(e: &chowcalc::Error) -> i32 {
    match e {
        chowcalc::Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_USER,
    }
}

impl From<chowcalc::Error> for Failure {
    fn from(e: chowcalc::Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string(), stdout: String::new() }
    }
}

impl From<crate::workspace::WorkspaceError> for Failure {
    fn from(e: crate::workspace::WorkspaceError) -> Self {
        user(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: EXIT_USER, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(f) => Outcome { code: f.code, stdout: f.stdout, stderr: format!("error: {}\n", f.message) },
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Eval { ambient, expr } => {
            let (ws, n) = resolve(ambient)?;
            let value = evaluate(&parse(expr)?, &ws, n)?;
            Ok(if json { to_json(&value) } else { format!("{value}\n") })
        }
        Command::Hrr { ambient, expr } => {
            let (ws, n) = resolve(ambient)?;
            let bundle = evaluate_bundle(&parse(expr)?, &ws, n)?;
            let report = rr::hrr_check(&bundle)?;
            let out = if json {
                to_json(&report)
            } else {
                format!("chi = {}\nintegral = {}\nequal = {}\n", report.lhs, report.rhs, report.equal)
            };
            if report.equal {
                Ok(out)
            } else {
                Err(internal("Riemann-Roch sides differ", out))
            }
        }
        Command::ChiTable { n, dmin, dmax } => chi_table(*n, *dmin, *dmax, json),
        Command::Koszul { vars, seq, max_degree } => koszul(*vars, seq, *max_degree, json),
        Command::Check { seed } => {
            let outcomes = checks::run_all(*seed)?;
            Ok(if json {
                to_json(&outcomes)
            } else {
                let mut s = String::new();
                for o in &outcomes {
                    writeln!(s, "{}: {} cases ok", o.name, o.cases).expect("string write");
                }
                s
            })
        }
        Command::SurfaceChi { workspace, surface, divisor } => {
            let ctx = match surface {
                None => SurfaceContext::projective_plane(),
                Some(name) => {
                    let ws = load(workspace)?;
                    ws.surfaces.get(name).cloned().ok_or_else(|| user(format!("no surface named {name:?}")))?
                }
            };
            let d = int_list(divisor)?;
            if d.len() != ctx.basis_names().len() {
                return Err(user(format!(
                    "divisor has {} coordinates, surface basis has {}",
                    d.len(),
                    ctx.basis_names().len()
                )));
            }
            let chi = rr::surface_chi(&ctx, &d)?;
            Ok(if json { to_json(&serde_json::json!({ "chi": chi })) } else { format!("{chi}\n") })
        }
        Command::CurveChi { workspace, curve, genus, rank, degree } => {
            let ctx = match (curve, genus) {
                (Some(name), _) => {
                    let ws = load(workspace)?;
                    ws.curves.get(name).cloned().ok_or_else(|| user(format!("no curve named {name:?}")))?
                }
                (None, Some(g)) => CurveContext { genus: *g },
                (None, None) => return Err(user("give --genus or --curve")),
            };
            let chi = rr::curve_chi(&ctx, *rank, *degree)?;
            Ok(if json { to_json(&CurveChi { chi }) } else { format!("{chi}\n") })
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn load(path: &Option<PathBuf>) -> Result<Workspace, Failure> {
    match path {
        Some(p) => Ok(Workspace::load(p)?),
        None => Err(user("this command needs --workspace")),
    }
}

/// The workspace and the ambient dimension, reconciling `-n` with the file.
fn resolve(a: &Ambient) -> Result<(Workspace, usize), Failure> {
    let ws = match &a.workspace {
        Some(p) => Workspace::load(p)?,
        None => Workspace::default(),
    };
    let n = match (a.n, ws.ambient) {
        (Some(n), Some(w)) if n != w => {
            return Err(user(format!("-n {n} disagrees with the workspace ambient {w}")));
        }
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => return Err(user("the ambient dimension is required (-n)")),
    };
    if n < 1 {
        return Err(user("the ambient dimension must be at least 1"));
    }
    Ok((ws, n))
}

fn int_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| user(format!("{s:?} is not an integer"))))
        .collect()
}

/// Right-aligned columns, header first.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", cells.join("  ")).expect("string write");
    }
    out
}

#[derive(Serialize)]
struct ChiRow {
    d: i64,
    #[serde(serialize_with = "bigint_number")]
    chi: BigInt,
    integral: chowcalc::Rational,
    #[serde(serialize_with = "bigint_number")]
    oracle: BigInt,
}

#[derive(Serialize)]
struct CurveChi {
    #[serde(serialize_with = "bigint_number")]
    chi: BigInt,
}

fn bigint_number<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&v.to_string()),
    }
}

fn chi_table(n: usize, dmin: i64, dmax: i64, json: bool) -> Result<String, Failure> {
    if dmin > dmax {
        return Err(user(format!("--dmin {dmin} exceeds --dmax {dmax}")));
    }
    let rows: Vec<ChiRow> = rr::chi_table(n, dmin, dmax)?
        .into_iter()
        .map(|(d, chi, integral, oracle)| ChiRow { d, chi, integral, oracle })
        .collect();
    let out = if json {
        to_json(&rows)
    } else {
        let header = ["d", "chi", "integral", "oracle"].map(String::from);
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| vec![r.d.to_string(), r.chi.to_string(), r.integral.to_string(), r.oracle.to_string()])
            .collect();
        table(&header, &body)
    };
    let bad: Vec<i64> = rows
        .iter()
        .filter(|r| r.chi != r.oracle || r.integral != chowcalc::Rational::from(r.chi.clone()))
        .map(|r| r.d)
        .collect();
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(internal(format!("chi disagrees at d = {bad:?}"), out))
    }
}

#[derive(Serialize)]
struct KoszulOutput {
    vars: usize,
    seq: Vec<String>,
    degrees: Vec<u32>,
    max_degree: u32,
    homology: Vec<Vec<u64>>,
    chain: Vec<Vec<u64>>,
    acyclic: bool,
    euler_identity: bool,
}

fn koszul(vars: usize, seq: &str, max_degree: u32, json: bool) -> Result<String, Failure> {
    let ring = GradedRing::new(vars)?;
    let elements = parse_sequence(seq, vars)?;
    let seq = HomogeneousSequence::new(ring, elements)?;
    let report = koszul_homology(&seq, max_degree)?;
    let out = KoszulOutput {
        vars,
        seq: seq.elements().iter().map(ToString::to_string).collect(),
        degrees: seq.degrees().to_vec(),
        max_degree,
        acyclic: report.is_acyclic(),
        euler_identity: report.euler_identity_holds(),
        homology: report.dims,
        chain: report.chain_dims,
    };
    let text = if json {
        to_json(&out)
    } else {
        let mut header = vec!["H_k \\ t".to_string()];
        header.extend((0..=max_degree).map(|t| t.to_string()));
        let rows: Vec<Vec<String>> = out
            .homology
            .iter()
            .enumerate()
            .map(|(k, row)| std::iter::once(format!("H_{k}")).chain(row.iter().map(u64::to_string)).collect())
            .collect();
        let mut s = table(&header, &rows);
        writeln!(s, "acyclic: {}", out.acyclic).expect("string write");
        s
    };
    if out.euler_identity {
        Ok(text)
    } else {
        Err(internal("Euler characteristic identity fails", text))
    }
}
