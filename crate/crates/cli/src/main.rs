use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ticketlab::codec::{encode_elem, to_canonical_json, CodecError, FamilyFile, ReportFile, WronskianFile};
use ticketlab::families::{generate, FamilyError, GeneratorParams};
use ticketlab::field::FieldTower;
use ticketlab::scalar::{parse_rational, FieldError, Rational};
use ticketlab::ticket::{
    is_dependent, ticket_both, ticket_exhaustive_with_threads, ticket_via_wronskian, validate_family, TicketError,
};
use ticketlab::{NfFamily, NfReport};

#[derive(Parser)]
#[command(
    name = "ticketlab",
    version,
    about = "Tickets of families of polynomials: exponents m with dependent m-th powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the ticket of a family file and write a JSON report.
    Ticket {
        file: PathBuf,
        /// Scan exponents 1..=N instead of up to the Green bound (exhaustive method only).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Exhaustive)]
        method: MethodArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-expand every witness and fail unless all of them vanish.
        #[arg(long)]
        verify: bool,
    },
    /// Decide dependence of the m-th powers and print a witness.
    Check {
        file: PathBuf,
        #[arg(long = "m")]
        m: u32,
    },
    /// Write a catalog family as a family file.
    Generate {
        name: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        /// μ² for desboves_mu.
        #[arg(long)]
        mu_sq: Option<String>,
        /// α as comma-separated coordinates over the generator's base field.
        #[arg(long)]
        alpha: Option<String>,
        /// Adjoin α = √c.
        #[arg(long)]
        alpha_sq: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Wronskian polynomial W(m), its integer roots and the verified ones.
    Wronskian { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Wronskian,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<CodecError> for Failure {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::Field { .. } => Failure::new(3, e.to_string()),
            _ => Failure::new(4, format!("parse error: {e}")),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::new(3, format!("field error: {e}"))
    }
}

impl From<TicketError> for Failure {
    fn from(e: TicketError) -> Self {
        match e {
            TicketError::Field(f) => f.into(),
            TicketError::SearchExhausted(_) | TicketError::DegenerateWronskian => Failure::new(1, e.to_string()),
            _ => Failure::new(2, format!("invalid family: {e}")),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Field(f) => f.into(),
            _ => Failure::new(6, e.to_string()),
        }
    }
}

fn threads() -> Option<usize> {
    std::env::var("TICKETLAB_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn load(path: &Path) -> Result<(Arc<FieldTower>, NfFamily), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    let (tower, polys) = FamilyFile::from_json(&text)?.decode()?;
    Ok((tower, validate_family(polys)?))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rational_arg(s: &str, flag: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::new(6, format!("--{flag}: invalid rational {s:?}")))
}

fn cmd_ticket(
    file: &Path,
    bound: Option<u64>,
    method: MethodArg,
    out: Option<&Path>,
    verify: bool,
) -> Result<(), Failure> {
    let (tower, family) = load(file)?;
    let report: NfReport = match method {
        MethodArg::Exhaustive => ticket_exhaustive_with_threads(&family, bound, threads())?,
        MethodArg::Wronskian => ticket_via_wronskian(&family)?,
        MethodArg::Both => ticket_both(&family, bound, threads())?,
    };
    if verify && !report.verify_witnesses(&family) {
        return Err(Failure::new(5, "a witness failed to re-verify"));
    }
    emit(&ReportFile::encode(&report, &tower)?.to_json(), out)?;
    if report.cross_check_mismatch == Some(true) {
        return Err(Failure::new(5, "exhaustive and Wronskian tickets disagree"));
    }
    Ok(())
}

fn cmd_check(file: &Path, m: u32) -> Result<(), Failure> {
    if m == 0 {
        return Err(Failure::new(4, "--m must be at least 1"));
    }
    let (tower, family) = load(file)?;
    match is_dependent(&family, m)? {
        (true, Some(w)) => {
            let lambda = w.lambda.iter().map(|x| encode_elem(x, &tower)).collect::<Result<Vec<_>, _>>()?;
            println!("m = {m}: dependent");
            println!("lambda = {}", serde_json::Value::Array(lambda));
        }
        _ => println!("m = {m}: independent"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    name: &str,
    mut params: GeneratorParams,
    mu_sq: Option<&str>,
    alpha: Option<&str>,
    alpha_sq: Option<&str>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    params.mu_sq = mu_sq.map(|s| rational_arg(s, "mu-sq")).transpose()?;
    params.alpha_sq = alpha_sq.map(|s| rational_arg(s, "alpha-sq")).transpose()?;
    params.alpha = alpha.map(|s| s.split(',').map(|c| rational_arg(c, "alpha")).collect()).transpose()?;
    let g = generate(name, &params)?;
    emit(&FamilyFile::encode(&g.tower, &g.polys, None)?.to_json(), out)
}

fn cmd_wronskian(file: &Path) -> Result<(), Failure> {
    let (tower, family) = load(file)?;
    let report = ticket_via_wronskian(&family)?;
    let data = report
        .wronskian
        .as_ref()
        .ok_or_else(|| Failure::new(1, "no admissible base point; the Wronskian is unavailable"))?;
    let elems = |xs: &[ticketlab::FieldElem]| xs.iter().map(|x| encode_elem(x, &tower)).collect::<Result<Vec<_>, _>>();
    let file = WronskianFile {
        base_point: elems(&data.base_point)?,
        candidates: data.candidates.iter().copied().collect(),
        dehomogenized_var: data.dehomogenized_var,
        eval_point: elems(&data.eval_point)?,
        verified: data.candidates.intersection(&report.ticket).copied().collect(),
        w: elems(data.w.coeffs())?,
    };
    print!("{}", to_canonical_json(&file));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ticket { file, bound, method, out, verify } => {
            cmd_ticket(file, *bound, *method, out.as_deref(), *verify)
        }
        Command::Check { file, m } => cmd_check(file, *m),
        Command::Generate { name, q, a, v, s, r, n, mu_sq, alpha, alpha_sq, out } => {
            let params = GeneratorParams { q: *q, a: *a, v: *v, s: *s, r: *r, n: *n, ..Default::default() };
            cmd_generate(name, params, mu_sq.as_deref(), alpha.as_deref(), alpha_sq.as_deref(), out.as_deref())
        }
        Command::Wronskian { file } => cmd_wronskian(file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ticketlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
