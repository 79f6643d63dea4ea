//! The `wpart` command line: verify identities, expand either side,
//! enumerate partitions, apply divisor transforms, and run the Fine and
//! Heine checks.
//!
//! Exit codes: 0 on success, 1 when an identity fails, 2 on usage or
//! parse errors.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wpart_core::arith::{divisor_transform, mobius_inverse};
use wpart_core::identity::{
    fine_check, heine_check, lhs_theorem1_series, lhs_theorem2_series, lhs_theorem3_series,
    FineSpec, QMonomial,
};
use wpart_core::partition::{enumerate_partitions, wsum_largest, wsum_smallest, wsum_window};
use wpart_core::{
    check_identity, CoeffRing, Identity, IdentityReport, Mode, PolyTU, Rational, Sequence,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wpart",
    version,
    about = "Exact checks of weighted partition identities"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare both sides of an identity for n = 1..=N.
    Verify(VerifyArgs),
    /// Print one side of a series identity for n = 1..=N.
    Expand(ExpandArgs),
    /// List the partitions of n in descending lexicographic order.
    Partitions(PartitionsArgs),
    /// Divisor transform b_n = sum_{d|n} a_d, or its Möbius inverse.
    Transform(TransformArgs),
    /// Compare a Fine product with its partition-sum expansion.
    Fine(FineArgs),
    /// Check Heine's transformation for q-monomial parameters.
    Heine(HeineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Evaluated,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
    /// Rational `p/q` or `p`.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub t: Rational,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    pub u: Rational,
    /// Sequence expression in `n`, e.g. "n^2" or "(1-(-1)^n)/2".
    #[arg(long, default_value = "n", allow_hyphen_values = true)]
    pub seq: String,
    #[arg(long, value_enum, default_value = "evaluated")]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub identity: Identity,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Test hook: add one to the right-hand side at this n.
    #[arg(long, hide = true)]
    pub corrupt_rhs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    pub identity: Identity,
    #[arg(long, value_enum)]
    pub side: Side,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PartitionsArgs {
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Also print (k, Q, s, l).
    #[arg(long)]
    pub stats: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[group(id = "direction", required = true, args = ["forward", "inverse"])]
pub struct TransformArgs {
    #[arg(long)]
    pub forward: bool,
    #[arg(long)]
    pub inverse: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub seq: String,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub n_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FineArgs {
    /// JSON file holding the coefficient table.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,
    /// `symbolic` reads coefficients as polynomials in t and u.
    #[arg(long, value_enum, default_value = "evaluated")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HeineArgs {
    /// `p/q,e` for the monomial (p/q) q^e.
    #[arg(long, allow_hyphen_values = true)]
    pub a: QMonomial,
    #[arg(long, allow_hyphen_values = true)]
    pub b: QMonomial,
    #[arg(long, allow_hyphen_values = true)]
    pub c: QMonomial,
    #[arg(long, allow_hyphen_values = true)]
    pub z: QMonomial,
    #[arg(long, default_value_t = 12)]
    pub n_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure of a subcommand, already mapped to its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(e: impl Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("error: {e}"),
        }
    }
}

impl From<wpart_core::Error> for Failure {
    fn from(e: wpart_core::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&config.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message);
            f.code
        }
    }
}

fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Verify(args) => verify(args, stdout, stderr),
        Command::Expand(args) => expand(args, stdout),
        Command::Partitions(args) => partitions(args, stdout),
        Command::Transform(args) => transform(args, stdout),
        Command::Fine(args) => fine(args, stdout, stderr),
        Command::Heine(args) => heine(args, stdout, stderr),
    }
}

/// Writes to the `--output` file if given, otherwise to `stdout`.
fn emit(out: &OutputArgs, stdout: &mut dyn Write, body: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(stdout.write_all(body.as_bytes())?),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(Failure::usage)?;
    text.push('\n');
    Ok(text)
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut text = line(header.to_vec());
    for row in rows {
        text += &line(row.iter().map(String::as_str).collect());
    }
    text
}

fn report_text<R: CoeffRing>(rep: &IdentityReport<R>) -> String {
    let p = &rep.params;
    let mut head = format!(
        "identity {}  mode {}  n_max {}",
        rep.identity, rep.mode, p.n_max
    );
    for (k, v) in [("t", &p.t), ("u", &p.u), ("seq", &p.seq)] {
        if let Some(v) = v {
            head += &format!("  {k} = {v}");
        }
    }
    for (k, v) in &p.extra {
        head += &format!("  {k} = {v}");
    }
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                if r.pass { "ok" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let verdict = if rep.overall { "PASS" } else { "FAIL" };
    format!(
        "{head}\n{}overall: {verdict}\n",
        table(&["n", "lhs", "rhs", "ok"], &rows)
    )
}

/// Prints a report and turns its verdict into an exit code.
fn finish_report<R: CoeffRing>(
    rep: &IdentityReport<R>,
    out: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let body = match out.format {
        Format::Json => to_json(rep)?,
        Format::Table => report_text(rep),
    };
    emit(out, stdout, &body)?;
    match rep.first_failure() {
        None => Ok(EXIT_OK),
        Some(n) => {
            writeln!(stderr, "{} fails: first failing n = {n}", rep.identity)?;
            Ok(EXIT_FAIL)
        }
    }
}

fn sequence_for(identity: Identity, params: &ParamArgs) -> Result<Option<Sequence>, Failure> {
    if identity.is_example() {
        return Ok(None);
    }
    Ok(Some(Sequence::from_expr(
        &params.seq,
        params.n_max as usize,
    )?))
}

fn verify_in<R: CoeffRing>(
    args: &VerifyArgs,
    t: R,
    u: R,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let seq = sequence_for(args.identity, &args.params)?;
    let mut rep = check_identity(
        args.identity,
        seq.as_ref(),
        &t,
        &u,
        args.params.n_max as usize,
    )?;
    if let Some(n) = args.corrupt_rhs {
        rep.corrupt_rhs(n);
    }
    finish_report(&rep, &args.out, stdout, stderr)
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let p = &args.params;
    match p.mode {
        ModeArg::Evaluated => verify_in(args, p.t.clone(), p.u.clone(), stdout, stderr),
        ModeArg::Symbolic => verify_in(args, PolyTU::t(), PolyTU::u(), stdout, stderr),
    }
}

#[derive(Serialize)]
#[serde(bound = "R: CoeffRing")]
struct Expansion<R> {
    identity: String,
    side: &'static str,
    mode: Mode,
    n_max: u32,
    t: String,
    u: String,
    seq: String,
    values: Vec<ExpansionRow<R>>,
}

#[derive(Serialize)]
#[serde(bound = "R: CoeffRing")]
struct ExpansionRow<R> {
    n: usize,
    value: R,
}

fn expand_in<R: CoeffRing>(args: &ExpandArgs, t: R, u: R, stdout: &mut dyn Write) -> CmdResult {
    let p = &args.params;
    let n_max = p.n_max as usize;
    let seq = Sequence::from_expr(&p.seq, n_max)?;
    let a = &seq.values;
    let values: Vec<R> = match args.side {
        Side::Lhs => {
            let series = match args.identity {
                Identity::Thm1 => lhs_theorem1_series(a, &t, &u, n_max)?,
                Identity::Thm2 => lhs_theorem2_series(a, &t, &u, n_max)?,
                _ => lhs_theorem3_series(a, &t, &u, n_max)?,
            };
            series.into_coeffs().into_iter().skip(1).collect()
        }
        Side::Rhs => (1..=p.n_max)
            .map(|n| match args.identity {
                Identity::Thm1 => wsum_smallest(n, a, &t, &u),
                Identity::Thm2 => wsum_largest(n, a, &t, &u),
                _ => wsum_window(n, a, &t, &u),
            })
            .collect::<wpart_core::Result<_>>()?,
    };
    let expansion = Expansion {
        identity: args.identity.to_string(),
        side: match args.side {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        },
        mode: R::MODE,
        n_max: p.n_max,
        t: t.to_string(),
        u: u.to_string(),
        seq: p.seq.clone(),
        values: values
            .into_iter()
            .enumerate()
            .map(|(i, value)| ExpansionRow { n: i + 1, value })
            .collect(),
    };
    let body = match args.out.format {
        Format::Json => to_json(&expansion)?,
        Format::Table => {
            let rows: Vec<Vec<String>> = expansion
                .values
                .iter()
                .map(|r| vec![r.n.to_string(), r.value.to_string()])
                .collect();
            format!(
                "identity {}  side {}  mode {}  t = {}  u = {}  seq = {}\n{}",
                expansion.identity,
                expansion.side,
                expansion.mode,
                expansion.t,
                expansion.u,
                expansion.seq,
                table(&["n", "value"], &rows)
            )
        }
    };
    emit(&args.out, stdout, &body)?;
    Ok(EXIT_OK)
}

fn expand(args: &ExpandArgs, stdout: &mut dyn Write) -> CmdResult {
    if !args.identity.uses_u() {
        return Err(Failure::usage(format!(
            "expand supports thm1, thm2 and thm3, not {}",
            args.identity
        )));
    }
    let p = &args.params;
    match p.mode {
        ModeArg::Evaluated => expand_in(args, p.t.clone(), p.u.clone(), stdout),
        ModeArg::Symbolic => expand_in(args, PolyTU::t(), PolyTU::u(), stdout),
    }
}

fn partitions(args: &PartitionsArgs, stdout: &mut dyn Write) -> CmdResult {
    let iter = enumerate_partitions(args.n)?;
    let mut sink: Box<dyn Write + '_> = match &args.out.output {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path).map_err(|e| {
            Failure::usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(io::BufWriter::new(stdout)),
    };
    match args.out.format {
        Format::Table => {
            for p in iter {
                let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
                write!(sink, "{}", parts.join("+"))?;
                if args.stats {
                    let st = p.stats();
                    write!(sink, "  k={} Q={} s={} l={}", st.k, st.q, st.s, st.l)?;
                }
                writeln!(sink)?;
            }
        }
        Format::Json => {
            writeln!(sink, "[")?;
            for (i, p) in iter.enumerate() {
                let item = if args.stats {
                    serde_json::json!({ "partition": p, "stats": p.stats() })
                } else {
                    serde_json::to_value(&p).map_err(Failure::usage)?
                };
                let sep = if i == 0 { "" } else { ",\n" };
                write!(sink, "{sep}  {item}")?;
            }
            writeln!(sink, "\n]")?;
        }
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

fn transform(args: &TransformArgs, stdout: &mut dyn Write) -> CmdResult {
    let len = args.n_max as usize;
    let seq = Sequence::from_expr(&args.seq, len)?;
    let values = if args.forward {
        divisor_transform(&seq.values, len)?
    } else {
        mobius_inverse(&seq.values, len)?
    };
    let body = match args.out.format {
        Format::Json => to_json(&values)?,
        Format::Table => {
            let rows: Vec<Vec<String>> = values
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
                .collect();
            table(&["n", "value"], &rows)
        }
    };
    emit(&args.out, stdout, &body)?;
    Ok(EXIT_OK)
}

fn fine_in<R: CoeffRing>(
    args: &FineArgs,
    text: &str,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let spec: FineSpec<R> = serde_json::from_str(text)
        .map_err(|e| Failure::usage(format!("invalid Fine spec {}: {e}", args.spec.display())))?;
    let rep = fine_check(&spec, args.n_max as usize)?;
    finish_report(&rep, &args.out, stdout, stderr)
}

fn fine(args: &FineArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let text = fs::read_to_string(&args.spec)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.spec.display())))?;
    match args.mode {
        ModeArg::Evaluated => fine_in::<Rational>(args, &text, stdout, stderr),
        ModeArg::Symbolic => fine_in::<PolyTU>(args, &text, stdout, stderr),
    }
}

fn heine(args: &HeineArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let rep = heine_check(&args.a, &args.b, &args.c, &args.z, args.n_max as usize)?;
    finish_report(&rep, &args.out, stdout, stderr)
}
