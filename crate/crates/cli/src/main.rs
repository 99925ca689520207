//! Command-line surface: generate bases, MUB sets, Pauli matrices and the
//! Pauli group, export them as JSON/CSV and run the verification suite.
//!
//! Exit codes: 0 success (and certified, where applicable), 1 failed
//! verification or internal error, 2 unsupported input.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use qudit_bases::cyclic::{molecular_orbitals, RingSpec};
use qudit_bases::mub::{self, MubSet};
use qudit_bases::pauli_group::{self, PauliElement};
use qudit_bases::verify;
use qudit_bases::weyl::{self, PauliLabel};
use qudit_bases::{arith, ApproxBasis, Basis, Error as CoreError};

#[derive(Parser)]
#[command(
    name = "qudit-bases",
    version,
    about = "Generalized spin bases, MUBs and Pauli operators for qudits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Arithmetic mode: exact cyclotomic or floating point
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    mode: Mode,

    /// Residual tolerance for approximate-mode checks (ignored in exact mode)
    #[arg(
        long,
        default_value_t = 1e-10,
        global = true,
        allow_negative_numbers = true
    )]
    tolerance: f64,

    /// Output format (JSON unless stated otherwise; CSV carries approximate
    /// amplitudes only)
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized property sweeps
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Approx,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a basis: B_{ra} for the given a, the computational basis otherwise
    Basis {
        /// Dimension of the Hilbert space
        #[arg(long)]
        d: u64,
        /// Operator index a (omit for the computational basis)
        #[arg(long)]
        a: Option<u64>,
        /// Parameter r: rational "p/q" in exact mode, any float in approx mode
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
    },
    /// Construct and certify a mutually unbiased set (prime d, or d = 4)
    Mub {
        #[arg(long)]
        d: u64,
    },
    /// Print the generalized Pauli matrix u_ab = x^a z^b
    Pauli {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Enumerate the Pauli group w_abc = q^a x^b z^c of order d^3
    Group {
        #[arg(long)]
        d: u64,
        /// Also emit the d^3 x d^3 Cayley table (supported for d <= 3)
        #[arg(long)]
        cayley: bool,
    },
    /// Molecular orbitals of an N-site ring
    Ring {
        /// Number of ring sites
        #[arg(long = "N")]
        n: u64,
    },
    /// Run the full invariant suite and print one line per check
    Verify {
        /// Largest dimension the sweeps may touch
        #[arg(long = "d-max", default_value_t = 7)]
        d_max: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<CoreError>() {
        Some(
            CoreError::UnsupportedDimension { .. }
            | CoreError::InvalidOrder
            | CoreError::ModeError(_)
            | CoreError::InvalidArgument(_),
        ) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    if cli.mode == Mode::Approx && (!cli.tolerance.is_finite() || cli.tolerance <= 0.0) {
        return Err(CoreError::InvalidArgument(
            "tolerance must be positive in approximate mode".into(),
        )
        .into());
    }
    let format = cli.format.unwrap_or(Format::Json);
    if format == Format::Csv && cli.mode == Mode::Exact {
        if let Command::Group { cayley: true, .. } = cli.command {
            // the Cayley table is label data, not amplitudes; CSV is fine
        } else {
            return Err(CoreError::InvalidArgument(
                "CSV output carries approximate amplitudes; use --mode approx (or JSON)".into(),
            )
            .into());
        }
    }

    match &cli.command {
        Command::Basis { d, a, r } => cmd_basis(&cli, *d, *a, r.as_deref()),
        Command::Mub { d } => cmd_mub(&cli, *d),
        Command::Pauli { d, a, b } => cmd_pauli(&cli, *d, *a, *b),
        Command::Group { d, cayley } => cmd_group(&cli, *d, *cayley),
        Command::Ring { n } => cmd_ring(&cli, *n),
        Command::Verify { d_max } => cmd_verify(&cli, *d_max),
    }
}

fn emit(cli: &Cli, content: String) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Parses "p/q", an integer, or a finite decimal into an exact rational.
fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Ok(r) = text.parse::<BigRational>() {
        return Some(r);
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", text),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty()
        || frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let denom: String = std::iter::once('1')
        .chain(std::iter::repeat_n('0', frac_part.len()))
        .collect();
    format!("{sign}{int_part}{frac_part}/{denom}")
        .parse::<BigRational>()
        .ok()
}

/// Upper bound on the dimensions the CLI will materialize; the dense exact
/// matrices and bases grow quadratically.
const MAX_CLI_DIM: u64 = 1024;

fn check_dim(d: u64) -> anyhow::Result<()> {
    if d == 0 {
        return Err(CoreError::InvalidOrder.into());
    }
    if d > MAX_CLI_DIM {
        return Err(CoreError::UnsupportedDimension {
            dim: d,
            reason: format!("dimensions above {MAX_CLI_DIM} are not materialized"),
        }
        .into());
    }
    Ok(())
}

/// Rejects exact-mode rationals whose denominator would force an
/// impractically large root-of-unity order.
fn check_denominator(r: &BigRational) -> anyhow::Result<()> {
    use num_traits::ToPrimitive;
    match r.denom().to_u64() {
        Some(s) if s <= 1_000_000 => Ok(()),
        _ => Err(CoreError::InvalidArgument(
            "the denominator of r is too large for exact mode".into(),
        )
        .into()),
    }
}

fn cmd_basis(cli: &Cli, d: u64, a: Option<u64>, r: Option<&str>) -> anyhow::Result<i32> {
    check_dim(d)?;
    if let Some(a) = a {
        if a >= d {
            return Err(
                CoreError::InvalidArgument(format!("a must lie in 0..{d}, got {a}")).into(),
            );
        }
    }
    match (cli.mode, a) {
        (Mode::Exact, None) => {
            if r.is_some() {
                return Err(CoreError::InvalidArgument(
                    "--r only applies to eigenbases; omit it for the computational basis".into(),
                )
                .into());
            }
            emit(cli, to_json(&mub::computational_basis(d))?)?;
        }
        (Mode::Exact, Some(a)) => {
            let r = match r {
                None => BigRational::zero(),
                Some(text) => parse_rational(text).ok_or_else(|| {
                    CoreError::ModeError(format!(
                        "r = {text:?} is not an exact rational; exact mode accepts p/q"
                    ))
                })?,
            };
            check_denominator(&r)?;
            emit(cli, to_json(&mub::eigenbasis(d, a, &r))?)?;
        }
        (Mode::Approx, None) => {
            if r.is_some() {
                return Err(CoreError::InvalidArgument(
                    "--r only applies to eigenbases; omit it for the computational basis".into(),
                )
                .into());
            }
            let approx = mub::computational_basis(d).to_approx();
            emit_approx_basis(cli, &approx)?;
        }
        (Mode::Approx, Some(a)) => {
            let r: f64 = match r {
                None => 0.0,
                Some(text) => text
                    .parse::<f64>()
                    .or_else(|_| {
                        parse_rational(text)
                            .and_then(|q| rational_to_f64(&q))
                            .ok_or(())
                    })
                    .map_err(|_| anyhow!("cannot parse r = {text:?} as a number"))?,
            };
            if !r.is_finite() {
                return Err(CoreError::InvalidArgument("r must be finite".into()).into());
            }
            emit_approx_basis(cli, &mub::eigenbasis_approx(d, a, r))?;
        }
    }
    Ok(0)
}

fn rational_to_f64(q: &BigRational) -> Option<f64> {
    use num_traits::ToPrimitive;
    q.to_f64()
}

fn emit_approx_basis(cli: &Cli, basis: &ApproxBasis) -> anyhow::Result<()> {
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => emit(cli, to_json(basis)?),
        Format::Csv => {
            let mut text = String::from("tag,vector,component,re,im\n");
            for (v, amps) in basis.vectors.iter().enumerate() {
                for (k, amp) in amps.iter().enumerate() {
                    writeln!(text, "{},{v},{k},{},{}", basis.tag, amp.re, amp.im)?;
                }
            }
            emit(cli, text)
        }
    }
}

#[derive(Serialize)]
struct ApproxMubSet<'a> {
    dim: u64,
    mode: &'static str,
    bases: Vec<ApproxBasis>,
    certificate: &'a mub::MubCertificate,
}

fn cmd_mub(cli: &Cli, d: u64) -> anyhow::Result<i32> {
    check_dim(d)?;
    let set: MubSet = if d == 4 {
        mub::mub_set_dim4()
    } else if arith::is_prime(d) {
        mub::mub_set_prime(d)?
    } else {
        return Err(CoreError::UnsupportedDimension {
            dim: d,
            reason: "complete unbiased sets are constructed for prime d and for d = 4; \
                     other dimensions are out of scope"
                .into(),
        }
        .into());
    };
    match (cli.mode, cli.format.unwrap_or(Format::Json)) {
        (Mode::Exact, _) => emit(cli, to_json(&set)?)?,
        (Mode::Approx, Format::Json) => {
            let approx = ApproxMubSet {
                dim: set.dim,
                mode: "approx",
                bases: set.bases.iter().map(Basis::to_approx).collect(),
                certificate: &set.certificate,
            };
            emit(cli, to_json(&approx)?)?;
        }
        (Mode::Approx, Format::Csv) => {
            let mut text = String::from("basis,vector,component,re,im\n");
            for basis in &set.bases {
                let approx = basis.to_approx();
                for (v, amps) in approx.vectors.iter().enumerate() {
                    for (k, amp) in amps.iter().enumerate() {
                        writeln!(text, "{},{v},{k},{},{}", approx.tag, amp.re, amp.im)?;
                    }
                }
            }
            emit(cli, text)?;
        }
    }
    Ok(if set.certificate.pass { 0 } else { 1 })
}

fn cmd_pauli(cli: &Cli, d: u64, a: u64, b: u64) -> anyhow::Result<i32> {
    check_dim(d)?;
    let m = weyl::generalized_pauli(d, PauliLabel::new(d, a, b));
    match (cli.mode, cli.format.unwrap_or(Format::Json)) {
        (Mode::Exact, _) => emit(cli, to_json(&*m)?)?,
        (Mode::Approx, Format::Json) => emit(cli, to_json(&m.to_approx())?)?,
        (Mode::Approx, Format::Csv) => {
            let approx = m.to_approx();
            let mut text = String::from("row,col,re,im\n");
            for i in 0..approx.dim {
                for j in 0..approx.dim {
                    let e = approx.entry(i, j);
                    writeln!(text, "{i},{j},{},{}", e.re, e.im)?;
                }
            }
            emit(cli, text)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct GroupOutput {
    dim: u64,
    order: usize,
    elements: Vec<PauliElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cayley: Option<Vec<Vec<PauliElement>>>,
}

fn element_name(e: &PauliElement) -> String {
    format!("w({};{};{})", e.a, e.b, e.c)
}

fn cmd_group(cli: &Cli, d: u64, cayley: bool) -> anyhow::Result<i32> {
    check_dim(d)?;
    if d > 16 {
        return Err(CoreError::UnsupportedDimension {
            dim: d,
            reason: "group enumeration materializes d^3 matrices; use d <= 16".into(),
        }
        .into());
    }
    if cayley && d > 3 {
        return Err(CoreError::UnsupportedDimension {
            dim: d,
            reason: "the Cayley table export is gated to d <= 3 (d^3 x d^3 entries)".into(),
        }
        .into());
    }
    let elements = pauli_group::enumerate_group(d);
    let table = if cayley {
        Some(pauli_group::cayley_table(d)?)
    } else {
        None
    };
    match (cli.format.unwrap_or(Format::Json), &table) {
        (Format::Csv, Some(table)) => {
            let mut text = String::from("*");
            for y in &elements {
                write!(text, ",{}", element_name(y))?;
            }
            text.push('\n');
            for (x, row) in elements.iter().zip(table) {
                write!(text, "{}", element_name(x))?;
                for p in row {
                    write!(text, ",{}", element_name(p))?;
                }
                text.push('\n');
            }
            emit(cli, text)?;
        }
        _ => {
            let out = GroupOutput {
                dim: d,
                order: elements.len(),
                elements,
                cayley: table,
            };
            emit(cli, to_json(&out)?)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct RingOutput<B: Serialize> {
    sites: u64,
    site_labels: Option<Vec<String>>,
    basis: B,
}

fn cmd_ring(cli: &Cli, n: u64) -> anyhow::Result<i32> {
    check_dim(n)?;
    let ring = RingSpec::new(n)?;
    let orbitals = molecular_orbitals(&ring);
    match (cli.mode, cli.format.unwrap_or(Format::Json)) {
        (Mode::Exact, _) => emit(
            cli,
            to_json(&RingOutput {
                sites: n,
                site_labels: ring.site_labels().map(<[String]>::to_vec),
                basis: orbitals,
            })?,
        )?,
        (Mode::Approx, Format::Json) => {
            let approx = orbitals.to_approx();
            if approx.gram_residual() > cli.tolerance {
                return Err(anyhow!(
                    "orbital Gram residual exceeds tolerance {}",
                    cli.tolerance
                ));
            }
            emit(
                cli,
                to_json(&RingOutput {
                    sites: n,
                    site_labels: ring.site_labels().map(<[String]>::to_vec),
                    basis: approx,
                })?,
            )?;
        }
        (Mode::Approx, Format::Csv) => {
            let approx = orbitals.to_approx();
            let mut text = String::from("orbital,site,re,im\n");
            for (s, amps) in approx.vectors.iter().enumerate() {
                for (site, amp) in amps.iter().enumerate() {
                    writeln!(text, "{s},{site},{},{}", amp.re, amp.im)?;
                }
            }
            emit(cli, text)?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOutput {
    d_max: u64,
    seed: u64,
    passed: bool,
    checks: Vec<verify::CheckReport>,
}

fn cmd_verify(cli: &Cli, d_max: u64) -> anyhow::Result<i32> {
    if d_max == 0 {
        return Err(CoreError::InvalidOrder.into());
    }
    let checks = verify::run_all(d_max, cli.seed);
    let passed = checks.iter().all(|c| c.passed);
    match cli.format {
        Some(Format::Json) => {
            emit(
                cli,
                to_json(&VerifyOutput {
                    d_max,
                    seed: cli.seed,
                    passed,
                    checks,
                })?,
            )?;
        }
        Some(Format::Csv) => {
            return Err(CoreError::InvalidArgument(
                "verify reports as a table or JSON, not CSV".into(),
            )
            .into());
        }
        None => {
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let mut text = String::new();
            for c in &checks {
                writeln!(
                    text,
                    "{:<width$}  {}  {}",
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.details
                )?;
            }
            writeln!(
                text,
                "{:<width$}  {}  {} of {} checks passed",
                "summary",
                if passed { "PASS" } else { "FAIL" },
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            )?;
            emit(cli, text)?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}
