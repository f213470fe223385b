//! Command-line front end.
//!
//! Ring and algebra parameters come from flags; matrices, tensors and
//! quaternions are read as JSON from `--input` or stdin. Results are printed
//! as canonical JSON (sorted keys) to stdout or `--output`.
//!
//! Exit codes: 0 success (or a positive verdict), 1 negative verdict or
//! failed theorem check, 2 invalid configuration or input, 3 the ring is not
//! a field.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{AlgebraParams, Parity};
use crate::biderivations::{
    is_super_biderivation, solve_biderivations, BiderivationSpec, Symmetry,
};
use crate::derivations::{
    inner_decomposition, inner_superderivation, is_superderivation, solve_superderivations,
};
use crate::error::{Error, Result};
use crate::json;
use crate::local::{classify_local, LocalVerdict};
use crate::ring::Ring;
use crate::theorems::{verify_theorems, VerifyOptions};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    Q,
    Fp,
    Zn,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Any,
    Skew,
    Sym,
}

impl From<SymmetryArg> for Symmetry {
    fn from(s: SymmetryArg) -> Symmetry {
        match s {
            SymmetryArg::Any => Symmetry::Any,
            SymmetryArg::Skew => Symmetry::SuperSkew,
            SymmetryArg::Sym => Symmetry::SuperSymmetric,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "quatsuper",
    version,
    about = "Superderivations and super-biderivations of H^{a,b}"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient ring.
    #[arg(long, global = true, value_enum, default_value = "q")]
    pub ring: RingKind,
    /// Prime for `--ring fp`.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Modulus for `--ring zn`.
    #[arg(long, global = true)]
    pub n: Option<u64>,
    /// Parameter a, e.g. "3" or "-1/2".
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Parameter b.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub b: String,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the superderivations of one degree.
    Derivations {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
    },
    /// Check whether a matrix is a superderivation of the given degree.
    CheckDerivation {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Classify a matrix as a local superderivation or not.
    CheckLocal {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Solve for the super-biderivations of one degree and symmetry class.
    Biderivations {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long, value_enum, default_value = "any")]
        symmetry: SymmetryArg,
    },
    /// Check whether a tensor of basis values is a super-biderivation.
    CheckBiderivation {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Matrix of the inner superderivation y -> [x, y]_s.
    Inner {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run every structural check for the given algebra.
    VerifyTheorems {
        /// Random maps per degree in the locality checks.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Emit a JSON report instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

/// Ring and algebra context shared by all subcommands.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub params: AlgebraParams,
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Result<JobConfig> {
        let ring = match cli.ring {
            RingKind::Q => Ring::Rationals,
            RingKind::Fp => Ring::prime_field(
                cli.p
                    .ok_or_else(|| Error::InvalidDescriptor("--ring fp needs --p".into()))?,
            )?,
            RingKind::Zn => Ring::residue_ring(
                cli.n
                    .ok_or_else(|| Error::InvalidDescriptor("--ring zn needs --n".into()))?,
            )?,
        };
        let a = ring.parse(&cli.a)?;
        let b = ring.parse(&cli.b)?;
        Ok(JobConfig {
            params: AlgebraParams::new(ring, a, b)?,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedRing(_) => 3,
        Error::InternalContradiction(_) => 1,
        _ => 2,
    }
}

fn read_input(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    match input {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, stdin) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn render(v: &Value) -> String {
    let mut s = json::to_canonical_string(v);
    s.push('\n');
    s
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(String, i32)> {
    let params = JobConfig::from_cli(cli)?.params;
    let degree = |d: u8| Parity::from_u8(d);
    match &cli.command {
        Command::Derivations { degree: d } => {
            let s = solve_superderivations(&params, degree(*d)?)?;
            Ok((render(&json::derivation_space_to_json(&s)), 0))
        }
        Command::CheckDerivation { degree: d, input } => {
            let m = json::parse_linmap(&params, &read_input(input, stdin)?)?;
            let deg = degree(*d)?;
            let out = match is_superderivation(&m, deg) {
                Ok(()) => (json!({"superderivation": true, "degree": deg.value()}), 0),
                Err(v) => (
                    json!({"superderivation": false, "degree": deg.value(), "violation": v.to_string()}),
                    1,
                ),
            };
            Ok((render(&out.0), out.1))
        }
        Command::CheckLocal { degree: d, input } => {
            let m = json::parse_linmap(&params, &read_input(input, stdin)?)?;
            let verdict = classify_local(&m, degree(*d)?)?;
            let code = match verdict {
                LocalVerdict::IsDerivation(_) => 0,
                LocalVerdict::NotLocal { .. } => 1,
            };
            Ok((render(&json::local_verdict_to_json(&verdict)), code))
        }
        Command::Biderivations {
            degree: d,
            symmetry,
        } => {
            let spec = BiderivationSpec::new(degree(*d)?, (*symmetry).into());
            let s = solve_biderivations(&params, spec)?;
            Ok((render(&json::biderivation_space_to_json(&s)), 0))
        }
        Command::CheckBiderivation { degree: d, input } => {
            let b = json::parse_bilinmap(&params, &read_input(input, stdin)?)?;
            let deg = degree(*d)?;
            let out = match is_super_biderivation(&b, deg) {
                Ok(()) => (
                    json!({"super_biderivation": true, "degree": deg.value()}),
                    0,
                ),
                Err(v) => (
                    json!({"super_biderivation": false, "degree": deg.value(), "violation": v.to_string()}),
                    1,
                ),
            };
            Ok((render(&out.0), out.1))
        }
        Command::Inner { input } => {
            let x = json::parse_quaternion(&params, &read_input(input, stdin)?)?;
            let (even, odd) = inner_decomposition(&x);
            let out = json!({
                "map": json::linmap_to_json(&inner_superderivation(&x)),
                "degree0": json::linmap_to_json(&even),
                "degree1": json::linmap_to_json(&odd),
            });
            Ok((render(&out), 0))
        }
        Command::VerifyTheorems {
            samples,
            seed,
            json: as_json,
        } => {
            let report = verify_theorems(
                &params,
                VerifyOptions {
                    local_samples: *samples,
                    seed: *seed,
                },
            )?;
            let code = if report.all_passed() { 0 } else { 1 };
            let text = if *as_json {
                let checks: Vec<Value> = report
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                render(&json!({
                    "algebra": json::algebra_to_json(&params),
                    "all_passed": report.all_passed(),
                    "checks": checks,
                    "adjudication": json::adjudication_to_json(&report.adjudication),
                }))
            } else {
                let mut lines = format!("algebra: {params}\n");
                for c in &report.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    lines.push_str(&format!("{tag}  {}: {}\n", c.name, c.detail));
                }
                let adj = &report.adjudication;
                lines.push_str(&format!(
                    "x3y3 real-part coefficient: certified {}, displayed -ab = {}, from δ(j,j) = -bλ: {}\n",
                    adj.certified_x3y3, adj.displayed_x3y3, adj.basis_value_x3y3
                ));
                lines.push_str(if report.all_passed() {
                    "all checks passed\n"
                } else {
                    "some checks FAILED\n"
                });
                lines
            };
            Ok((text, code))
        }
    }
}

/// Entry point used by the binary.
pub fn run_from_env() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdin(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}
