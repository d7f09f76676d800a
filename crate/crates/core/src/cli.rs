//! Command-line front end.
//!
//! Verdicts (condition holds/fails, solvable/unsolvable, PASS/FAIL) are
//! written to stdout with exit code 0. Exit code 2 means the command could
//! not be run: bad flags, or inputs outside an operation's domain.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atlas::{atlas_records, render_json, render_markdown, AtlasFilter, AtlasOptions, Parity};
use crate::conditions::{case_pattern, crabb_cp_system, crabb_hp_system, sigrist_suter, valuation_vector};
use crate::dyadic::nu_binomial;
use crate::series::{lambda_series, log_over_t_series, DEFAULT_ORDER};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cpimm", version, about = "Exact arithmetic for immersions of complex projective space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of a power of lambda(T) or log(1+t)/t
    Series {
        #[arg(long, value_enum)]
        which: WhichSeries,
        #[arg(long, default_value_t = 1)]
        power: u64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Sigrist–Suter condition for CP^n
    Sigs {
        #[arg(long)]
        n: u64,
    },
    /// Crabb's congruence systems
    Crabb {
        #[command(subcommand)]
        system: CrabbCommand,
    },
    /// 2-adic valuation of the binomial coefficient C(top, k)
    Binom {
        #[arg(long, allow_negative_numbers = true)]
        top: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Valuation vector of (log(1+t)/t)^m through t^8
    Vvec {
        #[arg(long)]
        m: u64,
        /// Also check the case pattern for m
        #[arg(long)]
        pattern: bool,
    },
    /// Immersion/nonimmersion records for a range of n
    Atlas(AtlasArgs),
    /// Batch verification over a range
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichSeries {
    Lambda,
    Log,
}

#[derive(Debug, Subcommand)]
pub enum CrabbCommand {
    /// Conditions on lambda^(8p) through T^3
    Cp {
        #[arg(long)]
        p: u64,
    },
    /// Conditions on lambda^(4K-1) through T^2
    Hp {
        #[arg(long = "K")]
        k: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct AtlasArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,
    /// Keep n ≡ residue (mod modulus); requires --modulus
    #[arg(long, requires = "modulus")]
    residue: Option<u64>,
    #[arg(long, requires = "residue")]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Fill in e for alpha(n) > 8, where the tables leave it blank
    #[arg(long)]
    derive_e_above_8: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Parse `args` (including the program name) and run the command, writing
/// the result document to `out` and diagnostics to `err`.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(cli.command) {
        Ok(doc) => {
            let _ = out.write_all(doc.as_bytes());
            EXIT_OK
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn run(command: Command) -> Result<String, String> {
    let doc = match command {
        Command::Series { which, power, order } => {
            let base = match which {
                WhichSeries::Lambda => lambda_series(order),
                WhichSeries::Log => log_over_t_series(order),
            };
            format!("{}\n", base.pow_trunc(power))
        }
        Command::Sigs { n } => format!("{}\n", sigrist_suter(n).map_err(|e| e.to_string())?),
        Command::Crabb { system } => {
            let sys = match system {
                CrabbCommand::Cp { p } => crabb_cp_system(p),
                CrabbCommand::Hp { k } => crabb_hp_system(k),
            }
            .map_err(|e| e.to_string())?;
            format!("{sys}\n")
        }
        Command::Binom { top, k } => format!("{}\n", nu_binomial(top, k).map_err(|e| e.to_string())?),
        Command::Vvec { m, pattern } => {
            let v = valuation_vector(m).map_err(|e| e.to_string())?;
            let vals: Vec<String> = v.iter().map(ToString::to_string).collect();
            let mut doc = format!("v({m}) = ({})\n", vals.join(", "));
            if pattern {
                match case_pattern(m).map_err(|e| e.to_string())? {
                    Some(p) => {
                        let verdict = if p.matches(&v) { "matches" } else { "does not match" };
                        doc.push_str(&format!("pattern {p}\n{verdict}\n"));
                    }
                    None => doc.push_str("no pattern applies (nu(m) is 1 or 2)\n"),
                }
            }
            doc
        }
        Command::Atlas(a) => {
            let filter = AtlasFilter {
                alpha: a.alpha,
                parity: a.parity.map(|p| match p {
                    ParityArg::Even => Parity::Even,
                    ParityArg::Odd => Parity::Odd,
                }),
                congruence: a.residue.zip(a.modulus),
            };
            let opts = AtlasOptions {
                derive_e_above_8: a.derive_e_above_8,
            };
            let records = atlas_records(a.from, a.to, &filter, opts).map_err(|e| e.to_string())?;
            match a.format {
                Format::Json => render_json(&records),
                Format::Md => render_markdown(&records),
            }
        }
        Command::Verify { suite, bound } => format!("{}\n", verify::run(suite, bound)),
    };
    Ok(doc)
}
