//! `danielewski`: command-line access to the library. Every command prints a
//! `key: value` report whose first line is the headline.
//!
//! Exit codes: 0 on success, 1 on unparsable input, 2 on domain errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use danielewski::Error;

#[derive(Parser, Debug)]
#[command(name = "danielewski", version, about = "Surfaces c(x)z = q(x,y): automorphisms, derivations, isotropy")]
struct Cli {
    /// Print only the headline line.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write the full report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Surface {
    /// c(x), of degree at least 2.
    #[arg(long)]
    pub c: String,
    /// q(x, y), quasi-monic of y-degree at least 2.
    #[arg(long)]
    pub q: String,
}

/// Automorphism `x -> e*x, y -> u*y + c*ell` on the reduced presentation.
#[derive(Args, Debug, Clone)]
pub struct Triple {
    #[arg(long, allow_hyphen_values = true)]
    pub e: String,
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub ell: String,
}

/// A derivation, by its images or by `g=..;a=..;b=..` for `dx = g`, `dy = a*y + b`.
#[derive(Args, Debug, Clone)]
pub struct DerivationInput {
    #[arg(long, allow_hyphen_values = true, requires_all = ["dy", "dz"], conflicts_with = "shape")]
    pub dx: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["dx", "dz"])]
    pub dy: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires_all = ["dx", "dy"])]
    pub dz: Option<String>,
    #[arg(long, required_unless_present = "dx")]
    pub shape: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Comma-separated nonzero values for the free torus directions.
    #[arg(long, default_value = "2,3,1/2,-1", allow_hyphen_values = true)]
    pub torus_values: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bring (c, q) to reduced form and print the substitution used.
    Reduce {
        #[command(flatten)]
        surface: Surface,
    },
    /// The diagonal group G of (e, u) pairs.
    Group {
        #[command(flatten)]
        surface: Surface,
        /// Largest root-of-unity order listed along free directions.
        #[arg(long, default_value_t = 4)]
        torsion_bound: u32,
    },
    /// Images of the generators under an automorphism.
    Autos {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        triple: Triple,
    },
    /// Split an automorphism as exp(ell' xi) composed with phi(e, u).
    Factor {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        triple: Triple,
    },
    /// Check the Leibniz rule against the defining relation.
    DerivationCheck {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
    },
    /// Whether the derivation is ell(x)*xi.
    Lnd {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
    },
    /// Smallest k with c^k * (dx, dy) free of z.
    ClearZ {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
    },
    /// Structure of the automorphisms commuting with the derivation.
    Isotropy {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// The isotropy element above (e, u), if any.
    Member {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Brute-force membership scan, compared with the isotropy structure.
    Oracle {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        derivation: DerivationInput,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 12)]
        torsion_bound: u32,
        /// Degrees of ell searched beyond the bound.
        #[arg(long, default_value_t = 0)]
        degree_slack: usize,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = danielewski::selftest::DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=9))]
        only: Vec<u8>,
    },
}

pub enum Failure {
    Parse(String),
    Domain(Error),
    /// Ran fine, but the report says something failed.
    Unsuccessful(report::Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

fn dispatch(cmd: Command) -> Result<report::Report, Failure> {
    use commands as c;
    match cmd {
        Command::Reduce { surface } => c::reduce(&surface),
        Command::Group { surface, torsion_bound } => c::group(&surface, torsion_bound),
        Command::Autos { surface, triple } => c::autos(&surface, &triple),
        Command::Factor { surface, triple } => c::factor(&surface, &triple),
        Command::DerivationCheck { surface, derivation } => c::derivation_check(&surface, &derivation),
        Command::Lnd { surface, derivation } => c::lnd(&surface, &derivation),
        Command::ClearZ { surface, derivation } => c::clear_z(&surface, &derivation),
        Command::Isotropy { surface, derivation, sampling } => c::isotropy(&surface, &derivation, &sampling),
        Command::Member { surface, derivation, e, u } => c::member(&surface, &derivation, &e, &u),
        Command::Oracle {
            surface,
            derivation,
            sampling,
            torsion_bound,
            degree_slack,
        } => c::oracle(&surface, &derivation, &sampling, torsion_bound, degree_slack),
        Command::Selftest { seed, only } => c::selftest(seed, &only),
    }
}

fn emit(cli_quiet: bool, output: &Option<PathBuf>, rep: &report::Report) -> Result<(), String> {
    if let Some(path) = output {
        std::fs::write(path, rep.to_string()).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        println!("{}", rep.headline());
    } else if cli_quiet {
        println!("{}", rep.headline());
    } else {
        print!("{rep}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (rep, code) = match dispatch(cli.command) {
        Ok(rep) => (rep, 0),
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Domain(e)) => {
            let mut rep = report::Report::new();
            rep.push("error", e.name()).push("message", &e);
            (rep, 2)
        }
        Err(Failure::Unsuccessful(rep)) => (rep, 2),
    };
    if let Err(msg) = emit(cli.quiet, &cli.output, &rep) {
        eprintln!("{msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
