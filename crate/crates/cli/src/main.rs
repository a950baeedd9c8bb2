//! Command-line front end: normal forms, membership certificates, the
//! Grassmann embedding, nilpotency indices, primality witnesses, and the
//! theorem-verification suites, with text or JSON reports.
//!
//! Exit codes: 0 = verified/true, 1 = falsified/exhausted, 2 = usage or
//! internal error.

mod commands;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "diffnil", version, about = "Exact oracles for differential nilalgebras")]
struct Cli {
    /// Quotient exponent m of the ideal [x^m].
    #[arg(long, global = true, default_value_t = 2)]
    m: u32,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on intermediate term counts; exceeding it aborts with exit 2.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: usize,

    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a polynomial modulo [x^m], plus membership.
    Reduce { poly: String },
    /// Ideal membership with a re-expandable certificate.
    Member { poly: String },
    /// Image under the Grassmann embedding.
    Embed { poly: String },
    /// Minimal N with f^N in the ideal.
    Nilindex {
        poly: String,
        /// Search cap; defaults to the derived bound where one exists.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Search for a primality witness.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Cap on the derivative order k.
        #[arg(long, default_value_t = 10)]
        cap: u32,
        /// Cap on the candidate scan x_j (operator witnesses only).
        #[arg(long, default_value_t = 12)]
        c_cap: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// Minimal powers of the derivatives x_i in the ideal, by two
    /// independent oracles.
    Ritt {
        #[arg(long, default_value_t = 3)]
        max_i: u32,
    },
    /// Embedding ranks equal basis counts on every component.
    Injectivity {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// Component dimensions equal basis-monomial counts.
    Basis {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// The derivation has zero kernel on every component.
    Constants {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 10)]
        max_weight: u32,
    },
    /// Random elements of the quotient are nilpotent within the bound.
    Nilpotent {
        #[arg(long, default_value_t = 50)]
        samples: u32,
    },
    /// Random operators are nilpotent within the bound.
    OperatorNil {
        #[arg(long, default_value_t = 50)]
        samples: u32,
    },
    /// Witness matrices are triangular with nonzero diagonal.
    Triangular {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessKind {
    Element,
    Operator,
}

fn dispatch(cli: &Cli) -> diffnil::Result<(Report, i32)> {
    let m = cli.m;
    match &cli.command {
        Command::Reduce { poly } => commands::cmd_reduce(m, poly),
        Command::Member { poly } => commands::cmd_member(m, poly),
        Command::Embed { poly } => commands::cmd_embed(m, poly),
        Command::Nilindex { poly, cap } => commands::cmd_nilindex(m, poly, *cap),
        Command::Verify { suite } => match suite {
            Suite::Ritt { max_i } => commands::verify_ritt(m, *max_i),
            Suite::Injectivity { max_degree, max_weight } => {
                commands::verify_injectivity(m, *max_degree, *max_weight)
            }
            Suite::Basis { max_degree, max_weight } => {
                commands::verify_basis(m, *max_degree, *max_weight)
            }
            Suite::Constants { max_degree, max_weight } => {
                commands::verify_constants(m, *max_degree, *max_weight)
            }
            Suite::Nilpotent { samples } => commands::verify_nilpotent(m, *samples, cli.seed),
            Suite::OperatorNil { samples } => {
                commands::verify_operator_nil(m, *samples, cli.seed)
            }
            Suite::Triangular { max_degree, max_weight } => {
                commands::verify_triangular(m, *max_degree, *max_weight)
            }
        },
        Command::Witness { kind, a, b, cap, c_cap } => match kind {
            WitnessKind::Element => commands::cmd_witness_element(a, b, *cap),
            WitnessKind::Operator => commands::cmd_witness_operator(a, b, *cap, *c_cap),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    diffnil::limits::set_max_terms(Some(cli.max_terms));
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| dispatch(&cli));
    let exit = match outcome {
        Ok(Ok((mut report, code))) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            if let Err(err) = report.emit(cli.format, cli.out.as_deref()) {
                eprintln!("error: failed to write report: {err}");
                std::process::exit(2);
            }
            code
        }
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            2
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            if message.contains(diffnil::limits::TERM_CAP_MESSAGE) {
                eprintln!("error: {message}; raise --max-terms to continue");
            } else {
                eprintln!("internal error: {message}");
            }
            2
        }
    };
    std::process::exit(exit);
}
