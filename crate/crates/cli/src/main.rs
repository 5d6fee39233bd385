use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::{CliError, Report};

#[derive(Parser)]
#[command(name = "qweyl", version, about = "Global irreducibility of quantum Weyl modules at roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Root system, e.g. `E8`, or a bare letter together with --rank.
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args)]
struct Output {
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide global irreducibility of Δ(λ); print the witness if reducible.
    Classify {
        #[command(flatten)]
        system: SystemArgs,
        /// `w1+2w3`, `0,1,0` or `0`.
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        out: Output,
    },
    /// Replay the reduction trace for λ, or for ω_node, with every check shown.
    Witness {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, required_unless_present = "node", conflicts_with = "node")]
        weight: Option<String>,
        /// Fundamental weight ω_node, 1-based.
        #[arg(long)]
        node: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// The determinant of D over the simple short roots and where it vanishes.
    DetShort {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: Option<u64>,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
        max_ell: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Irreducibility of Δ(λ) for quantum sl2 at order ℓ.
    Sl2 {
        #[arg(long)]
        lambda: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
        #[command(flatten)]
        out: Output,
    },
    /// The Gaussian binomial [n, m], optionally tested for vanishing.
    Qbinom {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
        twist: u32,
        #[command(flatten)]
        out: Output,
    },
    /// det D and its vanishing orders for every type up to --max-rank.
    #[command(name = "table-theorem5-1")]
    DetTable {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=16))]
        max_rank: u64,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
        max_ell: u64,
        #[command(flatten)]
        out: Output,
    },
    /// The ω₁+ω_n configurations of the path-shaped diagrams, replayed.
    Endnodes {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=16))]
        max_rank: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Build and check the E8 determinant certificate.
    E8Certificate {
        #[command(flatten)]
        out: Output,
    },
    /// Run every acceptance criterion; nonzero exit on any failure.
    VerifyPaper {
        /// Run only these criteria.
        #[arg(long = "only", value_parser = clap::value_parser!(u8).range(1..=9))]
        only: Vec<u8>,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn run(command: Command) -> Result<(Report, bool), CliError> {
    Ok(match command {
        Command::Classify { system, weight, out } => {
            (commands::classify(&system.kind, system.rank, &weight)?, out.json)
        }
        Command::Witness {
            system,
            weight,
            node,
            out,
        } => (
            commands::witness(&system.kind, system.rank, weight.as_deref(), node)?,
            out.json,
        ),
        Command::DetShort {
            system,
            ell,
            max_ell,
            out,
        } => (commands::det_short(&system.kind, system.rank, ell, max_ell)?, out.json),
        Command::Sl2 { lambda, ell, out } => (commands::sl2(lambda, ell)?, out.json),
        Command::Qbinom {
            n,
            m,
            ell,
            twist,
            out,
        } => (commands::qbinom(n, m, ell, twist)?, out.json),
        Command::DetTable { max_rank, max_ell, out } => {
            (commands::det_table(max_rank as usize, max_ell)?, out.json)
        }
        Command::Endnodes { max_rank, out } => (commands::endnodes(max_rank as usize)?, out.json),
        Command::E8Certificate { out } => (commands::e8_certificate()?, out.json),
        Command::VerifyPaper { only, sequential, out } => (commands::verify(&only, sequential)?, out.json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, json)) => {
            let mut stdout = io::stdout().lock();
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"))
            } else {
                stdout.write_all(report.text.as_bytes())
            };
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
