use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::process::ExitCode;
use tollbooth::rational::parse_nonnegative;
use tollbooth_cli::{
    cmd_gen_partition, cmd_gen_random, cmd_gen_vc, cmd_oracle, cmd_optflow, cmd_solve, cmd_verify, parse_target, CmdResult,
    SolveFlags, EXIT_PARSE,
};

#[derive(Parser)]
#[command(name = "mintb", version, about = "Minimum-support optimal tolls on series-parallel networks")]
struct Cli {
    /// Print per-node edge-length lists (solve only).
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Suppress the run report on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-support tolls enforcing the instance's optimal flow.
    Solve {
        /// Instance file, `-` for stdin.
        input: String,
        /// Ignore any flow annotation and compute the optimum.
        #[arg(long)]
        compute_optimum: bool,
        /// Induce this length instead of the longest used path length.
        #[arg(long, value_name = "P/Q")]
        induce: Option<String>,
    },
    /// Check whether a toll file enforces the instance's flow.
    Verify {
        input: String,
        tolls: String,
        #[arg(long)]
        compute_optimum: bool,
    },
    /// Exhaustive search for small instances.
    Oracle {
        input: String,
        #[arg(long)]
        max_support: Option<usize>,
        /// `p/q`, `inf` or `free`.
        #[arg(long, default_value = "free")]
        target_length: String,
        #[arg(long)]
        compute_optimum: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exact social optimum (or equilibrium) flow.
    Optflow {
        input: String,
        #[arg(long)]
        equilibrium: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Vertex-cover gadget from an edge-list file.
    Vc {
        #[arg(long)]
        graph: String,
    },
    /// Partition gadget from a comma-separated multiset.
    Partition {
        #[arg(long)]
        set: String,
    },
    /// Random series-parallel instance with its optimal flow.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 5)]
        coeff_bound: u32,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn dispatch(cli: &Cli) -> Result<CmdResult> {
    let Format::Text = cli.format;
    Ok(match &cli.command {
        Command::Solve { input, compute_optimum, induce } => {
            let induce = induce.as_deref().map(parse_nonnegative).transpose().map_err(|e| anyhow!("--induce: {}", e.0))?;
            let flags = SolveFlags { compute_optimum: *compute_optimum, induce, trace: cli.trace };
            cmd_solve(&read_input(input)?, &flags)
        }
        Command::Verify { input, tolls, compute_optimum } => {
            cmd_verify(&read_input(input)?, &read_input(tolls)?, *compute_optimum)
        }
        Command::Oracle { input, max_support, target_length, compute_optimum } => {
            let target = parse_target(target_length).context("--target-length")?;
            cmd_oracle(&read_input(input)?, *max_support, &target, *compute_optimum)
        }
        Command::Gen { kind } => match kind {
            GenKind::Vc { graph } => cmd_gen_vc(&read_input(graph)?),
            GenKind::Partition { set } => cmd_gen_partition(set),
            GenKind::Random { seed, edges, coeff_bound } => cmd_gen_random(*seed, *edges, *coeff_bound),
        },
        Command::Optflow { input, equilibrium } => cmd_optflow(&read_input(input)?, *equilibrium),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_PARSE as u8)
        }
        Ok(Err(failure)) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code as u8)
        }
        Ok(Ok(out)) => {
            print!("{}", out.stdout);
            if !cli.quiet {
                eprintln!("{}", out.report);
            }
            ExitCode::from(out.code as u8)
        }
    }
}
