mod cache;
mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hallcount", version, about = "Exact point counts for quiver moduli, Hall algebra checks and generating series")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArgs {
    /// Quiver file (text or JSON), or a built-in name such as K4, A3, D5.
    #[arg(long)]
    pub quiver: String,
    /// Stability weight; defaults to the file's, else zero.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub sigma: Option<Vec<i64>>,
    /// Slope denominator; defaults to the file's, else all ones.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub theta: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point count of the semistable moduli space.
    Moduli {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, num_args = 1.., required = true)]
        alpha: Vec<u32>,
    },
    /// Point count of the Grassmannian of subrepresentations over the moduli space.
    Grass {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, num_args = 1.., required = true)]
        alpha: Vec<u32>,
        #[arg(long, num_args = 1.., required = true)]
        gamma: Vec<u32>,
        /// Cross-check against the transfer-matrix evaluation.
        #[arg(long)]
        transfer: bool,
    },
    /// Point count of a flag variety; parts are listed innermost first, e.g. `--part 1,0 --part 0,1`.
    Flag {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long = "part", required = true, value_parser = parse_part)]
        parts: Vec<Vec<u32>>,
    },
    /// Quantum cluster variable of the stable rigid representation of dimension alpha.
    ClusterVar {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, num_args = 1.., required = true)]
        alpha: Vec<u32>,
        /// Also check the multiplication formula on pairs of simples over F_p.
        #[arg(long, value_name = "P")]
        verify: Option<u32>,
    },
    /// Tables of r, a and m for one slope.
    Series {
        #[command(flatten)]
        q: QuiverArgs,
        /// Slope value, e.g. 0 or -1/2.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        mu0: String,
        #[arg(long, default_value_t = 6)]
        truncation: u32,
    },
    /// Quantum dilogarithm identity of a Dynkin quiver.
    Dilog {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 6)]
        truncation: i64,
    },
    /// Compare every formula against brute-force enumeration.
    Verify {
        #[command(flatten)]
        q: QuiverArgs,
        /// Field sizes (primes).
        #[arg(long = "q", num_args = 1.., default_values_t = [2u32])]
        fields: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        max_dim: u32,
    },
}

fn parse_part(s: &str) -> Result<Vec<u32>, String> {
    s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse::<u32>().map_err(|e| format!("'{t}': {e}"))).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(&cli.command, cli.format, !cli.no_cache) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
