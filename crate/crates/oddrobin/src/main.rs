//! Command-line front end.
//!
//! Exit codes: 0 every check holds (equality at n = 315 counts as holding),
//! 1 at least one check fails, 2 at least one check stays undecided after
//! the precision ladder, 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use oddrobin::report::{
    cmd_ca_list, cmd_constants, cmd_lemma, cmd_primorial_sweep, cmd_scan, cmd_verify_all, Format,
    RunConfig,
};
use oddrobin::Error;

#[derive(Parser)]
#[command(
    name = "oddrobin",
    version,
    about = "Certified verification of a sharp σ(n)/n bound over the odd integers",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Starting mantissa precision in bits.
    #[arg(long, global = true, default_value_t = 128, value_parser = parse_precision)]
    precision: u32,

    /// Disable the automatic retry at 256 and 512 bits.
    #[arg(long, global = true)]
    no_ladder: bool,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Fan the scan and the case sweeps out over worker threads.
    #[arg(long, global = true)]
    parallel: bool,

    /// Inclusive sieve bound (scan ranges and sweep primes must fit).
    #[arg(long, global = true, default_value_t = 100_000)]
    sieve_limit: u64,

    /// UNSOUND: replace the equality constant with a decimal value.
    /// Exists solely for negative testing; the report is marked unsound.
    #[arg(long, global = true, hide = true, value_name = "DECIMAL")]
    unsound_c: Option<String>,
}

fn parse_precision(s: &str) -> Result<u32, String> {
    let v: u32 = s.parse().map_err(|_| format!("invalid precision '{s}'"))?;
    if [64, 128, 256, 512].contains(&v) {
        Ok(v)
    } else {
        Err(format!("precision must be 64, 128, 256 or 512, got {v}"))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the complete verification pipeline.
    Verify {
        /// What to verify; only "all" is defined.
        #[arg(value_parser = ["all"])]
        target: String,
    },
    /// Check the main bound for every odd n in a range.
    Scan {
        #[arg(long, default_value_t = 3)]
        from: u64,
        #[arg(long, default_value_t = 45_045)]
        to: u64,
    },
    /// Odd colossally abundant numbers.
    Ca {
        #[command(subcommand)]
        command: CaCmd,
    },
    /// Sweep the odd-primorial bound over an index range.
    PrimorialSweep {
        #[arg(long, default_value_t = 54)]
        from: usize,
        /// Defaults to the index of the first prime at or above 20000.
        #[arg(long)]
        to: Option<usize>,
    },
    /// Verify one supporting lemma instance.
    Lemma {
        #[arg(long, value_parser = ["2.2", "2.4", "thm3.1"])]
        name: String,
        /// Prime at which to instantiate the lemma (defaults per lemma).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print the certified constants table.
    Constants,
}

#[derive(Subcommand)]
enum CaCmd {
    /// Generate the first `count` numbers of the sequence.
    List {
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = RunConfig {
        precision: cli.precision,
        ladder_enabled: !cli.no_ladder,
        parallel: cli.parallel,
        sieve_limit: cli.sieve_limit,
        format: cli.format.into(),
        out: cli.out,
        unsound_c: cli.unsound_c,
    };
    let report = match &cli.command {
        Cmd::Verify { target } => {
            debug_assert_eq!(target, "all");
            cmd_verify_all(&config)
        }
        Cmd::Scan { from, to } => cmd_scan(&config, *from, *to),
        Cmd::Ca {
            command: CaCmd::List { count },
        } => cmd_ca_list(&config, *count),
        Cmd::PrimorialSweep { from, to } => cmd_primorial_sweep(&config, *from, *to),
        Cmd::Lemma { name, prime } => cmd_lemma(&config, name, *prime),
        Cmd::Constants => cmd_constants(&config),
    };
    match report {
        Ok(report) => match report.emit(&config) {
            Ok(()) => ExitCode::from(report.exit_code() as u8),
            Err(e) => {
                eprintln!("oddrobin: {e}");
                ExitCode::from(74) // EX_IOERR
            }
        },
        Err(e @ (Error::Usage(_) | Error::Domain(_))) => {
            eprintln!("oddrobin: {e}");
            ExitCode::from(64)
        }
        Err(e) => {
            eprintln!("oddrobin: {e}");
            ExitCode::from(70) // EX_SOFTWARE
        }
    }
}
