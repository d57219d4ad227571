//! Command-line front end: argument parsing and the subcommands.
//!
//! Exit codes: 0 success, 1 verification failure or infeasible request,
//! 2 usage or input error, 3 runtime error.

mod commands;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "qlp", version, about = "Search and verify quaternary Legendre pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split search for pairs of a given length.
    Search(SearchArgs),
    /// Check pair lines from a file or standard input.
    Verify {
        /// Pair file; `-` or absent reads standard input.
        file: Option<PathBuf>,
    },
    /// List eligible half- and quarter-point PSD pairs and subsums.
    Feasible {
        #[arg(long)]
        length: usize,
    },
    /// Norm products of one sequence with factorizations and verdicts.
    Norms {
        #[arg(long)]
        length: usize,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Exhaustive search for small lengths.
    Brute {
        #[arg(long)]
        length: usize,
    },
    /// The length-30 pair built from quadratic characters mod 61.
    Jp30,
    /// Render a filter report written by `search --report`.
    Stats {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Debug, clap::Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub length: usize,
    /// PSD(A, l/2); every eligible value when absent.
    #[arg(long = "psd-half")]
    pub psd_half: Option<u64>,
    /// Restrict to one subsum assignment (index as listed by `feasible`).
    #[arg(long, requires = "psd_half")]
    pub subsum: Option<usize>,
    /// Stop after this many pairs; 0 searches exhaustively.
    #[arg(long, default_value_t = 0)]
    pub limit: usize,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the filter report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long = "no-t2")]
    pub no_t2: bool,
    #[arg(long = "no-t3")]
    pub no_t3: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = commands::Io { stdin, stdout, stderr };
    let code = commands::dispatch(cli.command, &mut io);
    let _ = io.stdout.flush();
    code
}
