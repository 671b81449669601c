//! Command-line surface for `qsuperpose`, plus the circuit file formats:
//! a lossless JSON document ([`document`]) and an OpenQASM 2.0 subset
//! ([`qasm`]).
//!
//! Exit codes: 0 success, 1 invalid input or I/O failure, 2 a verification
//! that ran but did not pass.

pub mod commands;
pub mod document;
pub mod qasm;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qsuperpose", version, about = "Uniform-superposition circuit synthesis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize the circuit for N states.
    Synth(commands::SynthArgs),
    /// Simulate abstract and lowered circuits and compare to the ideal state.
    Verify(commands::VerifyArgs),
    /// Closed-form CNOT count, case and lowered depth for N.
    Count(commands::CountArgs),
    /// CNOT counts for every N up to 2^n-max, as CSV.
    Scan(commands::ScanArgs),
    /// Map a record file onto basis indices and emit the preparing circuit.
    Encode(commands::EncodeArgs),
    /// Look up a bit string or address in a mapping document.
    Resolve(commands::ResolveArgs),
    /// Load a QASM file or circuit document and report on it.
    Inspect(commands::InspectArgs),
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Synth(a) => commands::synth(a, out),
        Command::Verify(a) => commands::verify(a, out),
        Command::Count(a) => commands::count(a, out),
        Command::Scan(a) => commands::scan_cmd(a, out),
        Command::Encode(a) => commands::encode(a, out),
        Command::Resolve(a) => commands::resolve(a, out),
        Command::Inspect(a) => commands::inspect(a, out),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}
