//! Command implementations. Each writes its report to `out` and returns
//! whether the command's check passed; errors map to exit code 1.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use qsuperpose::analysis::{resource_report, scan};
use qsuperpose::encoding::{build_indices, build_mapping, AddressMap, Dataset};
use qsuperpose::simulator::{run, MAX_QUBITS};
use qsuperpose::{lower, synthesize, Circuit};

use crate::document::{emit_document, parse_document};
use crate::qasm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Doc,
    Qasm,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Number of basis states in the superposition.
    pub n: u64,
    /// Lower to {H, X, Z, Ry, CNOT, CZ}.
    #[arg(long)]
    pub lower: bool,
    #[arg(long, value_enum, default_value_t = Format::Doc)]
    pub format: Format,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn synth(args: &SynthArgs, out: &mut dyn Write) -> Result<bool> {
    if args.format == Format::Qasm && !args.lower {
        bail!("--format qasm requires --lower");
    }
    let mut circuit = synthesize(args.n)?;
    if args.lower {
        circuit = lower(&circuit).0;
    }
    let text = render(&circuit, args.format)?;
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(true)
}

fn render(circuit: &Circuit, format: Format) -> Result<String> {
    Ok(match format {
        Format::Doc => emit_document(circuit),
        Format::Qasm => qasm::emit(circuit)?,
    })
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub n: u64,
    /// Largest accepted ℓ∞ distance from the ideal state.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    if args.n > 1u64 << MAX_QUBITS {
        bail!("qubit cap exceeded: N = {} needs more than {MAX_QUBITS} qubits", args.n);
    }
    let abs = synthesize(args.n)?;
    let (low, report) = lower(&abs);
    let d_abs = run(&abs)?.uniform_distance(args.n)?;
    let d_low = run(&low)?.uniform_distance(args.n)?;
    let pass = d_abs <= args.tolerance && d_low <= args.tolerance;
    writeln!(out, "N = {}  qubits = {}  entanglers = {}", args.n, low.n_qubits(), report.entanglers_emitted)?;
    writeln!(out, "abstract distance: {d_abs:.3e}")?;
    writeln!(out, "lowered distance:  {d_low:.3e}")?;
    writeln!(out, "{} (tolerance {:e})", if pass { "PASS" } else { "FAIL" }, args.tolerance)?;
    Ok(pass)
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub n: u64,
}

pub fn count(args: &CountArgs, out: &mut dyn Write) -> Result<bool> {
    let r = resource_report(args.n)?;
    writeln!(out, "N      {}", r.n_states)?;
    writeln!(out, "n      {}", r.n_qubits)?;
    writeln!(out, "g      {}", r.g)?;
    writeln!(out, "m      {}", r.m)?;
    writeln!(out, "cnot   {}", r.cnot_count)?;
    match r.case {
        Some(case) => writeln!(out, "case   {case} (bound {})", case.bound_expr())?,
        None => writeln!(out, "case   -")?,
    }
    writeln!(out, "depth  {}", r.depth)?;
    Ok(true)
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Largest register width to enumerate (2..=20).
    #[arg(long)]
    pub n_max: u32,
    /// Per-N CSV output (`N,n,xi,M,g,m,cnot,case`).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Per-n CSV output (`n,max,mean`).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

pub fn scan_cmd(args: &ScanArgs, out: &mut dyn Write) -> Result<bool> {
    let result = scan(args.n_max)?;
    if let Some(path) = &args.csv {
        let mut buf = Vec::new();
        result.write_rows_csv(&mut buf)?;
        write_file(path, &buf)?;
    }
    match &args.summary {
        Some(path) => {
            let mut buf = Vec::new();
            result.write_summary_csv(&mut buf)?;
            write_file(path, &buf)?;
        }
        None => result.write_summary_csv(&mut *out)?,
    }
    if let Some(fit) = result.mean_fit(3..=args.n_max) {
        writeln!(out, "# mean fit over n >= 3: {:.4} n {:+.4}", fit.slope, fit.intercept)?;
    }
    Ok(true)
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Newline-delimited record file.
    pub dataset: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub mapping_out: PathBuf,
    #[arg(long)]
    pub circuit_out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Qasm)]
    pub circuit_format: Format,
}

pub fn encode(args: &EncodeArgs, out: &mut dyn Write) -> Result<bool> {
    let bytes = fs::read(&args.dataset).with_context(|| format!("reading {}", args.dataset.display()))?;
    let dataset = Dataset::from_lines(&bytes).with_context(|| format!("loading {}", args.dataset.display()))?;
    let n_states = dataset.len();
    let (width, _) = build_indices(n_states)?;
    let map = build_mapping(&dataset, args.seed);
    let (circuit, report) = lower(&synthesize(n_states as u64)?);
    write_file(&args.mapping_out, map.to_document())?;
    write_file(&args.circuit_out, &render(&circuit, args.circuit_format)?)?;
    writeln!(out, "N = {n_states}")?;
    writeln!(out, "n = {width}")?;
    writeln!(out, "cnot = {}", report.entanglers_emitted)?;
    writeln!(out, "seed = {}", args.seed)?;
    Ok(true)
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    /// Mapping document written by `encode`.
    pub mapping: PathBuf,
    /// Bit string to resolve to a record address.
    #[arg(required_unless_present = "address", conflicts_with = "address")]
    pub bits: Option<String>,
    /// Record address to map back to its bit string.
    #[arg(long)]
    pub address: Option<usize>,
}

pub fn resolve(args: &ResolveArgs, out: &mut dyn Write) -> Result<bool> {
    let text = fs::read_to_string(&args.mapping).with_context(|| format!("reading {}", args.mapping.display()))?;
    let map = AddressMap::from_document(&text)?;
    match (&args.bits, args.address) {
        (Some(bits), _) => writeln!(out, "{}", map.resolve(bits)?)?,
        (None, Some(addr)) => writeln!(out, "{}", map.inverse(addr)?)?,
        (None, None) => bail!("give a bit string or --address"),
    }
    Ok(true)
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// A `.qasm` file or a circuit document.
    pub path: PathBuf,
    /// Also simulate and compare against the uniform superposition over N states.
    #[arg(long)]
    pub expect: Option<u64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
}

pub fn inspect(args: &InspectArgs, out: &mut dyn Write) -> Result<bool> {
    let circuit = load_circuit(&args.path)?;
    writeln!(out, "qubits      {}", circuit.n_qubits())?;
    writeln!(out, "level       {}", circuit.level())?;
    writeln!(out, "gates       {}", circuit.len())?;
    writeln!(out, "entanglers  {}", circuit.entangler_count())?;
    writeln!(out, "depth       {}", circuit.depth())?;
    for (kind, n) in circuit.gate_histogram() {
        writeln!(out, "  {kind:<8}{n}")?;
    }
    let Some(n_states) = args.expect else {
        return Ok(true);
    };
    let d = run(&circuit)?.uniform_distance(n_states)?;
    let pass = d <= args.tolerance;
    writeln!(out, "distance    {d:.3e}")?;
    writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
    Ok(pass)
}

/// Reads a circuit, choosing the parser by content.
pub fn load_circuit(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let circuit = if text.trim_start().starts_with('{') {
        parse_document(&text)?
    } else {
        qasm::parse(&text)?
    };
    Ok(circuit)
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
