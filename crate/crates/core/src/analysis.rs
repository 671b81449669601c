//! Closed-form CNOT accounting, the five-case taxonomy of `N`, and the
//! per-register-width scan of CNOT counts.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::lowering::lower;
use crate::synthesis::{plan, SynthesisError, SynthesisPlan};

/// Widest register the scan enumerates.
pub const SCAN_MAX_QUBITS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error("classification needs N >= 2, got {0}")]
    TooSmall(u64),
    #[error("scan width must lie in 2..={SCAN_MAX_QUBITS}, got {0}")]
    ScanRange(u32),
}

/// Which of the five structural cases `N` falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    /// Power of two: Hadamards only, no CNOTs.
    I,
    /// Odd with Hamming weight 2 (`N = 2^{n-1} + 1`): `n − 1` CNOTs.
    II,
    /// All ones (`N = 2^n − 1`): `2n − 3` CNOTs, the worst case.
    III,
    /// Any other odd `N`: at most `2n − 4`.
    IV,
    /// Even, not a power of two: at most `2n − 5`.
    V,
}

impl CaseLabel {
    pub fn roman(self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::V => "V",
        }
    }

    /// The bound as printed, e.g. `2n-3` or `<=2n-5`.
    pub fn bound_expr(self) -> &'static str {
        match self {
            CaseLabel::I => "0",
            CaseLabel::II => "n-1",
            CaseLabel::III => "2n-3",
            CaseLabel::IV => "<=2n-4",
            CaseLabel::V => "<=2n-5",
        }
    }

    /// Numeric bound for an `n`-qubit register.
    pub fn bound(self, n: u32) -> i64 {
        let n = n as i64;
        match self {
            CaseLabel::I => 0,
            CaseLabel::II => n - 1,
            CaseLabel::III => 2 * n - 3,
            CaseLabel::IV => 2 * n - 4,
            CaseLabel::V => 2 * n - 5,
        }
    }

    /// Whether the bound is attained with equality by every member.
    pub fn is_exact(self) -> bool {
        matches!(self, CaseLabel::I | CaseLabel::II | CaseLabel::III)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

/// `g + m − 3` for `g ≥ 2`, 0 otherwise.
pub fn cnot_count(n_states: u64) -> Result<usize, AnalysisError> {
    Ok(plan(n_states)?.cnot_count())
}

pub fn classify(n_states: u64) -> Result<CaseLabel, AnalysisError> {
    if n_states < 2 {
        return Err(AnalysisError::TooSmall(n_states));
    }
    Ok(classify_plan(&plan(n_states)?))
}

fn classify_plan(p: &SynthesisPlan) -> CaseLabel {
    if p.g == 1 {
        CaseLabel::I
    } else if p.xi == 0 && p.g == 2 {
        CaseLabel::II
    } else if p.g as usize == p.n_qubits {
        CaseLabel::III
    } else if p.xi == 0 {
        CaseLabel::IV
    } else {
        CaseLabel::V
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceReport {
    pub n_states: u64,
    pub n_qubits: usize,
    pub g: u32,
    pub m: u32,
    pub cnot_count: usize,
    pub case: Option<CaseLabel>,
    /// Depth of the lowered circuit.
    pub depth: usize,
}

/// Full report for `N`; synthesizes and lowers the circuit to measure depth.
pub fn resource_report(n_states: u64) -> Result<ResourceReport, AnalysisError> {
    let p = plan(n_states)?;
    let (lowered, _) = lower(&p.circuit());
    Ok(ResourceReport {
        n_states,
        n_qubits: p.n_qubits,
        g: p.g,
        m: p.m,
        cnot_count: p.cnot_count(),
        case: (n_states >= 2).then(|| classify_plan(&p)),
        depth: lowered.depth(),
    })
}

/// One row of the per-`N` scan table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRow {
    pub n_states: u64,
    pub n_qubits: u32,
    pub xi: u32,
    pub odd: u64,
    pub g: u32,
    pub m: u32,
    pub cnot: usize,
    pub case: CaseLabel,
}

/// Aggregate over all `N` with `⌈log₂ N⌉ = n`, i.e. `N ∈ (2^{n-1}, 2^n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthStats {
    pub n_qubits: u32,
    pub max_count: usize,
    /// Smallest `N` attaining `max_count`.
    pub argmax: u64,
    pub mean_count: f64,
    /// count → number of `N` with that count.
    pub histogram: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub stats: Vec<WidthStats>,
}

/// Enumerates every `N ∈ (2, 2^{n_max}]` grouped by register width.
pub fn scan(n_max: u32) -> Result<ScanResult, AnalysisError> {
    if !(2..=SCAN_MAX_QUBITS).contains(&n_max) {
        return Err(AnalysisError::ScanRange(n_max));
    }
    let mut rows = Vec::with_capacity((1usize << n_max) - 2);
    let mut stats = Vec::with_capacity(n_max as usize - 1);
    for n in 2..=n_max {
        let lo = (1u64 << (n - 1)) + 1;
        let hi = 1u64 << n;
        let mut histogram = BTreeMap::new();
        let (mut max_count, mut argmax, mut total) = (0usize, lo, 0u64);
        for n_states in lo..=hi {
            let p = plan(n_states)?;
            let cnot = p.cnot_count();
            *histogram.entry(cnot).or_insert(0) += 1;
            total += cnot as u64;
            if cnot > max_count {
                max_count = cnot;
                argmax = n_states;
            }
            rows.push(ScanRow {
                n_states,
                n_qubits: n,
                xi: p.xi,
                odd: p.odd,
                g: p.g,
                m: p.m,
                cnot,
                case: classify_plan(&p),
            });
        }
        stats.push(WidthStats {
            n_qubits: n,
            max_count,
            argmax,
            mean_count: total as f64 / (hi - lo + 1) as f64,
            histogram,
        });
    }
    Ok(ScanResult { rows, stats })
}

impl ScanResult {
    /// `N,n,xi,M,g,m,cnot,case`
    pub fn write_rows_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "N,n,xi,M,g,m,cnot,case")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n_states, r.n_qubits, r.xi, r.odd, r.g, r.m, r.cnot, r.case
            )?;
        }
        Ok(())
    }

    /// `n,max,mean`
    pub fn write_summary_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "n,max,mean")?;
        for s in &self.stats {
            writeln!(out, "{},{},{}", s.n_qubits, s.max_count, s.mean_count)?;
        }
        Ok(())
    }

    /// Least-squares line through `(n, mean_count)` for `n` in `range`.
    pub fn mean_fit(&self, range: std::ops::RangeInclusive<u32>) -> Option<LinearFit> {
        let pts: Vec<(f64, f64)> = self
            .stats
            .iter()
            .filter(|s| range.contains(&s.n_qubits))
            .map(|s| (s.n_qubits as f64, s.mean_count))
            .collect();
        LinearFit::least_squares(&pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
}

impl LinearFit {
    /// `None` with fewer than two distinct abscissae.
    pub fn least_squares(points: &[(f64, f64)]) -> Option<LinearFit> {
        let len = points.len() as f64;
        if points.len() < 2 {
            return None;
        }
        let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
        let my = points.iter().map(|p| p.1).sum::<f64>() / len;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx == 0.0 {
            return None;
        }
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        Some(LinearFit {
            slope,
            intercept: my - slope * mx,
        })
    }
}
