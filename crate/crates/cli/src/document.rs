//! Lossless JSON circuit document. Probabilities stay exact rationals
//! (`"4/7"`), angles are floats.

use qsuperpose::{Circuit, CircuitBuilder, CircuitError, Gate, GateKind, Level, Probability, Qubit};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed circuit document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported circuit document version {0} (expected {DOCUMENT_VERSION})")]
    Version(u32),
    #[error("gate {index} ({kind}): {problem}")]
    Gate {
        index: usize,
        kind: GateKind,
        problem: &'static str,
    },
    #[error("gate {index}: {source}")]
    Invalid {
        index: usize,
        #[source]
        source: CircuitError,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub version: u32,
    pub n_qubits: usize,
    pub level: Level,
    pub gates: Vec<DocGate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocGate {
    pub kind: GateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<usize>,
    pub target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob: Option<Probability>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl From<&Gate> for DocGate {
    fn from(g: &Gate) -> Self {
        let (prob, angle) = match *g {
            Gate::G { p, .. } | Gate::CG { p, .. } => (Some(p), None),
            Gate::Ry { theta, .. } => (None, Some(theta)),
            _ => (None, None),
        };
        DocGate {
            kind: g.kind(),
            control: g.control().map(Qubit::index),
            target: g.target().index(),
            prob,
            angle,
        }
    }
}

impl DocGate {
    fn to_gate(&self, index: usize) -> Result<Gate, DocumentError> {
        let bad = |problem| DocumentError::Gate {
            index,
            kind: self.kind,
            problem,
        };
        let wants_control = self.kind.is_two_qubit();
        let wants_prob = matches!(self.kind, GateKind::G | GateKind::CG);
        let wants_angle = self.kind == GateKind::Ry;
        if self.control.is_some() != wants_control {
            return Err(bad(if wants_control { "missing control" } else { "unexpected control" }));
        }
        if self.prob.is_some() != wants_prob {
            return Err(bad(if wants_prob { "missing prob" } else { "unexpected prob" }));
        }
        if self.angle.is_some() != wants_angle {
            return Err(bad(if wants_angle { "missing angle" } else { "unexpected angle" }));
        }
        let target = Qubit(self.target);
        let control = Qubit(self.control.unwrap_or(0));
        let p = self.prob.unwrap_or(Probability::ZERO);
        Ok(match self.kind {
            GateKind::H => Gate::H(target),
            GateKind::X => Gate::X(target),
            GateKind::Z => Gate::Z(target),
            GateKind::Ry => Gate::Ry {
                theta: self.angle.unwrap_or_default(),
                target,
            },
            GateKind::G => Gate::G { p, target },
            GateKind::CG => Gate::CG { p, control, target },
            GateKind::ZeroCH => Gate::ZeroCH { control, target },
            GateKind::CNOT => Gate::CNOT { control, target },
            GateKind::CZ => Gate::CZ { control, target },
        })
    }
}

impl From<&Circuit> for CircuitDocument {
    fn from(c: &Circuit) -> Self {
        CircuitDocument {
            version: DOCUMENT_VERSION,
            n_qubits: c.n_qubits(),
            level: c.level(),
            gates: c.gates().iter().map(DocGate::from).collect(),
        }
    }
}

impl CircuitDocument {
    pub fn to_circuit(&self) -> Result<Circuit, DocumentError> {
        if self.version != DOCUMENT_VERSION {
            return Err(DocumentError::Version(self.version));
        }
        let mut b = CircuitBuilder::new(self.n_qubits, self.level)?;
        for (index, g) in self.gates.iter().enumerate() {
            b.append(g.to_gate(index)?)
                .map_err(|source| DocumentError::Invalid { index, source })?;
        }
        Ok(b.freeze())
    }
}

pub fn emit_document(circuit: &Circuit) -> String {
    let mut text = serde_json::to_string_pretty(&CircuitDocument::from(circuit))
        .expect("circuit documents always serialize");
    text.push('\n');
    text
}

pub fn parse_document(text: &str) -> Result<Circuit, DocumentError> {
    serde_json::from_str::<CircuitDocument>(text)?.to_circuit()
}
