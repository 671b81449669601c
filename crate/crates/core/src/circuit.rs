//! Circuit intermediate representation.
//!
//! Circuits exist at two levels. The *abstract* level uses the gate set of
//! the synthesis routine (`H`, `G(p)`, controlled-`G(p)`, zero-controlled
//! `H`). The *lowered* level is restricted to `H`, `X`, `Z`, `Ry`, `CNOT`
//! and `CZ`, which is what the lowering pass emits and what OpenQASM export
//! accepts.
//!
//! Circuits are built with [`CircuitBuilder`], which validates each gate as
//! it is appended, and then frozen into an immutable [`Circuit`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prob::Probability;

/// Position of a qubit in the register `q[0..n]`. `q[0]` is the most
/// significant bit of a basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Qubit(pub usize);

impl Qubit {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}]", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
    Ry,
    G,
    CG,
    ZeroCH,
    CNOT,
    CZ,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::H,
        GateKind::X,
        GateKind::Z,
        GateKind::Ry,
        GateKind::G,
        GateKind::CG,
        GateKind::ZeroCH,
        GateKind::CNOT,
        GateKind::CZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Ry => "Ry",
            GateKind::G => "G",
            GateKind::CG => "CG",
            GateKind::ZeroCH => "ZeroCH",
            GateKind::CNOT => "CNOT",
            GateKind::CZ => "CZ",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Whether the kind belongs to the lowered gate set.
    pub fn is_lowered(self) -> bool {
        matches!(
            self,
            GateKind::H | GateKind::X | GateKind::Z | GateKind::Ry | GateKind::CNOT | GateKind::CZ
        )
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(
            self,
            GateKind::CG | GateKind::ZeroCH | GateKind::CNOT | GateKind::CZ
        )
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(Qubit),
    X(Qubit),
    Z(Qubit),
    /// `Ry(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`, angle in radians.
    Ry { theta: f64, target: Qubit },
    /// `G(p) = Ry(2 arccos √p)`, mapping `|0⟩` to `√p|0⟩ + √(1-p)|1⟩`.
    G { p: Probability, target: Qubit },
    /// `G(p)` on the target when the control is `|1⟩`.
    CG {
        p: Probability,
        control: Qubit,
        target: Qubit,
    },
    /// `H` on the target when the control is `|0⟩`.
    ZeroCH { control: Qubit, target: Qubit },
    CNOT { control: Qubit, target: Qubit },
    CZ { control: Qubit, target: Qubit },
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Z(_) => GateKind::Z,
            Gate::Ry { .. } => GateKind::Ry,
            Gate::G { .. } => GateKind::G,
            Gate::CG { .. } => GateKind::CG,
            Gate::ZeroCH { .. } => GateKind::ZeroCH,
            Gate::CNOT { .. } => GateKind::CNOT,
            Gate::CZ { .. } => GateKind::CZ,
        }
    }

    pub fn target(&self) -> Qubit {
        match *self {
            Gate::H(t) | Gate::X(t) | Gate::Z(t) => t,
            Gate::Ry { target, .. }
            | Gate::G { target, .. }
            | Gate::CG { target, .. }
            | Gate::ZeroCH { target, .. }
            | Gate::CNOT { target, .. }
            | Gate::CZ { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<Qubit> {
        match *self {
            Gate::CG { control, .. }
            | Gate::ZeroCH { control, .. }
            | Gate::CNOT { control, .. }
            | Gate::CZ { control, .. } => Some(control),
            _ => None,
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> {
        self.control().into_iter().chain(std::iter::once(self.target()))
    }

    pub fn is_entangler(&self) -> bool {
        self.kind().is_two_qubit()
    }

    fn validate(&self, n_qubits: usize) -> Result<(), CircuitError> {
        for q in self.qubits() {
            if q.0 >= n_qubits {
                return Err(CircuitError::QubitOutOfRange {
                    qubit: q.0,
                    n_qubits,
                });
            }
        }
        if let Some(c) = self.control() {
            if c == self.target() {
                return Err(CircuitError::ControlEqualsTarget(c.0));
            }
        }
        if let Gate::Ry { theta, .. } = self {
            if !theta.is_finite() {
                return Err(CircuitError::NonFiniteAngle);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(t) | Gate::X(t) | Gate::Z(t) => write!(f, "{} {}", self.kind(), t),
            Gate::Ry { theta, target } => write!(f, "Ry({theta}) {target}"),
            Gate::G { p, target } => write!(f, "G({p}) {target}"),
            Gate::CG { p, control, target } => write!(f, "CG({p}) {control} -> {target}"),
            Gate::ZeroCH { control, target }
            | Gate::CNOT { control, target }
            | Gate::CZ { control, target } => {
                write!(f, "{} {} -> {}", self.kind(), control, target)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Abstract,
    Lowered,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Level::Abstract => "abstract",
            Level::Lowered => "lowered",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("qubit q[{qubit}] out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control equals target (q[{0}])")]
    ControlEqualsTarget(usize),
    #[error("rotation angle is not finite")]
    NonFiniteAngle,
    #[error("gate {0} is not allowed in a lowered circuit")]
    NotLowered(GateKind),
}

/// Append-only circuit under construction.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    n_qubits: usize,
    level: Level,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(n_qubits: usize, level: Level) -> Result<Self, CircuitError> {
        if n_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(CircuitBuilder {
            n_qubits,
            level,
            gates: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn append(&mut self, gate: Gate) -> Result<&mut Self, CircuitError> {
        gate.validate(self.n_qubits)?;
        if self.level == Level::Lowered && !gate.kind().is_lowered() {
            return Err(CircuitError::NotLowered(gate.kind()));
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<&mut Self, CircuitError> {
        for g in gates {
            self.append(g)?;
        }
        Ok(self)
    }

    pub fn freeze(self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            level: self.level,
            gates: self.gates,
        }
    }
}

/// An immutable, validated circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    level: Level,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate_histogram(&self) -> BTreeMap<GateKind, usize> {
        let mut hist = BTreeMap::new();
        for g in &self.gates {
            *hist.entry(g.kind()).or_insert(0) += 1;
        }
        hist
    }

    /// Number of two-qubit gates. Every abstract two-qubit gate lowers to
    /// exactly one CNOT or CZ, so the count is level-independent for
    /// synthesized circuits.
    pub fn entangler_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_entangler()).count()
    }

    /// ASAP layer depth, every gate taking one time step.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let layer = g.qubits().map(|q| frontier[q.0]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                frontier[q.0] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit[{} qubits, {}]", self.n_qubits, self.level)?;
        for g in &self.gates {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> Qubit {
        Qubit(i)
    }

    #[test]
    fn single_gate_construction() {
        let mut b = CircuitBuilder::new(1, Level::Abstract).unwrap();
        b.append(Gate::H(q(0))).unwrap();
        let c = b.freeze();
        assert_eq!(c.gates(), &[Gate::H(q(0))]);
    }

    #[test]
    fn rejects_control_equal_target() {
        let mut b = CircuitBuilder::new(2, Level::Lowered).unwrap();
        let err = b
            .append(Gate::CNOT {
                control: q(0),
                target: q(0),
            })
            .unwrap_err();
        assert_eq!(err, CircuitError::ControlEqualsTarget(0));
        assert!(err.to_string().contains("control equals target"));
    }

    #[test]
    fn rejects_out_of_range_operands() {
        let mut b = CircuitBuilder::new(2, Level::Abstract).unwrap();
        assert!(matches!(
            b.append(Gate::ZeroCH {
                control: q(0),
                target: q(2)
            }),
            Err(CircuitError::QubitOutOfRange { qubit: 2, .. })
        ));
        assert!(b.is_empty());
    }

    #[test]
    fn rejects_abstract_gates_at_lowered_level() {
        let mut b = CircuitBuilder::new(1, Level::Lowered).unwrap();
        let err = b
            .append(Gate::G {
                p: Probability::HALF,
                target: q(0),
            })
            .unwrap_err();
        assert_eq!(err, CircuitError::NotLowered(GateKind::G));
    }

    #[test]
    fn rejects_non_finite_angle() {
        let mut b = CircuitBuilder::new(1, Level::Lowered).unwrap();
        assert_eq!(
            b.append(Gate::Ry {
                theta: f64::NAN,
                target: q(0)
            })
            .unwrap_err(),
            CircuitError::NonFiniteAngle
        );
    }

    #[test]
    fn builder_then_freeze_keeps_level() {
        let mut b = CircuitBuilder::new(2, Level::Abstract).unwrap();
        b.append(Gate::CG {
            p: Probability::new(66, 100).unwrap(),
            control: q(0),
            target: q(1),
        })
        .unwrap();
        let c = b.freeze();
        assert_eq!(c.level(), Level::Abstract);
        assert_eq!(c.len(), 1);
        assert_eq!(c.entangler_count(), 1);
    }

    #[test]
    fn empty_circuit_has_empty_histogram() {
        let c = CircuitBuilder::new(3, Level::Abstract).unwrap().freeze();
        assert!(c.gate_histogram().is_empty());
        assert_eq!(c.entangler_count(), 0);
        assert_eq!(c.depth(), 0);
    }

    #[test]
    fn depth_tracks_qubit_frontiers() {
        let mut b = CircuitBuilder::new(3, Level::Lowered).unwrap();
        b.extend([
            Gate::H(q(0)),
            Gate::H(q(1)),
            Gate::CNOT {
                control: q(0),
                target: q(1),
            },
            Gate::H(q(2)),
            Gate::CZ {
                control: q(1),
                target: q(2),
            },
        ])
        .unwrap();
        assert_eq!(b.freeze().depth(), 3);
    }

    #[test]
    fn zero_qubit_circuit_rejected() {
        assert_eq!(
            CircuitBuilder::new(0, Level::Abstract).unwrap_err(),
            CircuitError::NoQubits
        );
    }
}
