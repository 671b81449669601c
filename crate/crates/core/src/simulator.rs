//! Dense statevector simulator.
//!
//! Basis index convention: `index = Σ_k j_k · 2^{n-1-k}`, so `q[0]` is the
//! most significant bit. Gates are applied in place by walking amplitude
//! pairs that differ only in the target bit, filtered by the control bit for
//! two-qubit gates.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Qubit};
use crate::prob::Probability;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("qubit cap exceeded: {0} qubits requested, at most {MAX_QUBITS} supported")]
    QubitCap(usize),
    #[error("a state needs at least one qubit")]
    NoQubits,
    #[error("qubit q[{qubit}] out of range for a {n_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("N = {n_states} exceeds the 2^{n_qubits} basis states of the register")]
    TooManyStates { n_states: u64, n_qubits: usize },
}

type Mat2 = [[f64; 2]; 2];

const HADAMARD: Mat2 = [
    [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
    [std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
];
const PAULI_X: Mat2 = [[0.0, 1.0], [1.0, 0.0]];
const PAULI_Z: Mat2 = [[1.0, 0.0], [0.0, -1.0]];

/// `Ry(θ)` with `Ry(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`.
pub fn ry_matrix(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [[c, -s], [s, c]]
}

/// `G(p)`, built directly from `√p` rather than through `Ry`.
pub fn g_matrix(p: Probability) -> [[f64; 2]; 2] {
    let a = p.to_f64().sqrt();
    let b = p.complement().to_f64().sqrt();
    [[a, -b], [b, a]]
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self, SimError> {
        if n_qubits == 0 {
            return Err(SimError::NoQubits);
        }
        if n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCap(n_qubits));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Builds a state from raw amplitudes. The length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::NoQubits);
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(SimError::QubitCap(n_qubits));
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        for q in gate.qubits() {
            self.check(q)?;
        }
        match *gate {
            Gate::H(t) => self.apply_1q(t, &HADAMARD),
            Gate::X(t) => self.apply_1q(t, &PAULI_X),
            Gate::Z(t) => self.apply_1q(t, &PAULI_Z),
            Gate::Ry { theta, target } => self.apply_1q(target, &ry_matrix(theta)),
            Gate::G { p, target } => self.apply_1q(target, &g_matrix(p)),
            Gate::CG { p, control, target } => self.apply_controlled(control, true, target, &g_matrix(p)),
            Gate::ZeroCH { control, target } => self.apply_controlled(control, false, target, &HADAMARD),
            Gate::CNOT { control, target } => self.apply_controlled(control, true, target, &PAULI_X),
            Gate::CZ { control, target } => {
                let mask = self.bit(control) | self.bit(target);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }

    /// Maximum `|amp − expected|` against the uniform superposition over
    /// `0..N` with real positive amplitudes `1/√N`.
    pub fn uniform_distance(&self, n_states: u64) -> Result<f64, SimError> {
        if n_states == 0 || n_states > self.amps.len() as u64 {
            return Err(SimError::TooManyStates {
                n_states,
                n_qubits: self.n_qubits,
            });
        }
        let expected = 1.0 / (n_states as f64).sqrt();
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let want = if (i as u64) < n_states { expected } else { 0.0 };
                (a - want).norm()
            })
            .fold(0.0, f64::max))
    }

    fn check(&self, q: Qubit) -> Result<(), SimError> {
        if q.0 >= self.n_qubits {
            Err(SimError::QubitOutOfRange {
                qubit: q.0,
                n_qubits: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    fn bit(&self, q: Qubit) -> usize {
        1 << (self.n_qubits - 1 - q.0)
    }

    fn apply_1q(&mut self, target: Qubit, m: &Mat2) {
        let stride = self.bit(target);
        for block in self.amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = x * m[0][0] + y * m[0][1];
                *a1 = x * m[1][0] + y * m[1][1];
            }
        }
    }

    fn apply_controlled(&mut self, control: Qubit, on_one: bool, target: Qubit, m: &Mat2) {
        let stride = self.bit(target);
        let cbit = self.bit(control);
        let want = if on_one { cbit } else { 0 };
        for (b, block) in self.amps.chunks_exact_mut(2 * stride).enumerate() {
            let base = b * 2 * stride;
            let (lo, hi) = block.split_at_mut(stride);
            for (off, (a0, a1)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                if (base + off) & cbit != want {
                    continue;
                }
                let (x, y) = (*a0, *a1);
                *a0 = x * m[0][0] + y * m[0][1];
                *a1 = x * m[1][0] + y * m[1][1];
            }
        }
    }
}

/// Simulates `circuit` from `|0…0⟩`.
pub fn run(circuit: &Circuit) -> Result<StateVector, SimError> {
    let mut state = StateVector::zero(circuit.n_qubits())?;
    for g in circuit.gates() {
        state.apply(g)?;
    }
    Ok(state)
}

/// `ℓ∞` distance between two states of equal width.
pub fn max_abs_diff(a: &StateVector, b: &StateVector) -> f64 {
    assert_eq!(a.n_qubits, b.n_qubits, "state widths differ");
    a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
