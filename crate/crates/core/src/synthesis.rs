//! Uniform-superposition synthesis.
//!
//! Given `N`, emit an abstract circuit preparing
//! `(1/√N) Σ_{j<N} |j⟩` on `n = ⌈log₂ N⌉` qubits, with `q[0]` the most
//! significant bit.
//!
//! `N` is factored as `2^ξ · M` with `M` odd. The `ξ` least significant
//! qubits get a Hadamard each. The leading `m = ⌈log₂ M⌉` qubits carry the
//! uniform superposition over `0..M`, built from the binary expansion
//! `M = 2^{k₀} + … + 2^{k_{g-2}} + 1`:
//!
//! 1. `G(p₀)` on `q[0]`, `p₀ = 2^{k₀}/M`, splits off the block of `2^{k₀}`
//!    indices whose top bit is 0.
//! 2. `CG(pᵢ)` peels the next block of `2^{kᵢ}` indices off the remaining
//!    mass, with `pᵢ = 2^{kᵢ} / (M − Σ_{l<i} 2^{k_l})`. Each CG targets a
//!    qubit no earlier gate has touched, so its target is `|0⟩` in every
//!    branch.
//! 3. Zero-controlled Hadamards spread each block uniformly over its
//!    `2^{kᵢ}` indices.
//!
//! The residual-mass denominator sums from `l = 0`; summing from `l = 1`
//! leaves the state non-uniform (for `M = 7` it gives `p₁ = 2/7` instead
//! of `2/3`).

use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, Gate, Level, Qubit};
use crate::prob::Probability;

/// Largest supported `N`. Keeps every intermediate in `u64`.
pub const MAX_N: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("N must be at least 1")]
    ZeroN,
    #[error("N = {0} exceeds the supported maximum 2^62")]
    TooLarge(u64),
    #[error("expected an odd integer >= 3, got {0}")]
    NotOddAtLeastThree(u64),
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Register width used for `N`: `max(1, ⌈log₂ N⌉)`.
pub fn register_width(n_states: u64) -> usize {
    ceil_log2(n_states).max(1) as usize
}

/// Split `N` into `(ξ, M)` with `N = 2^ξ · M` and `M` odd.
pub fn factor(n_states: u64) -> Result<(u32, u64), SynthesisError> {
    check_n(n_states)?;
    let xi = n_states.trailing_zeros();
    Ok((xi, n_states >> xi))
}

/// Binary expansion of an odd `M ≥ 3` as `(g, [k₀, …, k_{g-2}])` with
/// `M = 2^{k₀} + … + 2^{k_{g-2}} + 1` and `k₀ > … > k_{g-2} > 0`.
pub fn binary_decompose(odd: u64) -> Result<(u32, Vec<u32>), SynthesisError> {
    if odd < 3 || odd.is_multiple_of(2) {
        return Err(SynthesisError::NotOddAtLeastThree(odd));
    }
    let ks: Vec<u32> = (1..64).rev().filter(|&k| odd >> k & 1 == 1).collect();
    Ok((odd.count_ones(), ks))
}

/// Rotation probabilities `[p₀, …, p_{g-2}]` for an odd `M ≥ 3`.
pub fn rotation_params(odd: u64) -> Result<Vec<Probability>, SynthesisError> {
    let (_, ks) = binary_decompose(odd)?;
    let mut remaining = odd;
    let params = ks
        .iter()
        .map(|&k| {
            let block = 1u64 << k;
            let p = Probability::new(block, remaining).expect("block never exceeds remaining mass");
            remaining -= block;
            p
        })
        .collect();
    debug_assert_eq!(remaining, 1);
    Ok(params)
}

/// Everything the synthesized circuit is a function of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisPlan {
    /// Number of basis states `N` in the superposition.
    pub n_states: u64,
    /// Register width `n`.
    pub n_qubits: usize,
    /// Exponent `ξ` of the even part.
    pub xi: u32,
    /// Odd cofactor `M`.
    pub odd: u64,
    /// `m = ⌈log₂ M⌉`.
    pub m: u32,
    /// Hamming weight `g` of `N` (equal to that of `M`).
    pub g: u32,
    /// Exponents `k₀ > … > k_{g-2} > 0`.
    pub ks: Vec<u32>,
    /// `p₀ … p_{g-2}`.
    pub probs: Vec<Probability>,
}

pub fn plan(n_states: u64) -> Result<SynthesisPlan, SynthesisError> {
    let (xi, odd) = factor(n_states)?;
    let (g, ks, probs) = if odd == 1 {
        (1, Vec::new(), Vec::new())
    } else {
        let (g, ks) = binary_decompose(odd)?;
        (g, ks, rotation_params(odd)?)
    };
    Ok(SynthesisPlan {
        n_states,
        n_qubits: register_width(n_states),
        xi,
        odd,
        m: ceil_log2(odd),
        g,
        ks,
        probs,
    })
}

impl SynthesisPlan {
    /// Closed-form entangler count: `g + m − 3` for `g ≥ 2`, else 0.
    pub fn cnot_count(&self) -> usize {
        if self.g >= 2 {
            (self.g + self.m - 3) as usize
        } else {
            0
        }
    }

    /// Emit the abstract circuit for this plan.
    pub fn circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new(self.n_qubits, Level::Abstract)
            .expect("register width is at least one");
        let push = |b: &mut CircuitBuilder, gate: Gate| {
            b.append(gate).expect("synthesized gates are valid by construction");
        };

        if self.odd > 1 {
            let m = self.m as usize;
            let ks: Vec<usize> = self.ks.iter().map(|&k| k as usize).collect();
            let last = *ks.last().expect("g >= 2 implies at least one exponent");

            push(
                &mut b,
                Gate::G {
                    p: self.probs[0],
                    target: Qubit(0),
                },
            );
            for i in 1..ks.len() {
                push(
                    &mut b,
                    Gate::CG {
                        p: self.probs[i],
                        control: Qubit(m - ks[i - 1] - 1),
                        target: Qubit(m - ks[i] - 1),
                    },
                );
            }
            for j in 0..last {
                push(
                    &mut b,
                    Gate::ZeroCH {
                        control: Qubit(m - last - 1),
                        target: Qubit(m - last + j),
                    },
                );
            }
            for j in (1..ks.len()).rev() {
                for l in 1..=(ks[j - 1] - ks[j]) {
                    push(
                        &mut b,
                        Gate::ZeroCH {
                            control: Qubit(m - ks[j - 1] - 1),
                            target: Qubit(m - ks[j] - l),
                        },
                    );
                }
            }
        }

        let n = self.n_qubits;
        for q in n - self.xi as usize..n {
            push(&mut b, Gate::H(Qubit(q)));
        }
        b.freeze()
    }
}

/// Abstract circuit preparing the uniform superposition over `0..N`.
/// `N = 1` yields an empty one-qubit circuit.
pub fn synthesize(n_states: u64) -> Result<Circuit, SynthesisError> {
    Ok(plan(n_states)?.circuit())
}

fn check_n(n_states: u64) -> Result<(), SynthesisError> {
    match n_states {
        0 => Err(SynthesisError::ZeroN),
        n if n > MAX_N => Err(SynthesisError::TooLarge(n)),
        _ => Ok(()),
    }
}
