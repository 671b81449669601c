//! Shared inputs for the criterion benches.

use qsuperpose::{lower, synthesize, Circuit};

/// Worst-case (all-ones) `N` for an `n`-qubit register.
pub fn worst_case(n_qubits: u32) -> u64 {
    (1u64 << n_qubits) - 1
}

pub fn lowered_worst_case(n_qubits: u32) -> Circuit {
    let abs = synthesize(worst_case(n_qubits)).expect("valid N");
    lower(&abs).0
}
