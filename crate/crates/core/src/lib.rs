//! Circuits that prepare the uniform superposition `(1/√N) Σ_{j<N} |j⟩`
//! for arbitrary `N` with at most `2n − 3` CNOTs, `n = ⌈log₂ N⌉`.
//!
//! The pipeline is [`synthesis::synthesize`] → [`lowering::lower`] →
//! [`simulator::run`], with [`analysis`] providing closed-form CNOT counts
//! and [`encoding`] the address ↔ index bijection that turns the prepared
//! state into a data encoding.
//!
//! ```
//! use qsuperpose::{lower, run, synthesize};
//!
//! let abstract_circuit = synthesize(7).unwrap();
//! let (lowered, report) = lower(&abstract_circuit);
//! assert_eq!(report.entanglers_emitted, 3);
//! let state = run(&lowered).unwrap();
//! assert!(state.uniform_distance(7).unwrap() < 1e-12);
//! ```

pub mod analysis;
pub mod circuit;
pub mod encoding;
pub mod lowering;
pub mod prob;
pub mod simulator;
pub mod synthesis;

pub use analysis::{classify, cnot_count, resource_report, scan, CaseLabel, ResourceReport, ScanResult};
pub use circuit::{Circuit, CircuitBuilder, CircuitError, Gate, GateKind, Level, Qubit};
pub use encoding::{build_indices, build_mapping, AddressMap, Dataset, EncodingError};
pub use lowering::{lower, LoweringReport};
pub use prob::Probability;
pub use simulator::{run, SimError, StateVector, MAX_QUBITS};
pub use synthesis::{plan, synthesize, SynthesisError, SynthesisPlan};
