//! Lowering from the abstract gate set to `{H, X, Z, Ry, CNOT, CZ}`.
//!
//! Every abstract two-qubit gate costs exactly one entangler:
//!
//! * `ZeroCH(c, t)` becomes `Ry(-π/4)_t · CZ(c, t) · Z_t · Ry(π/4)_t`
//!   (time order). With control 0 the target sees `Ry(π/4) Z Ry(-π/4) = H`;
//!   with control 1 the two `Z`s cancel. The identity is exact on the full
//!   two-qubit space.
//! * `CG(p; c, t)` becomes `Ry(a)_t · CNOT(c, t) · Ry(-a)_t` with
//!   `a = arcsin √p`. On target `|0⟩` this sends `|0,0⟩ → |0,0⟩` and
//!   `|1,0⟩ → |1⟩(sin a|0⟩ + cos a|1⟩) = |1⟩(√p|0⟩ + √(1-p)|1⟩)`. It is
//!   *not* `CG(p)` on target `|1⟩`; each use is recorded in the
//!   [`LoweringReport`].
//! * `G(p)` becomes `Ry(2 arccos √p)`.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{Circuit, CircuitBuilder, Gate, Level, Qubit};
use crate::prob::Probability;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assumption {
    /// The target qubit is `|0⟩` in every branch when the gate runs.
    TargetInZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssumptionUse {
    /// Index of the gate in the abstract circuit.
    pub gate_index: usize,
    pub assumption: Assumption,
    /// Whether the target was provably untouched by every earlier gate, which
    /// discharges the assumption for a circuit run from `|0…0⟩`.
    pub discharged: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoweringReport {
    pub entanglers_emitted: usize,
    pub single_qubit_gates_emitted: usize,
    pub assumptions_used: Vec<AssumptionUse>,
}

impl LoweringReport {
    /// True when every conditional lowering was statically justified.
    pub fn all_discharged(&self) -> bool {
        self.assumptions_used.iter().all(|a| a.discharged)
    }
}

pub fn lower_g(p: Probability, target: Qubit) -> Vec<Gate> {
    vec![Gate::Ry {
        theta: 2.0 * p.to_f64().sqrt().acos(),
        target,
    }]
}

/// Valid only when `target` is `|0⟩` in every branch.
pub fn lower_cg(p: Probability, control: Qubit, target: Qubit) -> Vec<Gate> {
    let a = p.to_f64().sqrt().asin();
    vec![
        Gate::Ry { theta: a, target },
        Gate::CNOT { control, target },
        Gate::Ry { theta: -a, target },
    ]
}

pub fn lower_zero_ch(control: Qubit, target: Qubit) -> Vec<Gate> {
    vec![
        Gate::Ry {
            theta: -FRAC_PI_4,
            target,
        },
        Gate::CZ { control, target },
        Gate::Z(target),
        Gate::Ry {
            theta: FRAC_PI_4,
            target,
        },
    ]
}

/// Lowers every abstract gate; lowered-set gates pass through unchanged.
pub fn lower(circuit: &Circuit) -> (Circuit, LoweringReport) {
    let mut b = CircuitBuilder::new(circuit.n_qubits(), Level::Lowered)
        .expect("source circuit has at least one qubit");
    let mut report = LoweringReport::default();
    let mut touched = vec![false; circuit.n_qubits()];

    for (idx, gate) in circuit.gates().iter().enumerate() {
        let emitted = match *gate {
            Gate::G { p, target } => lower_g(p, target),
            Gate::CG { p, control, target } => {
                report.assumptions_used.push(AssumptionUse {
                    gate_index: idx,
                    assumption: Assumption::TargetInZero,
                    discharged: !touched[target.0],
                });
                lower_cg(p, control, target)
            }
            Gate::ZeroCH { control, target } => lower_zero_ch(control, target),
            other => vec![other],
        };
        for q in gate.qubits() {
            touched[q.0] = true;
        }
        for g in emitted {
            if g.is_entangler() {
                report.entanglers_emitted += 1;
            } else {
                report.single_qubit_gates_emitted += 1;
            }
            b.append(g).expect("lowered gates reuse validated operands");
        }
    }
    (b.freeze(), report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::{max_abs_diff, run, StateVector};
    use crate::synthesis::synthesize;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn p(n: u64, d: u64) -> Probability {
        Probability::new(n, d).unwrap()
    }

    fn basis(n: usize, idx: usize) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[idx] = Complex64::new(1.0, 0.0);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn apply_all(mut s: StateVector, gates: &[Gate]) -> StateVector {
        for g in gates {
            s.apply(g).unwrap();
        }
        s
    }

    fn re(s: &StateVector) -> Vec<f64> {
        s.amplitudes().iter().map(|a| a.re).collect()
    }

    #[test]
    fn g_half_is_quarter_turn() {
        let gates = lower_g(Probability::HALF, Qubit(0));
        let Gate::Ry { theta, .. } = gates[0] else {
            panic!("expected Ry")
        };
        assert!((theta - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn g_one_is_identity_rotation() {
        assert_eq!(
            lower_g(Probability::ONE, Qubit(0)),
            vec![Gate::Ry {
                theta: 0.0,
                target: Qubit(0)
            }]
        );
    }

    #[test]
    fn g_four_sevenths_on_zero() {
        let s = apply_all(StateVector::zero(1).unwrap(), &lower_g(p(4, 7), Qubit(0)));
        let want = [(4.0f64 / 7.0).sqrt(), (3.0f64 / 7.0).sqrt()];
        for (a, b) in re(&s).iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn cg_two_thirds_from_one_zero() {
        let gates = lower_cg(p(2, 3), Qubit(0), Qubit(1));
        let s = apply_all(basis(2, 0b10), &gates);
        let want = [0.0, 0.0, (2.0f64 / 3.0).sqrt(), (1.0f64 / 3.0).sqrt()];
        for (a, b) in re(&s).iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn cg_leaves_control_off_branch_untouched() {
        let s = apply_all(basis(2, 0), &lower_cg(Probability::HALF, Qubit(0), Qubit(1)));
        assert!(max_abs_diff(&s, &basis(2, 0)) < 1e-15);
    }

    #[test]
    fn cg_one_is_identity_on_target_zero() {
        for idx in [0b00, 0b10] {
            let s = apply_all(basis(2, idx), &lower_cg(Probability::ONE, Qubit(0), Qubit(1)));
            assert!(max_abs_diff(&s, &basis(2, idx)) < 1e-15);
        }
    }

    #[test]
    fn zero_ch_columns() {
        let gates = lower_zero_ch(Qubit(0), Qubit(1));
        let s = apply_all(basis(2, 0b00), &gates);
        let want = [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0];
        assert!(re(&s).iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        let s = apply_all(basis(2, 0b11), &gates);
        assert!(max_abs_diff(&s, &basis(2, 0b11)) < 1e-15);
        let s = apply_all(basis(2, 0b10), &gates);
        assert!(max_abs_diff(&s, &basis(2, 0b10)) < 1e-15);
    }

    #[test]
    fn lowering_examples() {
        let (low7, rep7) = lower(&synthesize(7).unwrap());
        assert_eq!(low7.entangler_count(), 3);
        assert_eq!(rep7.entanglers_emitted, 3);
        assert_eq!(rep7.assumptions_used.len(), 1);
        assert!(rep7.all_discharged());

        let abs16 = synthesize(16).unwrap();
        let (low16, rep16) = lower(&abs16);
        assert_eq!(low16.gates(), abs16.gates());
        assert_eq!(low16.level(), Level::Lowered);
        assert_eq!(rep16.entanglers_emitted, 0);

        let (low3, _) = lower(&synthesize(3).unwrap());
        assert_eq!(low3.entangler_count(), 1);
    }

    #[test]
    fn lowered_matches_abstract_state() {
        for n in 2..=64 {
            let abs = synthesize(n).unwrap();
            let (low, _) = lower(&abs);
            let d = max_abs_diff(&run(&abs).unwrap(), &run(&low).unwrap());
            assert!(d < 1e-12, "N = {n}: {d}");
        }
    }

    #[test]
    fn undischarged_assumption_is_reported() {
        let mut b = CircuitBuilder::new(2, Level::Abstract).unwrap();
        b.append(Gate::H(Qubit(1))).unwrap();
        b.append(Gate::CG {
            p: Probability::HALF,
            control: Qubit(0),
            target: Qubit(1),
        })
        .unwrap();
        let (_, report) = lower(&b.freeze());
        assert_eq!(
            report.assumptions_used,
            vec![AssumptionUse {
                gate_index: 1,
                assumption: Assumption::TargetInZero,
                discharged: false
            }]
        );
        assert!(!report.all_discharged());
    }
}
