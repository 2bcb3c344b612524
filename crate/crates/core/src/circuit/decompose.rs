//! Rewriting into the elementary set {RX, RY, RZ, CNOT}, equal up to global phase.

use std::f64::consts::PI;

use super::mcx::mcx;
use super::{Circuit, Gate};
use crate::error::Result;

/// Streaming decomposer. Keeps a count of multi-controlled X gates that had
/// to use the ancilla-free construction.
#[derive(Clone, Debug, Default)]
pub struct Decomposer {
    pub ancilla_free_mcx: usize,
}

impl Decomposer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Emits the elementary expansion of `gate` through `out`.
    pub fn decompose_gate(&mut self, gate: &Gate, out: &mut dyn FnMut(Gate)) -> Result<()> {
        match gate {
            Gate::Rx { .. } | Gate::Ry { .. } | Gate::Rz { .. } | Gate::Cnot { .. } | Gate::Barrier => {
                out(gate.clone())
            }
            Gate::H { target } => hadamard(*target, out),
            Gate::X { target } => out(Gate::Rx { target: *target, angle: PI }),
            Gate::Cz { control, target } => {
                hadamard(*target, out);
                out(Gate::Cnot { control: *control, target: *target });
                hadamard(*target, out);
            }
            Gate::Cry { control, target, angle } => {
                let (c, t) = (*control, *target);
                out(Gate::Ry { target: t, angle: angle / 2.0 });
                out(Gate::Cnot { control: c, target: t });
                out(Gate::Ry { target: t, angle: -angle / 2.0 });
                out(Gate::Cnot { control: c, target: t });
            }
            Gate::ControlledPhase { control, target, angle } => {
                let (c, t) = (*control, *target);
                out(Gate::Rz { target: c, angle: angle / 2.0 });
                out(Gate::Rz { target: t, angle: angle / 2.0 });
                out(Gate::Cnot { control: c, target: t });
                out(Gate::Rz { target: t, angle: -angle / 2.0 });
                out(Gate::Cnot { control: c, target: t });
            }
            Gate::Mcx { controls, target, work } => match controls.len() {
                1 => out(Gate::Cnot { control: controls[0], target: *target }),
                2 => toffoli(controls[0], controls[1], *target, out),
                _ => {
                    let exp = mcx(controls, *target, work)?;
                    if exp.ancilla_free {
                        self.ancilla_free_mcx += 1;
                    }
                    for g in &exp.gates {
                        self.decompose_gate(g, out)?;
                    }
                }
            },
            Gate::Ucry { controls, target, angles } => uniformly_controlled_ry(controls, *target, angles, out),
        }
        Ok(())
    }

    pub fn decompose(&mut self, circuit: &Circuit) -> Result<Circuit> {
        circuit.validate()?;
        let mut gates = Vec::with_capacity(circuit.len());
        for g in circuit {
            self.decompose_gate(g, &mut |e| gates.push(e))?;
        }
        Ok(Circuit::from_gates(circuit.num_qubits(), gates).expect("decomposition keeps indices valid"))
    }
}

/// Elementary-gate equivalent of `circuit` (equal up to global phase).
pub fn decompose(circuit: &Circuit) -> Result<Circuit> {
    Decomposer::new().decompose(circuit)
}

fn hadamard(t: usize, out: &mut dyn FnMut(Gate)) {
    out(Gate::Rz { target: t, angle: PI / 2.0 });
    out(Gate::Rx { target: t, angle: PI / 2.0 });
    out(Gate::Rz { target: t, angle: PI / 2.0 });
}

/// Six-CNOT Toffoli with T gates written as RZ(±π/4).
fn toffoli(a: usize, b: usize, t: usize, out: &mut dyn FnMut(Gate)) {
    let tg = |q: usize, sign: f64| Gate::Rz { target: q, angle: sign * PI / 4.0 };
    let cx = |c: usize, t: usize| Gate::Cnot { control: c, target: t };
    hadamard(t, out);
    out(cx(b, t));
    out(tg(t, -1.0));
    out(cx(a, t));
    out(tg(t, 1.0));
    out(cx(b, t));
    out(tg(t, -1.0));
    out(cx(a, t));
    out(tg(b, 1.0));
    out(tg(t, 1.0));
    hadamard(t, out);
    out(cx(a, b));
    out(tg(a, 1.0));
    out(tg(b, -1.0));
    out(cx(a, b));
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

/// Gray-code RY/CNOT cascade: `2^k` rotations and `2^k` CNOTs for `k` controls.
fn uniformly_controlled_ry(controls: &[usize], t: usize, angles: &[f64], out: &mut dyn FnMut(Gate)) {
    let k = controls.len();
    if k == 0 {
        out(Gate::Ry { target: t, angle: angles[0] });
        return;
    }
    let n = 1usize << k;
    let scale = 1.0 / n as f64;
    for i in 0..n {
        let g = gray(i);
        let theta: f64 = angles
            .iter()
            .enumerate()
            .map(|(j, a)| if (j & g).count_ones() % 2 == 0 { *a } else { -*a })
            .sum::<f64>()
            * scale;
        out(Gate::Ry { target: t, angle: theta });
        let changed = g ^ gray((i + 1) % n);
        let bit = changed.trailing_zeros() as usize;
        out(Gate::Cnot { control: controls[k - 1 - bit], target: t });
    }
}
