use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};

/// A single gate acting on qubit indices of an enclosing circuit.
///
/// `Mcx` carries the work qubits it may borrow when it is decomposed; the
/// simulator applies it natively and ignores them. `Ucry` is a uniformly
/// controlled RY: branch `j` of the controls (first control is the most
/// significant bit of `j`) rotates the target by `angles[j]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Rx { target: usize, angle: f64 },
    Ry { target: usize, angle: f64 },
    Rz { target: usize, angle: f64 },
    H { target: usize },
    X { target: usize },
    Cnot { control: usize, target: usize },
    Cz { control: usize, target: usize },
    Cry { control: usize, target: usize, angle: f64 },
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Mcx { controls: Vec<usize>, target: usize, work: Vec<usize> },
    Ucry { controls: Vec<usize>, target: usize, angles: Arc<[f64]> },
    /// Synchronises every qubit for depth accounting. No effect on the state.
    Barrier,
}

/// Gate kind without operands, used for counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    H,
    X,
    Cnot,
    Cz,
    Cry,
    ControlledPhase,
    Mcx,
    Ucry,
    Barrier,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Cnot => "cnot",
            GateKind::Cz => "cz",
            GateKind::Cry => "cry",
            GateKind::ControlledPhase => "cphase",
            GateKind::Mcx => "mcx",
            GateKind::Ucry => "ucry",
            GateKind::Barrier => "barrier",
        }
    }

    /// True for the elementary set {RX, RY, RZ, CNOT}.
    pub fn is_elementary(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Cnot)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Gate {
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Gate {
        Gate::Mcx { controls: vec![c0, c1], target, work: Vec::new() }
    }

    pub fn ucry(controls: Vec<usize>, target: usize, angles: Vec<f64>) -> Gate {
        Gate::Ucry { controls, target, angles: angles.into() }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Rx { .. } => GateKind::Rx,
            Gate::Ry { .. } => GateKind::Ry,
            Gate::Rz { .. } => GateKind::Rz,
            Gate::H { .. } => GateKind::H,
            Gate::X { .. } => GateKind::X,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz { .. } => GateKind::Cz,
            Gate::Cry { .. } => GateKind::Cry,
            Gate::ControlledPhase { .. } => GateKind::ControlledPhase,
            Gate::Mcx { .. } => GateKind::Mcx,
            Gate::Ucry { .. } => GateKind::Ucry,
            Gate::Barrier => GateKind::Barrier,
        }
    }

    /// Control qubits (empty for uncontrolled gates).
    pub fn controls(&self) -> Vec<usize> {
        match self {
            Gate::Cnot { control, .. }
            | Gate::Cz { control, .. }
            | Gate::Cry { control, .. }
            | Gate::ControlledPhase { control, .. } => vec![*control],
            Gate::Mcx { controls, .. } | Gate::Ucry { controls, .. } => controls.clone(),
            _ => Vec::new(),
        }
    }

    /// Target qubit, if any.
    pub fn target(&self) -> Option<usize> {
        match self {
            Gate::Rx { target, .. }
            | Gate::Ry { target, .. }
            | Gate::Rz { target, .. }
            | Gate::H { target }
            | Gate::X { target }
            | Gate::Cnot { target, .. }
            | Gate::Cz { target, .. }
            | Gate::Cry { target, .. }
            | Gate::ControlledPhase { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Ucry { target, .. } => Some(*target),
            Gate::Barrier => None,
        }
    }

    /// Qubits whose state the gate can change or condition on, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.controls();
        q.extend(self.target());
        q
    }

    /// Work qubits an `Mcx` may borrow when decomposed.
    pub fn work(&self) -> &[usize] {
        match self {
            Gate::Mcx { work, .. } => work,
            _ => &[],
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Rx { target, angle } => Gate::Rx { target: *target, angle: -angle },
            Gate::Ry { target, angle } => Gate::Ry { target: *target, angle: -angle },
            Gate::Rz { target, angle } => Gate::Rz { target: *target, angle: -angle },
            Gate::Cry { control, target, angle } => {
                Gate::Cry { control: *control, target: *target, angle: -angle }
            }
            Gate::ControlledPhase { control, target, angle } => {
                Gate::ControlledPhase { control: *control, target: *target, angle: -angle }
            }
            Gate::Ucry { controls, target, angles } => Gate::Ucry {
                controls: controls.clone(),
                target: *target,
                angles: angles.iter().map(|a| -a).collect(),
            },
            other => other.clone(),
        }
    }

    /// Rewrites every qubit index through `map`.
    pub fn remapped(&self, map: &[usize]) -> Gate {
        let m = |q: &usize| map[*q];
        match self {
            Gate::Rx { target, angle } => Gate::Rx { target: m(target), angle: *angle },
            Gate::Ry { target, angle } => Gate::Ry { target: m(target), angle: *angle },
            Gate::Rz { target, angle } => Gate::Rz { target: m(target), angle: *angle },
            Gate::H { target } => Gate::H { target: m(target) },
            Gate::X { target } => Gate::X { target: m(target) },
            Gate::Cnot { control, target } => Gate::Cnot { control: m(control), target: m(target) },
            Gate::Cz { control, target } => Gate::Cz { control: m(control), target: m(target) },
            Gate::Cry { control, target, angle } => {
                Gate::Cry { control: m(control), target: m(target), angle: *angle }
            }
            Gate::ControlledPhase { control, target, angle } => {
                Gate::ControlledPhase { control: m(control), target: m(target), angle: *angle }
            }
            Gate::Mcx { controls, target, work } => Gate::Mcx {
                controls: controls.iter().map(m).collect(),
                target: m(target),
                work: work.iter().map(m).collect(),
            },
            Gate::Ucry { controls, target, angles } => Gate::Ucry {
                controls: controls.iter().map(m).collect(),
                target: m(target),
                angles: angles.clone(),
            },
            Gate::Barrier => Gate::Barrier,
        }
    }

    /// Checks indices against `num_qubits`, operand distinctness and angles.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let mut all = self.qubits();
        all.extend_from_slice(self.work());
        for &q in &all {
            if q >= num_qubits {
                return invalid(format!("{} acts on qubit {q} outside 0..{num_qubits}", self.kind()));
            }
        }
        let mut sorted = all.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != all.len() {
            return invalid(format!("{} has repeated operands {all:?}", self.kind()));
        }
        match self {
            Gate::Rx { angle, .. }
            | Gate::Ry { angle, .. }
            | Gate::Rz { angle, .. }
            | Gate::Cry { angle, .. }
            | Gate::ControlledPhase { angle, .. } => {
                if !angle.is_finite() {
                    return invalid(format!("{} angle is not finite", self.kind()));
                }
            }
            Gate::Mcx { controls, .. } => {
                if controls.is_empty() {
                    return invalid("mcx needs at least one control");
                }
            }
            Gate::Ucry { controls, angles, .. } => {
                if controls.len() >= usize::BITS as usize - 1 || angles.len() != 1 << controls.len() {
                    return invalid(format!(
                        "ucry with {} controls needs {} angles, got {}",
                        controls.len(),
                        1u64 << controls.len().min(63),
                        angles.len()
                    ));
                }
                if angles.iter().any(|a| !a.is_finite()) {
                    return invalid("ucry angle is not finite");
                }
            }
            _ => {}
        }
        Ok(())
    }
}
