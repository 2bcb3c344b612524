use serde::{Deserialize, Serialize};

use super::{Circuit, Gate};
use crate::error::{QmcError, Result};

/// Gate counts and ASAP depth of an elementary-gate circuit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub total_gates: u64,
    pub rx: u64,
    pub ry: u64,
    pub rz: u64,
    pub cnot: u64,
    pub depth: u64,
    pub num_qubits: usize,
    /// Multi-controlled X gates that fell back to the ancilla-free construction.
    pub ancilla_free_mcx: u64,
}

impl ResourceReport {
    /// Wall-clock estimate assuming every layer takes `gate_time_s`.
    pub fn runtime(&self, gate_time_s: f64) -> f64 {
        self.depth as f64 * gate_time_s
    }
}

/// Incremental counter so that very long gate streams need not be stored.
#[derive(Clone, Debug)]
pub struct ResourceCounter {
    frontier: Vec<u64>,
    report: ResourceReport,
}

impl ResourceCounter {
    pub fn new(num_qubits: usize) -> Self {
        ResourceCounter {
            frontier: vec![0; num_qubits],
            report: ResourceReport { num_qubits, ..Default::default() },
        }
    }

    /// Adds one gate; fails if it is not in {RX, RY, RZ, CNOT, Barrier}.
    pub fn push(&mut self, gate: &Gate) -> Result<()> {
        let r = &mut self.report;
        match gate {
            Gate::Barrier => {
                let top = self.frontier.iter().copied().max().unwrap_or(0);
                self.frontier.iter_mut().for_each(|f| *f = top);
                return Ok(());
            }
            Gate::Rx { .. } => r.rx += 1,
            Gate::Ry { .. } => r.ry += 1,
            Gate::Rz { .. } => r.rz += 1,
            Gate::Cnot { .. } => r.cnot += 1,
            other => {
                return Err(QmcError::Decomposition(format!(
                    "{} is not elementary; decompose the circuit first",
                    other.kind()
                )))
            }
        }
        r.total_gates += 1;
        let qs = gate.qubits();
        if let Some(&bad) = qs.iter().find(|&&q| q >= self.frontier.len()) {
            return Err(QmcError::InvalidArgument(format!("qubit {bad} outside the counted register")));
        }
        let layer = 1 + qs.iter().map(|&q| self.frontier[q]).max().unwrap_or(0);
        for &q in &qs {
            self.frontier[q] = layer;
        }
        r.depth = r.depth.max(layer);
        Ok(())
    }

    pub fn note_ancilla_free(&mut self, n: u64) {
        self.report.ancilla_free_mcx += n;
    }

    pub fn finish(self) -> ResourceReport {
        self.report
    }
}

/// Counts and depth of an already-decomposed circuit.
pub fn count_resources(circuit: &Circuit) -> Result<ResourceReport> {
    let mut counter = ResourceCounter::new(circuit.num_qubits());
    for g in circuit {
        counter.push(g)?;
    }
    Ok(counter.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_is_asap_layering() {
        let gates = vec![
            Gate::Rx { target: 0, angle: 0.1 },
            Gate::Ry { target: 1, angle: 0.1 },
            Gate::Cnot { control: 0, target: 1 },
            Gate::Rz { target: 2, angle: 0.3 },
        ];
        let r = count_resources(&Circuit::from_gates(3, gates).unwrap()).unwrap();
        assert_eq!((r.total_gates, r.depth, r.cnot), (4, 2, 1));
    }

    #[test]
    fn barrier_synchronises() {
        let gates = vec![
            Gate::Rx { target: 0, angle: 0.1 },
            Gate::Rx { target: 0, angle: 0.1 },
            Gate::Barrier,
            Gate::Rz { target: 1, angle: 0.3 },
        ];
        let r = count_resources(&Circuit::from_gates(2, gates).unwrap()).unwrap();
        assert_eq!((r.total_gates, r.depth), (3, 3));
    }

    #[test]
    fn rejects_non_elementary() {
        let c = Circuit::from_gates(1, vec![Gate::H { target: 0 }]).unwrap();
        assert!(matches!(count_resources(&c), Err(QmcError::Decomposition(_))));
    }
}
