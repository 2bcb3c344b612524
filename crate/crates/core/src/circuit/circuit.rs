use super::gate::Gate;
use crate::error::{invalid, Result};

/// Ordered gate list over a fixed number of qubits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new() }
    }

    /// Builds a circuit and validates every gate against `num_qubits`.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Circuit { num_qubits, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
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

    pub fn iter(&self) -> std::slice::Iter<'_, Gate> {
        self.gates.iter()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    /// Appends a gate after validating it.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends all gates of `other`, which must not be wider than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits > self.num_qubits {
            return invalid(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.num_qubits, self.num_qubits
            ));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.num_qubits))
    }

    /// The adjoint circuit: reversed order, each gate inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Embeds this circuit into a `width`-qubit circuit, sending qubit `q` to `map[q]`.
    pub fn remap(&self, map: &[usize], width: usize) -> Result<Circuit> {
        if map.len() != self.num_qubits {
            return invalid(format!("map has {} entries for {} qubits", map.len(), self.num_qubits));
        }
        let mut seen = vec![false; width];
        for &q in map {
            if q >= width || std::mem::replace(&mut seen[q], true) {
                return invalid(format!("map {map:?} is not injective into 0..{width}"));
            }
        }
        Ok(Circuit { num_qubits: width, gates: self.gates.iter().map(|g| g.remapped(map)).collect() })
    }
}

impl<'a> IntoIterator for &'a Circuit {
    type Item = &'a Gate;
    type IntoIter = std::slice::Iter<'a, Gate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}
