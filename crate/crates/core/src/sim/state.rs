use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, QmcError, Result};

/// Largest register [`StateVector::new`] will allocate unless told otherwise.
pub const DEFAULT_MAX_QUBITS: usize = 30;

const NORM_TOL: f64 = 1e-10;

/// Dense amplitude vector over `num_qubits` qubits. Qubit 0 is the most
/// significant bit of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// `|0…0⟩` on `num_qubits` qubits, capped at [`DEFAULT_MAX_QUBITS`].
pub fn init_state(num_qubits: usize) -> Result<StateVector> {
    StateVector::new(num_qubits)
}

impl StateVector {
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::with_cap(num_qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn with_cap(num_qubits: usize, cap: usize) -> Result<Self> {
        Self::basis_with_cap(num_qubits, 0, cap)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        Self::basis_with_cap(num_qubits, index, DEFAULT_MAX_QUBITS)
    }

    fn basis_with_cap(num_qubits: usize, index: usize, cap: usize) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a state needs at least one qubit");
        }
        if num_qubits > cap {
            return Err(QmcError::ResourceLimit {
                qubits: num_qubits,
                cap,
                bytes: (1u128 << num_qubits) * std::mem::size_of::<Complex64>() as u128,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return invalid(format!("basis index {index} out of range for {num_qubits} qubits"));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps an amplitude vector whose length is a power of two and whose norm is 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return invalid(format!("amplitude count {dim} is not a power of two >= 2"));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > DEFAULT_MAX_QUBITS {
            return Err(QmcError::ResourceLimit {
                qubits: num_qubits,
                cap: DEFAULT_MAX_QUBITS,
                bytes: dim as u128 * 16,
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return invalid(format!("amplitudes have squared norm {norm}, expected 1"));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies one gate after validating it against this register.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    /// Applies every gate of `circuit` in order.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return invalid(format!(
                "circuit has {} qubits, state has {}",
                circuit.num_qubits(),
                self.num_qubits
            ));
        }
        circuit.validate()?;
        self.apply_gates_unchecked(circuit.gates());
        Ok(())
    }

    /// Applies gates that are already known to be valid for this register.
    pub(crate) fn apply_gates_unchecked(&mut self, gates: &[Gate]) {
        for g in gates {
            self.apply_unchecked(g);
        }
    }

    /// Marginal distribution of `qubits`; the first listed qubit is the most
    /// significant bit of the outcome index.
    pub fn probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        let mut seen = vec![false; self.num_qubits];
        for &q in qubits {
            if q >= self.num_qubits || std::mem::replace(&mut seen[q], true) {
                return invalid(format!("bad measurement qubit list {qubits:?}"));
            }
        }
        let shifts: Vec<usize> = qubits.iter().map(|&q| self.num_qubits - 1 - q).collect();
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let mut j = 0;
            for &s in &shifts {
                j = (j << 1) | ((i >> s) & 1);
            }
            out[j] += a.norm_sqr();
        }
        Ok(out)
    }

    /// Full distribution over all basis states.
    pub fn basis_probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    #[inline]
    fn bit(&self, q: usize) -> usize {
        1 << (self.num_qubits - 1 - q)
    }

    fn mask(&self, qs: &[usize]) -> usize {
        qs.iter().fold(0, |m, &q| m | self.bit(q))
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        match gate {
            Gate::Rx { target, angle } => self.apply_1q(0, *target, rx(*angle)),
            Gate::Ry { target, angle } => self.apply_1q(0, *target, ry(*angle)),
            Gate::Rz { target, angle } => self.apply_1q(0, *target, rz(*angle)),
            Gate::H { target } => self.apply_1q(0, *target, hadamard()),
            Gate::X { target } => self.controlled_x(0, *target),
            Gate::Cnot { control, target } => self.controlled_x(self.bit(*control), *target),
            Gate::Mcx { controls, target, .. } => self.controlled_x(self.mask(controls), *target),
            Gate::Cz { control, target } => {
                self.phase_on_mask(self.bit(*control) | self.bit(*target), Complex64::new(-1.0, 0.0))
            }
            Gate::ControlledPhase { control, target, angle } => self
                .phase_on_mask(self.bit(*control) | self.bit(*target), Complex64::from_polar(1.0, *angle)),
            Gate::Cry { control, target, angle } => self.apply_1q(self.bit(*control), *target, ry(*angle)),
            Gate::Ucry { controls, target, angles } => self.ucry(controls, *target, angles),
            Gate::Barrier => {}
        }
    }

    /// Applies `u` to `target` on the subspace where all bits of `cmask` are set.
    fn apply_1q(&mut self, cmask: usize, target: usize, u: [[Complex64; 2]; 2]) {
        let tb = self.bit(target);
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + tb {
                if i & cmask != cmask {
                    continue;
                }
                let a0 = self.amps[i];
                let a1 = self.amps[i + tb];
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i + tb] = u[1][0] * a0 + u[1][1] * a1;
            }
            base += 2 * tb;
        }
    }

    fn controlled_x(&mut self, cmask: usize, target: usize) {
        let tb = self.bit(target);
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + tb {
                if i & cmask == cmask {
                    self.amps.swap(i, i + tb);
                }
            }
            base += 2 * tb;
        }
    }

    fn phase_on_mask(&mut self, mask: usize, phase: Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= phase;
            }
        }
    }

    fn ucry(&mut self, controls: &[usize], target: usize, angles: &[f64]) {
        let cs: Vec<(f64, f64)> = angles.iter().map(|a| ((a / 2.0).cos(), (a / 2.0).sin())).collect();
        let shifts: Vec<usize> = controls.iter().map(|&q| self.num_qubits - 1 - q).collect();
        let tb = self.bit(target);
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + tb {
                let mut j = 0;
                for &s in &shifts {
                    j = (j << 1) | ((i >> s) & 1);
                }
                let (c, s) = cs[j];
                let a0 = self.amps[i];
                let a1 = self.amps[i + tb];
                self.amps[i] = a0 * c - a1 * s;
                self.amps[i + tb] = a0 * s + a1 * c;
            }
            base += 2 * tb;
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn rx(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

pub(crate) fn ry(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

pub(crate) fn rz(theta: f64) -> [[Complex64; 2]; 2] {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

pub(crate) fn hadamard() -> [[Complex64; 2]; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_oversized_register() {
        let err = StateVector::new(31).unwrap_err();
        assert!(matches!(err, QmcError::ResourceLimit { qubits: 31, cap: 30, .. }));
    }

    #[test]
    fn qubit_zero_is_msb() {
        let mut s = StateVector::new(3).unwrap();
        s.apply_gate(&Gate::X { target: 0 }).unwrap();
        assert_eq!(s.basis_probabilities()[4], 1.0);
    }

    #[test]
    fn ry_half_turn_gives_equal_split() {
        let mut s = StateVector::new(1).unwrap();
        s.apply_gate(&Gate::Ry { target: 0, angle: PI / 2.0 }).unwrap();
        let p = s.basis_probabilities();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn marginal_orders_outcomes_by_listed_qubits() {
        let mut s = StateVector::new(3).unwrap();
        s.apply_gate(&Gate::X { target: 2 }).unwrap();
        assert_eq!(s.probabilities(&[2, 0]).unwrap(), vec![0.0, 0.0, 1.0, 0.0]);
        assert!(s.probabilities(&[0, 0]).is_err());
    }

    #[test]
    fn rejects_unnormalised_amplitudes() {
        let amps = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(StateVector::from_amplitudes(amps).is_err());
    }
}
