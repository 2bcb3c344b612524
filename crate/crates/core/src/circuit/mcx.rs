//! Multi-controlled X expanded into Toffoli-level gates.
//!
//! With at least `k - 2` clean work qubits a compute/uncompute Toffoli ladder
//! is used (`2k - 3` Toffolis). Otherwise the gate becomes
//! `H · C^k P(π) · H`, with the multi-controlled phase built recursively from
//! controlled phases and linear-cost X ladders that borrow the phase target as
//! a dirty ancilla. That fallback is quadratic in `k` and needs no work qubits.

use std::f64::consts::PI;

use super::{Circuit, Gate};
use crate::error::Result;

/// Toffoli-level expansion of one multi-controlled X.
#[derive(Clone, Debug)]
pub struct McxExpansion {
    pub gates: Vec<Gate>,
    /// True when too few work qubits forced the ancilla-free construction.
    pub ancilla_free: bool,
}

/// Expands `C^k X(controls → target)` into CNOT, Toffoli (`Mcx` with two
/// controls), H and controlled-phase gates. Work qubits are assumed to start
/// in `|0⟩` and are returned there.
pub fn mcx(controls: &[usize], target: usize, work: &[usize]) -> Result<McxExpansion> {
    let g = Gate::Mcx { controls: controls.to_vec(), target, work: work.to_vec() };
    let width = g.qubits().into_iter().chain(work.iter().copied()).max().unwrap_or(0) + 1;
    g.validate(width)?;
    let k = controls.len();
    let mut gates = Vec::new();
    let ancilla_free = k >= 3 && work.len() < k - 2;
    if k >= 3 && !ancilla_free {
        clean_ladder(controls, target, work, &mut gates);
    } else if ancilla_free {
        gates.push(Gate::H { target });
        mc_phase(controls, target, PI, &mut gates);
        gates.push(Gate::H { target });
    } else {
        direct(controls, target, &mut gates);
    }
    Ok(McxExpansion { gates, ancilla_free })
}

/// As [`mcx`], packaged as a circuit of width `width`.
pub fn mcx_circuit(controls: &[usize], target: usize, work: &[usize], width: usize) -> Result<Circuit> {
    Circuit::from_gates(width, mcx(controls, target, work)?.gates)
}

fn direct(controls: &[usize], target: usize, out: &mut Vec<Gate>) {
    match controls {
        [c] => out.push(Gate::Cnot { control: *c, target }),
        [a, b] => out.push(Gate::toffoli(*a, *b, target)),
        _ => unreachable!("direct expansion only for one or two controls"),
    }
}

fn clean_ladder(c: &[usize], t: usize, w: &[usize], out: &mut Vec<Gate>) {
    let k = c.len();
    let mut compute = vec![Gate::toffoli(c[0], c[1], w[0])];
    for i in 2..k - 1 {
        compute.push(Gate::toffoli(c[i], w[i - 2], w[i - 1]));
    }
    out.extend(compute.iter().cloned());
    out.push(Gate::toffoli(c[k - 1], w[k - 3], t));
    out.extend(compute.into_iter().rev());
}

/// `C^k X` using `k - 2` dirty ancillas (any state, restored).
fn dirty_ladder(c: &[usize], t: usize, a: &[usize], out: &mut Vec<Gate>) {
    let k = c.len();
    if k <= 2 {
        direct(c, t, out);
        return;
    }
    debug_assert!(a.len() >= k - 2);
    let down = |out: &mut Vec<Gate>| {
        for i in (1..k - 2).rev() {
            out.push(Gate::toffoli(c[i + 1], a[i - 1], a[i]));
        }
    };
    let up = |out: &mut Vec<Gate>| {
        for i in 1..k - 2 {
            out.push(Gate::toffoli(c[i + 1], a[i - 1], a[i]));
        }
    };
    let last = Gate::toffoli(c[k - 1], a[k - 3], t);
    out.push(last.clone());
    down(out);
    out.push(Gate::toffoli(c[0], c[1], a[0]));
    up(out);
    out.push(last);
    down(out);
    out.push(Gate::toffoli(c[0], c[1], a[0]));
    up(out);
}

/// `C^k X` with a single dirty ancilla, by splitting the controls in two
/// halves that lend each other their qubits.
fn one_dirty(c: &[usize], t: usize, anc: usize, out: &mut Vec<Gate>) {
    let k = c.len();
    if k <= 2 {
        direct(c, t, out);
        return;
    }
    let m1 = k.div_ceil(2);
    let (a, b) = c.split_at(m1);
    let mut spare_a: Vec<usize> = b.to_vec();
    spare_a.push(t);
    let mut second: Vec<usize> = b.to_vec();
    second.push(anc);
    for _ in 0..2 {
        dirty_ladder(a, anc, &spare_a, out);
        dirty_ladder(&second, t, a, out);
    }
}

/// Multi-controlled phase `diag(1, …, 1, e^{iφ})` on controls plus target.
fn mc_phase(c: &[usize], t: usize, phi: f64, out: &mut Vec<Gate>) {
    let k = c.len();
    if k == 1 {
        out.push(Gate::ControlledPhase { control: c[0], target: t, angle: phi });
        return;
    }
    let last = c[k - 1];
    let rest = &c[..k - 1];
    out.push(Gate::ControlledPhase { control: last, target: t, angle: phi / 2.0 });
    one_dirty(rest, last, t, out);
    out.push(Gate::ControlledPhase { control: last, target: t, angle: -phi / 2.0 });
    one_dirty(rest, last, t, out);
    mc_phase(rest, t, phi / 2.0, out);
}

/// Number of work qubits the linear construction needs for `k` controls.
pub fn work_needed(k: usize) -> usize {
    k.saturating_sub(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::sim::{dense_unitary, CMatrix};

    fn mcx_reference(width: usize, controls: &[usize], target: usize) -> CMatrix {
        let g = Gate::Mcx { controls: controls.to_vec(), target, work: vec![] };
        dense_unitary(&Circuit::from_gates(width, vec![g]).unwrap()).unwrap()
    }

    fn bit(width: usize, q: usize) -> usize {
        1 << (width - 1 - q)
    }

    #[test]
    fn clean_ladder_is_mcx_on_clean_work_subspace() {
        for k in 3..=5 {
            let controls: Vec<usize> = (0..k).collect();
            let target = k;
            let work: Vec<usize> = (k + 1..k + 1 + work_needed(k)).collect();
            let width = k + 1 + work.len();
            let exp = mcx(&controls, target, &work).unwrap();
            assert!(!exp.ancilla_free);
            let toff = exp.gates.iter().filter(|g| g.kind() == GateKind::Mcx).count();
            assert_eq!(toff, 2 * k - 3);
            let u = dense_unitary(&Circuit::from_gates(width, exp.gates).unwrap()).unwrap();
            let r = mcx_reference(width, &controls, target);
            let wmask: usize = work.iter().map(|&q| bit(width, q)).sum();
            for col in (0..1 << width).filter(|c| c & wmask == 0) {
                for row in 0..1 << width {
                    assert!((u[(row, col)] - r[(row, col)]).norm() < 1e-12, "k={k}");
                }
            }
        }
    }

    #[test]
    fn ancilla_free_is_exact_mcx() {
        for k in 1..=6 {
            let controls: Vec<usize> = (0..k).collect();
            let exp = mcx(&controls, k, &[]).unwrap();
            assert_eq!(exp.ancilla_free, k >= 3);
            let u = dense_unitary(&Circuit::from_gates(k + 1, exp.gates).unwrap()).unwrap();
            let r = mcx_reference(k + 1, &controls, k);
            let err = u.iter().zip(r.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-10, "k={k} err={err}");
        }
    }

    #[test]
    fn ancilla_free_growth_is_quadratic() {
        let count = |k: usize| mcx(&(0..k).collect::<Vec<_>>(), k, &[]).unwrap().gates.len() as f64;
        let ratio = count(64) / count(32);
        assert!(ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn dirty_ladder_restores_arbitrary_ancillas() {
        for k in 3..=5 {
            let c: Vec<usize> = (0..k).collect();
            let a: Vec<usize> = (k + 1..k + 1 + k - 2).collect();
            let width = 2 * k - 1;
            let mut gates = Vec::new();
            dirty_ladder(&c, k, &a, &mut gates);
            let u = dense_unitary(&Circuit::from_gates(width, gates).unwrap()).unwrap();
            let r = mcx_reference(width, &c, k);
            let err = u.iter().zip(r.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12);
        }
    }
}
