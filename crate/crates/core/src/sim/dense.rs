//! Dense-matrix reference path.
//!
//! Each gate is turned into its small local matrix from its definition and
//! embedded by index arithmetic. None of the statevector kernels are used, so
//! this serves as an independent check of them.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::{hadamard, rx, ry, rz};
use crate::circuit::{Circuit, Gate};
use crate::error::{invalid, Result};

/// Widest circuit [`dense_unitary`] accepts.
pub const DENSE_MAX_QUBITS: usize = 12;

pub type CMatrix = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn from_2x2(u: [[Complex64; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, k| u[r][k])
}

/// Local matrix of `gate` on the qubits returned with it (first is the MSB).
pub fn local_matrix(gate: &Gate) -> (Vec<usize>, CMatrix) {
    let one_q = |t: usize, u| (vec![t], from_2x2(u));
    match gate {
        Gate::Rx { target, angle } => one_q(*target, rx(*angle)),
        Gate::Ry { target, angle } => one_q(*target, ry(*angle)),
        Gate::Rz { target, angle } => one_q(*target, rz(*angle)),
        Gate::H { target } => one_q(*target, hadamard()),
        Gate::X { target } => (vec![*target], CMatrix::from_fn(2, 2, |r, k| c((r != k) as u8 as f64))),
        Gate::Cnot { control, target } => controlled(&[*control], *target, &x_matrix()),
        Gate::Mcx { controls, target, .. } => controlled(controls, *target, &x_matrix()),
        Gate::Cry { control, target, angle } => controlled(&[*control], *target, &from_2x2(ry(*angle))),
        Gate::Cz { control, target } => {
            let z = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-1.0)]));
            controlled(&[*control], *target, &z)
        }
        Gate::ControlledPhase { control, target, angle } => {
            let p = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(1.0),
                Complex64::from_polar(1.0, *angle),
            ]));
            controlled(&[*control], *target, &p)
        }
        Gate::Ucry { controls, target, angles } => {
            let k = controls.len();
            let mut m = CMatrix::zeros(2 << k, 2 << k);
            for (j, a) in angles.iter().enumerate() {
                m.view_mut((2 * j, 2 * j), (2, 2)).copy_from(&from_2x2(ry(*a)));
            }
            let mut qs = controls.clone();
            qs.push(*target);
            (qs, m)
        }
        Gate::Barrier => (Vec::new(), CMatrix::identity(1, 1)),
    }
}

fn x_matrix() -> CMatrix {
    CMatrix::from_fn(2, 2, |r, k| c((r != k) as u8 as f64))
}

fn controlled(controls: &[usize], target: usize, u: &CMatrix) -> (Vec<usize>, CMatrix) {
    let k = controls.len();
    let dim = 2 << k;
    let mut m = CMatrix::identity(dim, dim);
    m.view_mut((dim - 2, dim - 2), (2, 2)).copy_from(u);
    let mut qs = controls.to_vec();
    qs.push(target);
    (qs, m)
}

/// Left-multiplies the columns of `mat` by `local` acting on `qubits`.
pub fn apply_local(mat: &mut CMatrix, num_qubits: usize, qubits: &[usize], local: &CMatrix) {
    if qubits.is_empty() {
        return;
    }
    let k = qubits.len();
    let shifts: Vec<usize> = qubits.iter().map(|&q| num_qubits - 1 - q).collect();
    let qmask: usize = shifts.iter().fold(0, |m, &s| m | (1 << s));
    let dim = 1usize << num_qubits;
    let offsets: Vec<usize> = (0..1usize << k)
        .map(|j| {
            shifts.iter().enumerate().fold(0, |acc, (pos, &s)| acc | (((j >> (k - 1 - pos)) & 1) << s))
        })
        .collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); 1 << k];
    for col in 0..mat.ncols() {
        for base in 0..dim {
            if base & qmask != 0 {
                continue;
            }
            for (j, off) in offsets.iter().enumerate() {
                buf[j] = mat[(base | off, col)];
            }
            for (r, off) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, b) in buf.iter().enumerate() {
                    acc += local[(r, j)] * b;
                }
                mat[(base | off, col)] = acc;
            }
        }
    }
}

/// Dense unitary of `circuit`, for circuits of at most [`DENSE_MAX_QUBITS`] qubits.
pub fn dense_unitary(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.num_qubits();
    if n > DENSE_MAX_QUBITS {
        return invalid(format!("dense_unitary is limited to {DENSE_MAX_QUBITS} qubits, got {n}"));
    }
    circuit.validate()?;
    let dim = 1usize << n;
    let mut u = CMatrix::identity(dim, dim);
    for g in circuit {
        let (qs, local) = local_matrix(g);
        apply_local(&mut u, n, &qs, &local);
    }
    Ok(u)
}

/// Largest elementwise deviation between `a` and `b` after removing the best
/// global phase (aligned on the largest entry of `a`). Returns infinity for
/// shape mismatch.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    let (idx, _) = a.iter().enumerate().fold((0, -1.0), |best, (i, z)| {
        if z.norm() > best.1 {
            (i, z.norm())
        } else {
            best
        }
    });
    let (za, zb) = (a.as_slice()[idx], b.as_slice()[idx]);
    if zb.norm() < 1e-300 {
        return f64::INFINITY;
    }
    let phase = (zb / za) / (zb / za).norm();
    a.iter().zip(b.iter()).map(|(x, y)| (x * phase - y).norm()).fold(0.0, f64::max)
}
