//! Dense-matrix reference for phase estimation, independent of the
//! statevector strategies.

use std::f64::consts::PI;

use nalgebra::{DVector, Schur};
use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{invalid, Result};
use crate::sim::{dense_unitary, CMatrix};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `Q = (F Z F† V)²` built from matrices, ancilla as the last qubit of `f`.
pub fn dense_q(f: &Circuit) -> Result<CMatrix> {
    let fd = dense_unitary(f)?;
    let dim = fd.nrows();
    let mut z = CMatrix::identity(dim, dim);
    z[(0, 0)] = c(-1.0);
    let v = CMatrix::from_diagonal(&DVector::from_fn(dim, |i, _| c(if i % 2 == 1 { -1.0 } else { 1.0 })));
    let g = &fd * z * fd.adjoint() * v;
    Ok(&g * &g)
}

/// `|(1/M) Σ_x e^{−2πixy/M} Q^x F|0⟩|²` for each `y`, with `x` the integer whose
/// bit `k` drives `Q^(2^k)`.
pub fn brute_force_distribution(f: &Circuit, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > 12 {
        return invalid(format!("brute-force phase estimation takes 1..=12 estimation qubits, got {n}"));
    }
    let q = dense_q(f)?;
    let fd = dense_unitary(f)?;
    let m = 1usize << n;
    let mut orbit = vec![fd.column(0).into_owned()];
    for _ in 1..m {
        let next = &q * orbit.last().unwrap();
        orbit.push(next);
    }
    Ok((0..m)
        .map(|y| {
            let mut acc = DVector::from_element(fd.nrows(), c(0.0));
            for (x, v) in orbit.iter().enumerate() {
                acc += v * Complex64::from_polar(1.0 / m as f64, -2.0 * PI * (x * y) as f64 / m as f64);
            }
            acc.iter().map(|a| a.norm_sqr()).sum()
        })
        .collect())
}

/// Eigenvalues of the dense `Q`.
pub fn q_eigenvalues(f: &Circuit) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(dense_q(f)?, 1e-14, 100_000)
        .ok_or_else(|| crate::QmcError::InvalidArgument("Schur decomposition did not converge".into()))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| crate::QmcError::InvalidArgument("complex Schur form expected".into()))?;
    Ok(eig.iter().copied().collect())
}
