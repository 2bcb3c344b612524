//! Gate counts and depth of the decomposed phase-estimation circuit.

use qmc_core::circuit::{Decomposer, Gate, ResourceCounter, ResourceReport};
use qmc_core::dist::VariationalAnsatz;
use qmc_core::econ::NeoclassicalProblem;
use qmc_core::engine::{assemble_f, phase_estimation, LoaderMode, QmcConfig, RMode};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// How the distribution loader is built when counting resources.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountLoader {
    /// Layered ansatz with this many layers; counts do not depend on its angles.
    Ansatz(usize),
    /// Exact state preparation.
    Exact,
}

fn expand(d: &mut Decomposer, gates: &[Gate]) -> Result<Vec<Gate>> {
    let mut out = Vec::with_capacity(gates.len() * 8);
    for g in gates {
        d.decompose_gate(g, &mut |e| out.push(e))?;
    }
    Ok(out)
}

/// Resources of the full circuit for `problem` with `n` estimation qubits,
/// including the clean work register of the multi-controlled X. Each
/// controlled-Q block is decomposed once and replayed `2^k` times.
pub fn qmc_resources(problem: &NeoclassicalProblem, loader: CountLoader, r_mode: RMode, n: usize) -> Result<ResourceReport> {
    let dist = problem.distribution()?;
    let loader = match loader {
        CountLoader::Ansatz(layers) => LoaderMode::Trained(vec![VariationalAnsatz::random(problem.m, layers, 1.0, 0)?]),
        CountLoader::Exact => LoaderMode::ExactPrep,
    };
    let config = QmcConfig::new(n).with_r_mode(r_mode).with_loader(loader);
    let (f, _) = assemble_f(&config, &[dist], &problem.random_variable()?)?;
    let pe = phase_estimation(&f, n, true)?;
    let mut counter = ResourceCounter::new(pe.num_qubits());
    let mut d = Decomposer::new();
    for g in expand(&mut d, pe.prep.gates())? {
        counter.push(&g)?;
    }
    for (block, reps) in &pe.blocks {
        let before = d.ancilla_free_mcx;
        let gates = expand(&mut d, block.gates())?;
        counter.note_ancilla_free((d.ancilla_free_mcx - before) as u64 * reps);
        for _ in 0..*reps {
            for g in &gates {
                counter.push(g)?;
            }
        }
    }
    for g in expand(&mut d, pe.iqft.circuit.gates())? {
        counter.push(&g)?;
    }
    Ok(counter.finish())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceRow {
    pub n: usize,
    pub total_gates: u64,
    pub rx: u64,
    pub ry: u64,
    pub rz: u64,
    pub cnot: u64,
    pub depth: u64,
    pub num_qubits: usize,
}

impl ResourceRow {
    pub fn new(n: usize, r: &ResourceReport) -> Self {
        ResourceRow {
            n,
            total_gates: r.total_gates,
            rx: r.rx,
            ry: r.ry,
            rz: r.rz,
            cnot: r.cnot,
            depth: r.depth,
            num_qubits: r.num_qubits,
        }
    }
}

pub fn resource_sweep(
    problem: &NeoclassicalProblem,
    loader: CountLoader,
    r_mode: RMode,
    ns: &[usize],
) -> Result<Vec<ResourceRow>> {
    ns.iter().map(|&n| Ok(ResourceRow::new(n, &qmc_resources(problem, loader, r_mode, n)?))).collect()
}
