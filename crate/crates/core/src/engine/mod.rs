//! Amplitude estimation of `E[f(X)]`: encodings, the Grover-type operator,
//! phase estimation and readout.

mod encode;
mod grover;
mod qpe;
mod readout;
mod run;
mod rv;
pub mod reference;

pub use encode::{
    build_f, build_r_exact, build_r_linear, cs_for_oracle_calls, encoded_p1, tensor, LinearRParams,
};
pub use grover::{build_controlled_q, build_q, QmcLayout};
pub use qpe::{
    estimation_distribution, fejer, phase_estimation, theta_from_p1, two_peak_distribution,
    PhaseEstimationCircuit, Strategy,
};
pub use readout::{extract_theta, theta_to_mu, ThetaSide};
pub use run::{assemble_f, joint_masses, run_qmc, LoaderMode, PhaseEstimate, QmcConfig, RMode};
pub use rv::{denormalize_mu, normalize_rv, RandomVariableSpec};
