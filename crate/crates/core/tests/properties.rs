use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use qmc_core::circuit::{decompose, Circuit, Gate};
use qmc_core::dist::{ansatz_cost, cost_gradient, linear_grid, DiscretizedDistribution, VariationalAnsatz};
use qmc_core::engine::{
    assemble_f, encoded_p1, estimation_distribution, joint_masses, normalize_rv, theta_from_p1, QmcConfig, RMode,
    Strategy as Sim,
};
use qmc_core::engine::reference::{brute_force_distribution, q_eigenvalues};
use qmc_core::sim::{dense_unitary, phase_aligned_distance, StateVector};

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let q = 0..width;
    let angle = -2.0 * PI..2.0 * PI;
    let pair = (0..width, 1..width).prop_map(move |(a, d)| (a, (a + d) % width));
    prop_oneof![
        (q.clone(), angle.clone()).prop_map(|(target, angle)| Gate::Rx { target, angle }),
        (q.clone(), angle.clone()).prop_map(|(target, angle)| Gate::Ry { target, angle }),
        (q.clone(), angle.clone()).prop_map(|(target, angle)| Gate::Rz { target, angle }),
        q.clone().prop_map(|target| Gate::H { target }),
        q.clone().prop_map(|target| Gate::X { target }),
        pair.clone().prop_map(|(control, target)| Gate::Cnot { control, target }),
        pair.clone().prop_map(|(control, target)| Gate::Cz { control, target }),
        (pair.clone(), angle.clone()).prop_map(|((control, target), angle)| Gate::Cry { control, target, angle }),
        (pair.clone(), angle.clone())
            .prop_map(|((control, target), angle)| Gate::ControlledPhase { control, target, angle }),
        Just(width).prop_flat_map(|w| {
            Just((0..w).collect::<Vec<_>>()).prop_shuffle().prop_flat_map(move |perm| {
                (1..w).prop_map(move |k| Gate::Mcx { controls: perm[1..=k].to_vec(), target: perm[0], work: vec![] })
            })
        }),
        Just(width).prop_flat_map(|w| {
            Just((0..w).collect::<Vec<_>>()).prop_shuffle().prop_flat_map(move |perm| {
                let perm = perm.clone();
                (0..w.min(4)).prop_flat_map(move |k| {
                    let perm = perm.clone();
                    prop::collection::vec(-PI..PI, 1 << k)
                        .prop_map(move |angles| Gate::ucry(perm[1..=k].to_vec(), perm[0], angles))
                })
            })
        }),
    ]
}

fn arb_circuit(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (2..=max_qubits).prop_flat_map(move |w| {
        prop::collection::vec(arb_gate(w), 1..=max_gates).prop_map(move |g| Circuit::from_gates(w, g).unwrap())
    })
}

fn random_state(width: usize, seed: &[f64]) -> StateVector {
    let dim = 1 << width;
    let amps: Vec<Complex64> = (0..dim).map(|i| Complex64::new(seed[i % seed.len()] + i as f64 * 0.01, (i as f64).sin())).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_matches_dense_unitary(c in arb_circuit(8, 50)) {
        let d = decompose(&c).unwrap();
        prop_assert!(d.iter().all(|g| g.kind().is_elementary()));
        let dist = phase_aligned_distance(&dense_unitary(&c).unwrap(), &dense_unitary(&d).unwrap());
        prop_assert!(dist < 1e-8, "distance {}", dist);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn circuit_then_inverse_is_identity(c in arb_circuit(6, 30), seed in prop::collection::vec(-1.0..1.0f64, 4)) {
        let s0 = random_state(c.num_qubits(), &seed);
        let mut s = s0.clone();
        s.apply_circuit(&c).unwrap();
        s.apply_circuit(&c.inverse()).unwrap();
        prop_assert!((s.inner(&s0).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn statevector_matches_dense(c in arb_circuit(6, 30), seed in prop::collection::vec(-1.0..1.0f64, 4)) {
        let s0 = random_state(c.num_qubits(), &seed);
        let mut s = s0.clone();
        s.apply_circuit(&c).unwrap();
        let u = dense_unitary(&c).unwrap();
        let v = &u * DVector::from_column_slice(s0.amplitudes());
        for (a, b) in s.amplitudes().iter().zip(v.iter()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }
}

fn arb_problem() -> impl Strategy<Value = (Vec<DiscretizedDistribution>, Vec<f64>)> {
    let dist = (1..=3usize).prop_flat_map(|m| {
        prop::collection::vec(0.01..1.0f64, 1 << m).prop_map(move |w| {
            DiscretizedDistribution::from_weights(linear_grid(m, 0.0, 1.0).unwrap(), w).unwrap()
        })
    });
    prop_oneof![
        dist.clone().prop_map(|d| vec![d]),
        (dist.clone(), dist).prop_filter("at most 3 data qubits", |(a, b)| a.m() + b.m() <= 3).prop_map(|(a, b)| vec![a, b]),
    ]
    .prop_flat_map(|dists| {
        let size = dists.iter().map(|d| d.len()).product::<usize>();
        (Just(dists), prop::collection::vec(-5.0..5.0f64, size))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn phase_estimation_matches_brute_force((dists, raw) in arb_problem(), n in 1..=5usize) {
        let rv = normalize_rv(&raw).unwrap();
        let (f, _) = assemble_f(&QmcConfig::new(n), &dists, &rv).unwrap();
        let expected = brute_force_distribution(&f, n).unwrap();
        for strategy in [Sim::GateLevel, Sim::Orbit, Sim::Spectral] {
            let got = estimation_distribution(&f, n, strategy).unwrap();
            for (a, b) in got.iter().zip(&expected) {
                prop_assert!((a - b).abs() < 1e-10, "{:?}: {} vs {}", strategy, a, b);
            }
        }
    }

    #[test]
    fn encoded_probability_is_the_mean((dists, raw) in arb_problem()) {
        let rv = normalize_rv(&raw).unwrap();
        let (f, _) = assemble_f(&QmcConfig::new(1), &dists, &rv).unwrap();
        let mu = rv.expectation(&joint_masses(&dists));
        prop_assert!((encoded_p1(&f).unwrap() - mu).abs() < 1e-10);
    }

    #[test]
    fn q_eigenphases((dists, raw) in arb_problem()) {
        let rv = normalize_rv(&raw).unwrap();
        let (f, _) = assemble_f(&QmcConfig::new(1), &dists, &rv).unwrap();
        let mu = rv.expectation(&joint_masses(&dists));
        let theta = theta_from_p1(mu);
        let eig = q_eigenvalues(&f).unwrap();
        for sign in [1.0, -1.0] {
            let target = Complex64::from_polar(1.0, sign * 2.0 * PI * theta);
            let best = eig.iter().map(|e| (e - target).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-8, "theta {} missing, distance {}", theta, best);
        }
    }

    #[test]
    fn readout_is_symmetric((dists, raw) in arb_problem(), n in 1..=6usize) {
        let rv = normalize_rv(&raw).unwrap();
        let (f, _) = assemble_f(&QmcConfig::new(n), &dists, &rv).unwrap();
        let d = estimation_distribution(&f, n, Sim::Orbit).unwrap();
        let m = d.len();
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        for y in 1..m {
            prop_assert!((d[y] - d[m - y]).abs() < 1e-9);
        }
    }

    #[test]
    fn linear_encoding_matches_brute_force(w in prop::collection::vec(0.01..1.0f64, 4), n in 1..=5usize, slope in prop_oneof![-3.0..-0.1f64, 0.1..3.0f64]) {
        let d = DiscretizedDistribution::from_weights(linear_grid(2, 0.0, 1.0).unwrap(), w).unwrap();
        let raw: Vec<f64> = d.grid().iter().map(|x| 1.0 + slope * x).collect();
        let rv = normalize_rv(&raw).unwrap();
        let (f, lin) = assemble_f(&QmcConfig::new(n).with_r_mode(RMode::Linear), &[d], &rv).unwrap();
        prop_assert!(lin.is_some());
        let expected = brute_force_distribution(&f, n).unwrap();
        let got = estimation_distribution(&f, n, Sim::GateLevel).unwrap();
        for (a, b) in got.iter().zip(&expected) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}

fn finite_difference(ansatz: &VariationalAnsatz, target: &DiscretizedDistribution, h: f64) -> Vec<f64> {
    (0..ansatz.params().len())
        .map(|i| {
            let shifted = |d: f64| {
                let mut p = ansatz.params().to_vec();
                p[i] += d;
                ansatz_cost(&VariationalAnsatz::new(ansatz.m(), ansatz.layers(), p).unwrap(), target).unwrap()
            };
            (shifted(h) - shifted(-h)) / (2.0 * h)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn parameter_shift_matches_finite_differences(seed in any::<u64>(), m in 2..=4usize, layers in 1..=3usize) {
        let target = qmc_core::dist::discretize_normal(m, 0.2, 0.3, -1.0, 1.0).unwrap();
        let ansatz = VariationalAnsatz::random(m, layers, PI, seed).unwrap();
        let (_, grad) = cost_gradient(&ansatz, &target).unwrap();
        let fd = finite_difference(&ansatz, &target, 1e-6);
        for (g, f) in grad.iter().zip(&fd) {
            prop_assert!((g - f).abs() < 1e-5, "{} vs {}", g, f);
        }
    }
}

#[test]
fn clean_work_mcx_acts_as_mcx_on_zero_work() {
    // controls 0..4, target 4, work 5..7 must start and end in |0⟩
    let g = Gate::Mcx { controls: vec![0, 1, 2, 3], target: 4, work: vec![5, 6] };
    let c = Circuit::from_gates(7, vec![g]).unwrap();
    let d = decompose(&c).unwrap();
    for basis in 0..32usize {
        let mut a = StateVector::basis(7, basis << 2).unwrap();
        let mut b = a.clone();
        a.apply_circuit(&c).unwrap();
        b.apply_circuit(&d).unwrap();
        assert!((a.inner(&b).norm() - 1.0).abs() < 1e-10, "basis {basis}");
    }
}
