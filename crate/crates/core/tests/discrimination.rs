mod common;

use common::*;
use num_complex::Complex64;
use qbc::discrimination::{
    build_s1, build_s2, copy_register_unitary, cross_validate, run_trials, success_lower_bound,
    success_probability, DiscriminationInstance, Label, Overlaps,
};
use qbc::quantum::{ControlledRotation, Gate, GateSequence, StateVector};
use qbc::seed::SeedStream;
use qbc_oracle::{identity, max_abs_diff, x_string, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

fn random_circuit(n: usize, gates: usize, rng: &mut impl Rng) -> GateSequence {
    let (a, b) = (params(random_angles(rng)), params(random_angles(rng)));
    let mut seq = GateSequence::new(n);
    for _ in 0..gates {
        let c = rng.random_range(0..n);
        let t = (c + rng.random_range(1..n)) % n;
        seq.push(Gate::rotation(&ControlledRotation::new(c, t, a, b)).unwrap()).unwrap();
    }
    seq
}

/// `sum_n |psi_n><psi_n| (x) X^n` placed on data register and auxiliary `slot`.
fn oracle_s(u: &GateSequence, n: usize, slot: usize) -> Matrix {
    let dim = 1 << n;
    let um = dense_sequence(u);
    let mut total = Matrix::zeros(dim * dim * dim, dim * dim * dim);
    for k in 0..dim {
        let col = um.column(k).into_owned();
        let proj = &col * col.adjoint();
        let term = if slot == 1 {
            proj.kronecker(&x_string(n, k)).kronecker(&identity(dim))
        } else {
            proj.kronecker(&identity(dim)).kronecker(&x_string(n, k))
        };
        total += term;
    }
    total
}

#[test]
fn copy_register_on_superposition() {
    let c = copy_register_unitary(2).unwrap();
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 16];
    amps[1 << 2] = h;
    amps[2 << 2] = h;
    let mut s = StateVector::from_amplitudes(amps).unwrap();
    c.apply_noiseless(&mut s).unwrap();
    assert!((s.amplitudes()[(1 << 2) | 1] - h).norm() < 1e-15);
    assert!((s.amplitudes()[(2 << 2) | 2] - h).norm() < 1e-15);
    assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn s_operators_match_projector_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [1, 2, 3] {
        let u1 = random_circuit(n.max(2), 4, &mut rng);
        let u2 = random_circuit(n.max(2), 4, &mut rng);
        let n = u1.n_qubits();
        let s1 = columns_to_matrix(&build_s1(&u1, n).unwrap().to_columns().unwrap());
        let s2 = columns_to_matrix(&build_s2(&u2, n).unwrap().to_columns().unwrap());
        assert!(matrix_diff(&s1, &oracle_s(&u1, n, 1)) < 1e-10);
        assert!(matrix_diff(&s2, &oracle_s(&u2, n, 2)) < 1e-10);
        assert!(qbc_oracle::is_unitary(&(&s2 * &s1), 1e-10));
    }
}

#[test]
fn post_s_amplitudes_are_basis_overlaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [2, 3] {
        let u1 = random_circuit(n, 5, &mut rng);
        let u2 = random_circuit(n, 5, &mut rng);
        let dim = 1 << n;
        let c1 = dense_sequence(&u1);
        let c2 = dense_sequence(&u2);
        let s = build_s1(&u1, n).unwrap().then(&build_s2(&u2, n).unwrap()).unwrap();
        for m in 0..dim {
            let mut data = StateVector::basis(n, m).unwrap();
            u1.apply_noiseless(&mut data).unwrap();
            let mut state = data.tensor(&StateVector::zero(2 * n).unwrap()).unwrap();
            s.apply_noiseless(&mut state).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
            let mut expected = vec![Complex64::new(0.0, 0.0); dim * dim * dim];
            for k in 0..dim {
                let c = (c2.column(k).adjoint() * c1.column(m))[(0, 0)];
                for i in 0..dim {
                    expected[(i * dim + m) * dim + k] += c * c2[(i, k)];
                }
            }
            assert!(max_abs_diff(state.amplitudes(), &expected) < 1e-10, "n={n} m={m}");
        }
    }
}

fn half_mixing(rng: &mut impl Rng) -> GateSequence {
    let mut a = random_angles(rng);
    let mut b = random_angles(rng);
    a[2] = FRAC_PI_2;
    b[2] = FRAC_PI_2;
    GateSequence::from_gates(2, [Gate::rotation(&ControlledRotation::new(0, 1, params(a), params(b))).unwrap()]).unwrap()
}

#[test]
fn monte_carlo_matches_formula_when_assumption_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (i, m) in [0, 3].into_iter().enumerate() {
        let u2 = half_mixing(&mut rng);
        let inst = DiscriminationInstance::new(GateSequence::new(2), u2, m, Label::Circuit1).unwrap();
        let d = cross_validate(&inst, 10_000, &SeedStream::new(i as u64, "disc")).unwrap();
        assert!(d.z_printed <= 3.0, "{d:?}");
        assert!(!d.flagged);
    }
}

#[test]
fn identity_second_circuit_formula_by_hand() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let u1 = random_circuit(2, 4, &mut rng);
    let u2 = GateSequence::new(2);
    let c1 = dense_sequence(&u1);
    for m in 0..4 {
        let mut hand = 1.0 - c1[(m, m)].norm_sqr();
        for l in (0..4).filter(|&l| l != m) {
            hand -= c1[(l, m)].norm_sqr() * 1.0;
        }
        let p = success_probability(&u1, &u2, m).unwrap();
        assert!((p - hand).abs() < 1e-12);
        assert!(p.abs() < 1e-12);
        assert!(success_lower_bound(&u1, &u2, m, (m + 1) % 4).unwrap().abs() < 1e-12);
    }
}

#[test]
fn formula_outside_assumption_is_flagged() {
    let ry = qbc::quantum::Unitary2::ry(FRAC_PI_2);
    let u1 = GateSequence::from_gates(2, [Gate::single(0, ry), Gate::single(1, ry)]).unwrap();
    let inst = DiscriminationInstance::new(u1.clone(), GateSequence::new(2), 0, Label::Circuit1).unwrap();
    let o = Overlaps::new(&u1, &GateSequence::new(2)).unwrap();
    let exact = o.exact_probability(0, Label::Circuit1).unwrap();
    let d = cross_validate(&inst, 4000, &SeedStream::new(9, "disc")).unwrap();
    assert!((exact - 3.0 / 16.0).abs() < 1e-12);
    assert!(d.z_exact <= 4.0);
    assert!(d.flagged);
}

#[test]
fn identical_circuits_give_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let u = random_circuit(2, 4, &mut rng);
    for truth in [Label::Circuit1, Label::Circuit2] {
        let inst = DiscriminationInstance::new(u.clone(), u.clone(), 1, truth).unwrap();
        let t = run_trials(&inst, 500, &SeedStream::new(0, "same")).unwrap();
        assert_eq!(t.correct, 0);
        assert!(t.analytic_p.abs() < 1e-12);
    }
}

#[test]
fn exact_probability_matches_simulation_for_both_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let u1 = random_circuit(2, 5, &mut rng);
    let u2 = random_circuit(2, 5, &mut rng);
    let o = Overlaps::new(&u1, &u2).unwrap();
    for truth in [Label::Circuit1, Label::Circuit2] {
        let inst = DiscriminationInstance::new(u1.clone(), u2.clone(), 2, truth).unwrap();
        let t = run_trials(&inst, 10_000, &SeedStream::new(3, "exact")).unwrap();
        let p = o.exact_probability(2, truth).unwrap();
        let sigma = (p * (1.0 - p) / 1e4).sqrt().max(1e-4);
        assert!((t.frequency() - p).abs() <= 4.0 * sigma, "{truth}: {} vs {p}", t.frequency());
    }
}
