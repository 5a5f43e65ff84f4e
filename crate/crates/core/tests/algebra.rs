mod common;

use common::*;
use qbc::cipher::vtable::{build_vtable, builtin_blueprints, u_bi, u_tri, ENCODING_TABLE};
use qbc::quantum::{ControlledRotation, Gate, GateSequence, NoiseModel, RotationParams};
use qbc_oracle::{circuit, identity, is_unitary, max_abs_diff, printed_product, rotation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn rotation_matches_explicit_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let a = random_angles(&mut rng);
        let ours = to_matrix(&params(a).matrix().unwrap());
        assert!(matrix_diff(&ours, &rotation(a)) < 1e-12);
    }
    let zero = to_matrix(&RotationParams::zero().matrix().unwrap());
    assert!(matrix_diff(&zero, &identity(2)) < 1e-15);
}

#[test]
fn every_table_entry_is_unitary_and_matches_printed_product() {
    let (t1, t2) = attack_key();
    let table = build_vtable(&params(t1), &params(t2)).unwrap();
    assert_eq!(table.len(), 64);
    for (n, op) in table.iter().enumerate() {
        let ours = columns_to_matrix(&op.to_columns().unwrap());
        assert!(is_unitary(&ours, 1e-10), "V_{n} not unitary");
        // printed groups are products read left to right; concatenating them is the full product
        let factors: Vec<(usize, usize)> = ENCODING_TABLE[n]
            .iter()
            .flat_map(|g| g.iter().map(|&ij| ((ij / 10) as usize, (ij % 10) as usize)))
            .collect();
        let oracle = printed_product(6, &factors, t1, t2);
        assert!(matrix_diff(&ours, &oracle) < 1e-10, "V_{n} differs from its printed product");
    }
}

#[test]
fn named_operations_match_their_definitions() {
    let (t1, t2) = attack_key();
    let tri = columns_to_matrix(&u_tri(&params(t1), &params(t2)).unwrap().to_columns().unwrap());
    let bi = columns_to_matrix(&u_bi(&params(t1), &params(t2)).unwrap().to_columns().unwrap());
    let tri_oracle = printed_product(6, &[(3, 1), (2, 3), (1, 2), (6, 4), (5, 6), (4, 5)], t1, t2);
    let bi_oracle = printed_product(6, &[(2, 1), (1, 2), (4, 3), (3, 4), (6, 5), (5, 6)], t1, t2);
    assert!(matrix_diff(&tri, &tri_oracle) < 1e-10);
    assert!(matrix_diff(&bi, &bi_oracle) < 1e-10);
    assert_eq!(builtin_blueprints()[63].edges(), u_bi_edges().as_slice());
}

fn u_bi_edges() -> Vec<qbc::quantum::Edge> {
    use qbc::quantum::Edge;
    [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)]
        .iter()
        .map(|&(c, t)| Edge::new(c, t))
        .collect()
}

#[test]
fn random_sequences_match_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let len = rng.random_range(1..16);
        let mut edges = Vec::new();
        let (a1, a2) = (random_angles(&mut rng), random_angles(&mut rng));
        let mut seq = GateSequence::new(6);
        for _ in 0..len {
            let c = rng.random_range(0..6);
            let t = (c + rng.random_range(1..6)) % 6;
            edges.push((c, t));
            seq.push(Gate::rotation(&ControlledRotation::new(c, t, params(a1), params(a2))).unwrap())
                .unwrap();
        }
        let input = random_state(6, &mut rng);
        let mut ours = input.clone();
        qbc::quantum::apply_sequence(&mut ours, &seq, &NoiseModel::ideal(), &mut rng).unwrap();
        let expected = circuit(6, &edges, a1, a2) * qbc_oracle::from_slice(input.amplitudes());
        let diff = max_abs_diff(ours.amplitudes(), expected.as_slice());
        assert!(diff < 1e-9, "case {case}: deviation {diff}");
        // the independent gate-by-gate assembly agrees as well
        assert!(matrix_diff(&dense_sequence(&seq), &circuit(6, &edges, a1, a2)) < 1e-10);
    }
}

#[test]
fn inverse_restores_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (t1, t2) = (random_angles(&mut rng), random_angles(&mut rng));
    for op in build_vtable(&params(t1), &params(t2)).unwrap().iter().step_by(7) {
        let input = random_state(6, &mut rng);
        let mut s = input.clone();
        op.apply_noiseless(&mut s).unwrap();
        op.inverse().apply_noiseless(&mut s).unwrap();
        assert!(max_abs_diff(s.amplitudes(), input.amplitudes()) < 1e-10);
    }
}
