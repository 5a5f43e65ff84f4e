mod common;

use common::*;
use qbc::circuitgen::{loop_from_permutation, partition_encoding, Partition, QubitPermutation};
use qbc_oracle::{circuit, is_unitary, printed_product, Matrix};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn loop_block(k: usize, t1: [f64; 4], t2: [f64; 4]) -> Matrix {
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    circuit(k, &edges, t1, t2)
}

#[test]
fn partition_encoding_is_kronecker_of_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let shapes: &[&[usize]] = &[&[2], &[3], &[2, 2], &[2, 3], &[3, 2], &[2, 2, 2], &[3, 3], &[2, 2, 2]];
    for sizes in shapes {
        let (t1, t2) = (random_angles(&mut rng), random_angles(&mut rng));
        let n: usize = sizes.iter().sum();
        let mut start = 0;
        let groups: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&k| {
                let g = (start..start + k).collect();
                start += k;
                g
            })
            .collect();
        let ours = partition_encoding(&Partition::new(n, groups).unwrap(), &params(t1), &params(t2)).unwrap();
        let ours = columns_to_matrix(&ours.to_columns().unwrap());
        let oracle = sizes
            .iter()
            .fold(Matrix::identity(1, 1), |acc, &k| acc.kronecker(&loop_block(k, t1, t2)));
        assert!(matrix_diff(&ours, &oracle) < 1e-10, "{sizes:?}");
        assert!(is_unitary(&ours, 1e-10));
    }
}

#[test]
fn three_qubit_loop_matches_printed_factor() {
    let (t1, t2) = attack_key();
    let ours = loop_from_permutation(&QubitPermutation::identity(3), &params(t1), &params(t2)).unwrap();
    let oracle = printed_product(3, &[(3, 1), (2, 3), (1, 2)], t1, t2);
    assert!(matrix_diff(&columns_to_matrix(&ours.to_columns().unwrap()), &oracle) < 1e-10);
}

#[test]
fn permuted_loops_are_unitary_and_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=6 {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        let (t1, t2) = (random_angles(&mut rng), random_angles(&mut rng));
        let seq = loop_from_permutation(&QubitPermutation::new(p.clone()).unwrap(), &params(t1), &params(t2)).unwrap();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (p[i], p[(i + 1) % n])).collect();
        let m = columns_to_matrix(&seq.to_columns().unwrap());
        assert!(matrix_diff(&m, &circuit(n, &edges, t1, t2)) < 1e-10);
        let input = random_state(n, &mut rng);
        let mut s = input.clone();
        seq.apply_noiseless(&mut s).unwrap();
        seq.inverse().apply_noiseless(&mut s).unwrap();
        assert!(qbc_oracle::max_abs_diff(s.amplitudes(), input.amplitudes()) < 1e-10);
    }
}
