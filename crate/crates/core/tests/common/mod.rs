#![allow(dead_code)]

use num_complex::Complex64;
use qbc::quantum::{Gate, GateSequence, RotationParams, StateVector, Unitary2};
use qbc_oracle::{identity, kron_all, projector, Matrix};
use rand::Rng;

pub fn attack_key() -> ([f64; 4], [f64; 4]) {
    use std::f64::consts::PI;
    (
        [0.0, 0.15 * PI, 0.72 * PI, 0.32 * PI],
        [0.0, 0.45 * PI, 0.17 * PI, 1.64 * PI],
    )
}

pub fn params(a: [f64; 4]) -> RotationParams {
    RotationParams::from_array(a)
}

pub fn random_angles(rng: &mut impl Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn to_matrix(u: &Unitary2) -> Matrix {
    Matrix::from_fn(2, 2, |r, c| u.entry(r, c))
}

/// Dense matrix of one gate assembled from projectors and Kronecker products.
pub fn dense_gate(n: usize, g: &Gate) -> Matrix {
    let (on0, on1) = g.branches();
    let branch = |bit: Option<usize>, op: &Unitary2| {
        let factors: Vec<Matrix> = (0..n)
            .map(|q| {
                if Some(q) == g.selector() {
                    projector(bit.unwrap())
                } else if q == g.target() {
                    to_matrix(op)
                } else {
                    identity(2)
                }
            })
            .collect();
        kron_all(&factors)
    };
    let core = match g.selector() {
        Some(_) => branch(Some(0), &on0) + branch(Some(1), &on1),
        None => branch(None, &on0),
    };
    if g.conditions().is_empty() {
        return core;
    }
    let factors: Vec<Matrix> = (0..n)
        .map(|q| match g.conditions().iter().find(|(c, _)| *c == q) {
            Some(&(_, v)) => projector(usize::from(v)),
            None => identity(2),
        })
        .collect();
    let p = kron_all(&factors);
    let id = identity(1 << n);
    &p * core + (id - &p)
}

pub fn dense_sequence(seq: &GateSequence) -> Matrix {
    let n = seq.n_qubits();
    seq.gates()
        .iter()
        .fold(identity(1 << n), |acc, g| dense_gate(n, g) * acc)
}

pub fn columns_to_matrix(cols: &[Vec<Complex64>]) -> Matrix {
    let d = cols.len();
    Matrix::from_fn(d, d, |r, c| cols[c][r])
}

pub fn matrix_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let amps = (0..1 << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}
