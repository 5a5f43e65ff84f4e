//! Dense reference matrices for cross-checking the state-vector simulator.
//!
//! Everything here is built from explicit Kronecker products and full matrix
//! multiplication. Nothing is shared with the simulator's kernels, so a test
//! comparing the two exercises two independent routes to the same operator.
//!
//! Qubit 0 is the most significant tensor factor (leftmost in the Kronecker
//! product), matching the basis-state numbering used by the simulator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type Matrix = DMatrix<Complex64>;
pub type Vector = DVector<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    Matrix::identity(dim, dim)
}

pub fn rz(theta: f64) -> Matrix {
    Matrix::from_row_slice(
        2,
        2,
        &[
            Complex64::from_polar(1.0, -theta / 2.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ],
    )
}

pub fn ry(theta: f64) -> Matrix {
    let (s, co) = (theta / 2.0).sin_cos();
    Matrix::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
}

/// `exp(-i t1) Rz(t2) Ry(t3) Rz(t4)` as an explicit product of the three factors.
pub fn rotation(theta: [f64; 4]) -> Matrix {
    let phase = Complex64::from_polar(1.0, -theta[0]);
    (rz(theta[1]) * ry(theta[2]) * rz(theta[3])) * phase
}

pub fn pauli_x() -> Matrix {
    Matrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn projector(bit: usize) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// Kronecker product of one 2x2 factor per qubit, qubit 0 leftmost.
pub fn kron_all(factors: &[Matrix]) -> Matrix {
    factors
        .iter()
        .fold(identity(1), |acc, f| acc.kronecker(f))
}

/// Full-register matrix of a 2x2 operator on `target`.
pub fn single(n: usize, target: usize, op: &Matrix) -> Matrix {
    let factors: Vec<Matrix> = (0..n)
        .map(|q| if q == target { op.clone() } else { identity(2) })
        .collect();
    kron_all(&factors)
}

/// `|0><0|_control (x) on_zero_target + |1><1|_control (x) on_one_target`.
pub fn controlled(n: usize, control: usize, target: usize, on_zero: &Matrix, on_one: &Matrix) -> Matrix {
    let branch = |bit: usize, op: &Matrix| {
        let factors: Vec<Matrix> = (0..n)
            .map(|q| {
                if q == control {
                    projector(bit)
                } else if q == target {
                    op.clone()
                } else {
                    identity(2)
                }
            })
            .collect();
        kron_all(&factors)
    };
    branch(0, on_zero) + branch(1, on_one)
}

/// Controlled rotation `u_ij`: rotation `theta1` on the control-0 branch, `theta2` on control-1.
pub fn u_gate(n: usize, control: usize, target: usize, theta1: [f64; 4], theta2: [f64; 4]) -> Matrix {
    controlled(n, control, target, &rotation(theta1), &rotation(theta2))
}

/// Matrix of a circuit given as `(control, target)` pairs in application order.
pub fn circuit(n: usize, edges: &[(usize, usize)], theta1: [f64; 4], theta2: [f64; 4]) -> Matrix {
    edges.iter().fold(identity(1 << n), |acc, &(ctl, tgt)| {
        u_gate(n, ctl, tgt, theta1, theta2) * acc
    })
}

/// Matrix of a printed operator product such as `u31 u23 u12` (1-based labels,
/// leftmost factor last), as a plain left-to-right matrix product.
pub fn printed_product(n: usize, factors: &[(usize, usize)], theta1: [f64; 4], theta2: [f64; 4]) -> Matrix {
    factors.iter().fold(identity(1 << n), |acc, &(i, j)| {
        acc * u_gate(n, i - 1, j - 1, theta1, theta2)
    })
}

/// `X^{b_0} (x) ... (x) X^{b_{n-1}}` for the bits of `value`, bit 0 most significant.
pub fn x_string(n: usize, value: usize) -> Matrix {
    let factors: Vec<Matrix> = (0..n)
        .map(|q| {
            if (value >> (n - 1 - q)) & 1 == 1 {
                pauli_x()
            } else {
                identity(2)
            }
        })
        .collect();
    kron_all(&factors)
}

pub fn basis(dim: usize, index: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[index] = c(1.0, 0.0);
    v
}

pub fn from_slice(amps: &[Complex64]) -> Vector {
    Vector::from_column_slice(amps)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_unitary(m: &Matrix, tol: f64) -> bool {
    let prod = m.adjoint() * m;
    let id = identity(m.nrows());
    (prod - id).iter().all(|z| z.norm() <= tol)
}
