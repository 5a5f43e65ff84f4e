//! How well single-qubit measurements reveal the plaintext of a small
//! controlled-rotation loop.
//!
//! For a loop on `k` qubits and bases `M_1..M_k`, the outcome `o` selects the
//! product vector `phi(o) = M_1|o_1> ⊗ ... ⊗ M_k|o_k>`. With `psi(q)` the
//! encoded state of plaintext `q`,
//!
//! `f = sum_q [ |<phi(q)|psi(q)>|^2 - sum_{q'' != q} |<phi(q)|psi(q'')>|^2 ]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{rotation_matrix, GateSequence, RotationParams, Unitary2};

/// Encoded two-qubit state `u21 u12 |q1 q2>` from the amplitude formula
/// `<a b|psi> = <a|R_b|q1> <b|R_q1|q2>`, with `R_0 = R(theta1)` and
/// `R_1 = R(theta2)`. Index `2a + b`.
pub fn pair_state(theta1: &RotationParams, theta2: &RotationParams, q1: usize, q2: usize) -> Result<[Complex64; 4]> {
    if q1 > 1 || q2 > 1 {
        return Err(Error::InvalidParameter(format!("pair plaintext ({q1}, {q2}) is not two bits")));
    }
    let r = [rotation_matrix(theta1)?, rotation_matrix(theta2)?];
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for a in 0..2 {
        for b in 0..2 {
            out[2 * a + b] = r[b].entry(a, q1) * r[q1].entry(b, q2);
        }
    }
    Ok(out)
}

fn check_basis(m: &Unitary2) -> Result<()> {
    if m.is_unitary(1e-10) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("measurement basis is not unitary".into()))
    }
}

/// `f(M1, M2 | theta1, theta2)` evaluated term by term.
pub fn pair_objective(theta1: &RotationParams, theta2: &RotationParams, m1: &Unitary2, m2: &Unitary2) -> Result<f64> {
    check_basis(m1)?;
    check_basis(m2)?;
    let states = (0..4)
        .map(|q| pair_state(theta1, theta2, q >> 1, q & 1))
        .collect::<Result<Vec<_>>>()?;
    let mut f = 0.0;
    for q in 0..4 {
        let (c1, c2) = (m1.column(q >> 1), m2.column(q & 1));
        let projection = |psi: &[Complex64; 4]| {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    acc += (c1[a] * c2[b]).conj() * psi[2 * a + b];
                }
            }
            acc.norm_sqr()
        };
        for (other, psi) in states.iter().enumerate() {
            if other == q {
                f += projection(psi);
            } else {
                f -= projection(psi);
            }
        }
    }
    Ok(f)
}

/// Objective for a loop on `k` qubits with the encoded states precomputed.
#[derive(Debug, Clone)]
pub struct LoopObjective {
    n_qubits: usize,
    /// `states[q]` is the encoded image of plaintext `q`.
    states: Vec<Vec<Complex64>>,
}

impl LoopObjective {
    pub fn from_sequence(seq: &GateSequence) -> Result<Self> {
        if seq.n_qubits() > 4 {
            return Err(Error::InvalidParameter("loop objective supports at most 4 qubits".into()));
        }
        Ok(Self {
            n_qubits: seq.n_qubits(),
            states: seq.to_columns()?,
        })
    }

    pub fn pair(theta1: &RotationParams, theta2: &RotationParams) -> Result<Self> {
        let states = (0..4)
            .map(|q| pair_state(theta1, theta2, q >> 1, q & 1).map(|s| s.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_qubits: 2, states })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn product_vector(&self, bases: &[Unitary2], outcome: usize) -> Vec<Complex64> {
        let dim = 1 << self.n_qubits;
        (0..dim)
            .map(|i| {
                (0..self.n_qubits).fold(Complex64::new(1.0, 0.0), |acc, qubit| {
                    let shift = self.n_qubits - 1 - qubit;
                    acc * bases[qubit].entry((i >> shift) & 1, (outcome >> shift) & 1)
                })
            })
            .collect()
    }

    fn overlap(phi: &[Complex64], psi: &[Complex64]) -> f64 {
        phi.iter().zip(psi).map(|(a, b)| a.conj() * b).sum::<Complex64>().norm_sqr()
    }

    /// Full objective including cross terms.
    pub fn evaluate(&self, bases: &[Unitary2]) -> Result<f64> {
        if bases.len() != self.n_qubits {
            return Err(Error::InvalidParameter(format!(
                "expected {} bases, got {}",
                self.n_qubits,
                bases.len()
            )));
        }
        bases.iter().try_for_each(check_basis)?;
        let mut f = 0.0;
        for (q, _) in self.states.iter().enumerate() {
            let phi = self.product_vector(bases, q);
            for (other, psi) in self.states.iter().enumerate() {
                let p = Self::overlap(&phi, psi);
                f += if other == q { p } else { -p };
            }
        }
        Ok(f)
    }

    /// Same value via `f = 2 sum_q |<phi(q)|psi(q)>|^2 - 2^k`, which holds
    /// because both families are orthonormal bases. Unchecked; used in
    /// optimizer inner loops.
    pub fn evaluate_fast(&self, bases: &[Unitary2]) -> f64 {
        let diag: f64 = self
            .states
            .iter()
            .enumerate()
            .map(|(q, psi)| Self::overlap(&self.product_vector(bases, q), psi))
            .sum();
        2.0 * diag - self.states.len() as f64
    }
}
