use rand::Rng;

use super::codec::CharCode;
use super::vtable::{u_bi, u_tri, BLOCK_QUBITS};
use crate::error::{Error, Result};
use crate::quantum::{GateSequence, NoiseModel, RotationParams, StateVector};

/// Index of the auxiliary qubit in the coherent decoder register.
pub const AUX_QUBIT: usize = BLOCK_QUBITS;

fn check_block_op(op: &GateSequence) -> Result<()> {
    if op.n_qubits() != BLOCK_QUBITS {
        return Err(Error::InvalidGate(format!(
            "block operations act on {BLOCK_QUBITS} qubits, got {}",
            op.n_qubits()
        )));
    }
    Ok(())
}

/// Ciphertext `op |n>`.
pub fn encode_block<R: Rng + ?Sized>(
    n: CharCode,
    op: &GateSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<StateVector> {
    check_block_op(op)?;
    let mut state = StateVector::basis(BLOCK_QUBITS, n.index())?;
    op.apply(&mut state, noise, rng)?;
    Ok(state)
}

/// Applies `op^-1` and reads out all six qubits.
pub fn decode_block<R: Rng + ?Sized>(
    state: &StateVector,
    op: &GateSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<CharCode> {
    check_block_op(op)?;
    decode_with_inverse(state, &op.inverse(), noise, rng)
}

/// As [`decode_block`] with a precomputed inverse.
pub fn decode_with_inverse<R: Rng + ?Sized>(
    state: &StateVector,
    inverse: &GateSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<CharCode> {
    let mut s = state.clone();
    inverse.apply(&mut s, noise, rng)?;
    Ok(CharCode::wrapping(s.measure_z_all(rng)?))
}

/// Exact outcome distribution of a noiseless decode with `op`.
pub fn decode_distribution(state: &StateVector, op: &GateSequence) -> Result<Vec<f64>> {
    check_block_op(op)?;
    let mut s = state.clone();
    op.inverse().apply_noiseless(&mut s)?;
    Ok(s.probabilities())
}

/// Seven-qubit decoder for the parity schedule: `U_bi^-1` on the subspace
/// where the auxiliary qubit reads 0 and `U_tri^-1` where it reads 1.
///
/// Each branch gate is the inverse `u_ij`, i.e. `R^-1(theta1)` on control 0
/// and `R^-1(theta2)` on control 1, additionally gated on the auxiliary qubit.
pub fn build_coherent_decoder(theta1: &RotationParams, theta2: &RotationParams) -> Result<GateSequence> {
    let total = BLOCK_QUBITS + 1;
    let bi_inv = u_bi(theta1, theta2)?.inverse().embed(0, total)?;
    let tri_inv = u_tri(theta1, theta2)?.inverse().embed(0, total)?;
    bi_inv
        .conditioned_on(AUX_QUBIT, false)?
        .then(&tri_inv.conditioned_on(AUX_QUBIT, true)?)
}

/// Runs the coherent decoder with the auxiliary qubit prepared as `|aux>`,
/// where `aux` is the previously measured value of `q6`.
pub fn coherent_decode<R: Rng + ?Sized>(
    state: &StateVector,
    aux: bool,
    decoder: &GateSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<CharCode> {
    let mut s = prepare_with_aux(state, aux)?;
    decoder.apply(&mut s, noise, rng)?;
    let outcome = s.measure_register(0, BLOCK_QUBITS, rng)?;
    Ok(CharCode::wrapping(outcome))
}

pub fn prepare_with_aux(state: &StateVector, aux: bool) -> Result<StateVector> {
    if state.n_qubits() != BLOCK_QUBITS {
        return Err(Error::InvalidGate("coherent decoder expects a six-qubit block".into()));
    }
    state.tensor(&StateVector::basis(1, usize::from(aux))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::vtable::build_vtable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn theta() -> (RotationParams, RotationParams) {
        use std::f64::consts::PI;
        (
            RotationParams::new(0.0, 0.15 * PI, 0.72 * PI, 0.32 * PI),
            RotationParams::new(0.0, 0.45 * PI, 0.17 * PI, 1.64 * PI),
        )
    }

    #[test]
    fn zero_parameters_encode_to_basis_state() {
        let z = RotationParams::zero();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let op = &build_vtable(&z, &z).unwrap()[5];
        let s = encode_block(CharCode::new(17).unwrap(), op, &NoiseModel::ideal(), &mut rng).unwrap();
        assert_eq!(s.probability(17), 1.0);
    }

    #[test]
    fn second_dumas_block_round_trips() {
        let (t1, t2) = theta();
        let table = build_vtable(&t1, &t2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = CharCode::new(38).unwrap();
        let s = encode_block(l, &table[1], &NoiseModel::ideal(), &mut rng).unwrap();
        assert!(decode_distribution(&s, &table[1]).unwrap()[38] > 1.0 - 1e-9);
        assert_eq!(decode_block(&s, &table[1], &NoiseModel::ideal(), &mut rng).unwrap(), l);
    }

    #[test]
    fn coherent_decoder_inverts_matching_branch() {
        let (t1, t2) = theta();
        let decoder = build_coherent_decoder(&t1, &t2).unwrap();
        let bi = u_bi(&t1, &t2).unwrap();
        let tri = u_tri(&t1, &t2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [0u8, 13, 38, 63] {
            let code = CharCode::new(n).unwrap();
            let a = encode_block(code, &bi, &NoiseModel::ideal(), &mut rng).unwrap();
            assert_eq!(coherent_decode(&a, false, &decoder, &NoiseModel::ideal(), &mut rng).unwrap(), code);
            let b = encode_block(code, &tri, &NoiseModel::ideal(), &mut rng).unwrap();
            assert_eq!(coherent_decode(&b, true, &decoder, &NoiseModel::ideal(), &mut rng).unwrap(), code);
        }
    }

    #[test]
    fn wrong_register_size_is_rejected() {
        let op = GateSequence::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(encode_block(CharCode::SPACE, &op, &NoiseModel::ideal(), &mut rng).is_err());
    }
}
