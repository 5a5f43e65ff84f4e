use rand::Rng;

use super::rotation::Unitary2;
use super::state::StateVector;
use crate::error::{Error, Result};

/// Per-gate Pauli noise: after each gate, with probability `1 - F` a uniformly
/// chosen X, Y or Z hits the gate's target qubit.
///
/// `F = 1` never touches the RNG, so ideal runs consume the same random
/// stream as a simulation without any noise model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    fidelity: f64,
}

impl NoiseModel {
    pub fn new(fidelity: f64) -> Result<Self> {
        if !(fidelity > 0.0 && fidelity <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gate fidelity must lie in (0, 1], got {fidelity}"
            )));
        }
        Ok(Self { fidelity })
    }

    pub const fn ideal() -> Self {
        Self { fidelity: 1.0 }
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn is_ideal(&self) -> bool {
        self.fidelity >= 1.0
    }

    pub fn apply_channel<R: Rng + ?Sized>(&self, state: &mut StateVector, qubit: usize, rng: &mut R) -> Result<()> {
        if self.is_ideal() {
            return Ok(());
        }
        if rng.random::<f64>() < 1.0 - self.fidelity {
            let pauli = match rng.random_range(0..3) {
                0 => Unitary2::PAULI_X,
                1 => Unitary2::PAULI_Y,
                _ => Unitary2::PAULI_Z,
            };
            state.apply_single(qubit, &pauli)?;
        }
        Ok(())
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::ideal()
    }
}

/// Free-function form of [`NoiseModel::apply_channel`].
pub fn apply_noise_channel<R: Rng + ?Sized>(
    state: &mut StateVector,
    qubit: usize,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<()> {
    noise.apply_channel(state, qubit, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binomial_check(fidelity: f64, expected_p: f64, count_unchanged: impl Fn(&StateVector) -> bool) {
        let noise = NoiseModel::new(fidelity).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let trials = 100_000;
        let mut hits = 0;
        for _ in 0..trials {
            let mut s = StateVector::basis(1, 0).unwrap();
            noise.apply_channel(&mut s, 0, &mut rng).unwrap();
            if count_unchanged(&s) {
                hits += 1;
            }
        }
        let sigma = (trials as f64 * expected_p * (1.0 - expected_p)).sqrt();
        assert!(
            (hits as f64 - trials as f64 * expected_p).abs() < 4.0 * sigma,
            "hits {hits}, expected {}",
            trials as f64 * expected_p
        );
    }

    #[test]
    fn ideal_channel_never_changes_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let before = rng.clone();
        let mut s = StateVector::basis(2, 3).unwrap();
        for _ in 0..1000 {
            NoiseModel::ideal().apply_channel(&mut s, 1, &mut rng).unwrap();
        }
        assert_eq!(s, StateVector::basis(2, 3).unwrap());
        assert_eq!(rng, before);
    }

    #[test]
    fn fidelity_090_keeps_zero_with_expected_rate() {
        // unchanged or Z leaves |0> in place: F + (1 - F)/3
        binomial_check(0.9, 0.9 + 0.1 / 3.0, |s| s.probability(0) > 0.5);
    }

    #[test]
    fn fidelity_0995_disturbance_rate() {
        // X or Y flips |0>: (2/3)(1 - F)
        let p_flip = 2.0 / 3.0 * 0.005;
        binomial_check(0.995, 1.0 - p_flip, |s| s.probability(0) > 0.5);
    }

    #[test]
    fn fidelity_out_of_range_is_rejected() {
        assert!(NoiseModel::new(0.0).is_err());
        assert!(NoiseModel::new(1.5).is_err());
        assert!(NoiseModel::new(f64::NAN).is_err());
    }
}
