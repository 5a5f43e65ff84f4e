//! Probability of recovering every one of the first `n` transmitted bits,
//! for several eavesdropping and receiving strategies under the parity
//! schedule.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::optimize::{optimize_measurements_with, optimize_triangle, OptimizerConfig};
use crate::cipher::{
    build_coherent_decoder, coherent_decode, encode_block, CharCode, KeySchedule, BLOCK_QUBITS,
};
use crate::error::{Error, Result};
use crate::parallel::try_map_runs;
use crate::quantum::{GateSequence, NoiseModel, RotationParams, StateVector, Unitary2};
use crate::seed::{SeedStream, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Computational-basis readout, first block labeled as `U_bi`.
    Z2,
    /// Computational-basis readout, first block labeled as `U_tri`.
    Z3,
    /// Per-qubit bases optimized against the two-qubit loop.
    Op2,
    /// Per-qubit bases optimized against the three-qubit loop.
    Op3,
    /// Legitimate receiver with the coherent decoder, high fidelity.
    B1,
    /// Legitimate receiver with the coherent decoder, low fidelity.
    B2,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Z2,
        Strategy::Z3,
        Strategy::Op2,
        Strategy::Op3,
        Strategy::B1,
        Strategy::B2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::Z2 => "Z2",
            Strategy::Z3 => "Z3",
            Strategy::Op2 => "OP2",
            Strategy::Op3 => "OP3",
            Strategy::B1 => "B1",
            Strategy::B2 => "B2",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownStrategy(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchRateConfig {
    pub max_bits: usize,
    pub trials: usize,
    pub b1_fidelity: f64,
    pub b2_fidelity: f64,
    pub optimizer: OptimizerConfig,
}

impl Default for MatchRateConfig {
    fn default() -> Self {
        Self {
            max_bits: 120,
            trials: 2000,
            b1_fidelity: 0.995,
            b2_fidelity: 0.9,
            optimizer: OptimizerConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchRateCurve {
    pub strategy: Strategy,
    /// `rates[n]` for `n = 0..=max_bits`.
    pub rates: Vec<f64>,
}

impl MatchRateCurve {
    /// Success rate of block `k` given all earlier blocks were recovered.
    pub fn block_success(&self) -> Vec<f64> {
        let blocks = (self.rates.len() - 1) / BLOCK_QUBITS;
        (0..blocks)
            .map(|k| {
                let before = self.rates[k * BLOCK_QUBITS];
                if before == 0.0 {
                    0.0
                } else {
                    self.rates[(k + 1) * BLOCK_QUBITS] / before
                }
            })
            .collect()
    }
}

enum Reader {
    Computational,
    Bases(Vec<Unitary2>),
    Receiver { decoder: GateSequence, noise: NoiseModel },
}

impl Reader {
    fn alice_noise(&self) -> NoiseModel {
        match self {
            Reader::Receiver { noise, .. } => *noise,
            _ => NoiseModel::ideal(),
        }
    }

    fn read(&self, state: StateVector, previous: Option<CharCode>, rng: &mut SimRng) -> Result<CharCode> {
        match self {
            Reader::Computational => Ok(CharCode::wrapping(state.measure_z_all(rng)?)),
            Reader::Bases(bases) => {
                let mut s = state;
                let mut code = 0;
                for (q, m) in bases.iter().enumerate() {
                    let bit = s.measure_qubit_in_basis(q, m, rng)?.bit();
                    code |= bit << (BLOCK_QUBITS - 1 - q);
                }
                Ok(CharCode::wrapping(code))
            }
            Reader::Receiver { decoder, noise } => {
                // the auxiliary carries the last qubit of the previous decode
                let aux = previous.is_some_and(CharCode::is_odd);
                coherent_decode(&state, aux, decoder, noise, rng)
            }
        }
    }
}

/// Index of the first wrong bit (most significant bit of each block first),
/// or `None` if all `max_bits` bits were recovered.
fn first_error(
    schedule: &KeySchedule,
    reader: &Reader,
    plaintext: &[CharCode],
    max_bits: usize,
    rng: &mut SimRng,
) -> Result<Option<usize>> {
    let noise = reader.alice_noise();
    let mut previous = None;
    for (k, &n) in plaintext.iter().enumerate() {
        let state = encode_block(n, schedule.select_encoding(plaintext, k)?, &noise, rng)?;
        let guess = reader.read(state, previous, rng)?;
        let diff = (guess.value() ^ n.value()) as usize;
        if diff != 0 {
            let within = diff.leading_zeros() as usize - (usize::BITS as usize - BLOCK_QUBITS);
            let bit = k * BLOCK_QUBITS + within;
            return Ok((bit < max_bits).then_some(bit));
        }
        previous = Some(guess);
    }
    Ok(None)
}

fn random_plaintext(blocks: usize, rng: &mut impl Rng) -> Vec<CharCode> {
    (0..blocks).map(|_| CharCode::wrapping(rng.random_range(0..CharCode::COUNT))).collect()
}

/// Runs `trials` random plaintexts of `max_bits` bits through each strategy.
///
/// Trial `j` shares its plaintext across strategies; measurement and noise
/// randomness come from a per-strategy stream.
pub fn match_rate_study(
    theta1: &RotationParams,
    theta2: &RotationParams,
    strategies: &[Strategy],
    config: &MatchRateConfig,
    seeds: &SeedStream,
) -> Result<Vec<MatchRateCurve>> {
    if config.trials == 0 || config.max_bits == 0 {
        return Err(Error::InvalidParameter("trials and max_bits must be positive".into()));
    }
    let schedule = KeySchedule::parity(*theta1, *theta2)?;
    let blocks = config.max_bits.div_ceil(BLOCK_QUBITS);
    let plaintexts = seeds.child("plaintext");
    strategies
        .iter()
        .map(|&strategy| {
            let reader = match strategy {
                Strategy::Z2 | Strategy::Z3 => Reader::Computational,
                Strategy::Op2 => {
                    let b = optimize_measurements_with(theta1, theta2, &config.optimizer)?.bases();
                    Reader::Bases((0..BLOCK_QUBITS).map(|q| b[q % 2]).collect())
                }
                Strategy::Op3 => {
                    let b = optimize_triangle(theta1, theta2, &config.optimizer)?.bases();
                    Reader::Bases((0..BLOCK_QUBITS).map(|q| b[q % 3]).collect())
                }
                Strategy::B1 | Strategy::B2 => {
                    let f = if strategy == Strategy::B1 {
                        config.b1_fidelity
                    } else {
                        config.b2_fidelity
                    };
                    Reader::Receiver {
                        decoder: build_coherent_decoder(theta1, theta2)?,
                        noise: NoiseModel::new(f)?,
                    }
                }
            };
            let stream = seeds.child(strategy.label());
            let outcomes = try_map_runs(config.trials, |j| {
                let text = random_plaintext(blocks, &mut plaintexts.rng(j as u64));
                first_error(&schedule, &reader, &text, config.max_bits, &mut stream.rng(j as u64))
            })?;
            let rates = (0..=config.max_bits)
                .map(|n| {
                    let ok = outcomes.iter().filter(|o| o.is_none_or(|bit| bit >= n)).count();
                    ok as f64 / config.trials as f64
                })
                .collect();
            Ok(MatchRateCurve { strategy, rates })
        })
        .collect()
}
