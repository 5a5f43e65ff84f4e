use rand::Rng;
use serde::Serialize;

use super::block::{decode_with_inverse, encode_block};
use super::codec::{decode_text, encode_text, CharCode};
use super::frame::{frame_codes, is_auxiliary, reference_position, unframe_codes};
use super::schedule::KeySchedule;
use crate::error::{Error, Result};
use crate::quantum::NoiseModel;

pub const DEFAULT_MAX_RETRANSMISSIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitOptions {
    pub noise: NoiseModel,
    /// Auxiliary-character period; `None` sends the message unframed.
    pub frame_period: Option<usize>,
    /// Resends allowed for any single window before giving up.
    pub max_retransmissions: usize,
}

impl Default for TransmitOptions {
    fn default() -> Self {
        Self {
            noise: NoiseModel::ideal(),
            frame_period: None,
            max_retransmissions: DEFAULT_MAX_RETRANSMISSIONS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockRecord {
    pub index: usize,
    pub plaintext: CharCode,
    /// Operation Alice used.
    pub op: usize,
    /// Bob's measured outcome.
    pub decoded: CharCode,
    pub auxiliary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub blocks: Vec<BlockRecord>,
    pub retransmissions: usize,
    /// Blocks whose accepted decode differs from the plaintext.
    pub mismatches: usize,
    pub decoded_text: String,
}

/// Sends `text` block by block from Alice to Bob.
///
/// Alice selects each operation from the true plaintext history, Bob from
/// his own decoded history. With framing, Bob checks every auxiliary
/// against the symbol it copies; on a mismatch Alice restarts from the first
/// block after the previous auxiliary and Bob discards that window.
pub fn transmit_message<R: Rng + ?Sized>(
    text: &str,
    schedule: &KeySchedule,
    options: &TransmitOptions,
    rng: &mut R,
) -> Result<Transcript> {
    let codes = encode_text(text)?;
    transmit_codes(&codes, schedule, options, rng)
}

pub fn transmit_codes<R: Rng + ?Sized>(
    codes: &[CharCode],
    schedule: &KeySchedule,
    options: &TransmitOptions,
    rng: &mut R,
) -> Result<Transcript> {
    let sent = match options.frame_period {
        Some(period) => frame_codes(codes, period)?,
        None => codes.to_vec(),
    };
    let mut bob: Vec<CharCode> = Vec::with_capacity(sent.len());
    let mut blocks: Vec<BlockRecord> = Vec::with_capacity(sent.len());
    let mut retransmissions = 0;
    let mut window_start = 0;
    let mut window_retries = 0;
    let mut pos = 0;
    while pos < sent.len() {
        let alice_op = schedule.select_index(&sent, pos)?;
        let state = encode_block(sent[pos], schedule.operation(alice_op), &options.noise, rng)?;
        let bob_op = schedule.select_index(&bob, pos)?;
        let decoded = decode_with_inverse(&state, schedule.inverse_operation(bob_op), &options.noise, rng)?;
        bob.push(decoded);
        let auxiliary = options.frame_period.is_some_and(|p| is_auxiliary(pos + 1, p));
        blocks.push(BlockRecord {
            index: pos,
            plaintext: sent[pos],
            op: alice_op,
            decoded,
            auxiliary,
        });

        if let (true, Some(period)) = (auxiliary, options.frame_period) {
            let expected = reference_position(pos + 1, period).map_or(CharCode::SPACE, |r| bob[r - 1]);
            if decoded != expected {
                retransmissions += 1;
                window_retries += 1;
                if window_retries > options.max_retransmissions {
                    return Err(Error::TransmissionFailed {
                        block: window_start,
                        retransmissions,
                    });
                }
                bob.truncate(window_start);
                blocks.truncate(window_start);
                pos = window_start;
                continue;
            }
            window_start = pos + 1;
            window_retries = 0;
        }
        pos += 1;
    }
    let mismatches = blocks.iter().filter(|b| b.plaintext != b.decoded).count();
    let decoded_codes = match options.frame_period {
        Some(period) => unframe_codes(&bob, period),
        None => bob,
    };
    Ok(Transcript {
        blocks,
        retransmissions,
        mismatches,
        decoded_text: decode_text(&decoded_codes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{attack_key_theta, DUMAS_MESSAGE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_message_gives_empty_transcript() {
        let (t1, t2) = attack_key_theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = transmit_message("", &s, &TransmitOptions::default(), &mut rng).unwrap();
        assert!(t.blocks.is_empty());
        assert_eq!(t.decoded_text, "");
    }

    #[test]
    fn noiseless_framed_transmission_is_exact() {
        let (t1, t2) = attack_key_theta();
        let s = KeySchedule::sum_of_previous(2, t1, t2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let opts = TransmitOptions {
            frame_period: Some(10),
            ..Default::default()
        };
        let t = transmit_message(DUMAS_MESSAGE, &s, &opts, &mut rng).unwrap();
        assert_eq!(t.blocks.len(), 107);
        assert_eq!(t.retransmissions, 0);
        assert_eq!(t.mismatches, 0);
        assert_eq!(t.decoded_text, DUMAS_MESSAGE);
    }

    #[test]
    fn retransmission_limit_is_enforced() {
        let (t1, t2) = attack_key_theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let opts = TransmitOptions {
            noise: NoiseModel::new(0.5).unwrap(),
            frame_period: Some(10),
            max_retransmissions: 3,
        };
        let err = transmit_message(DUMAS_MESSAGE, &s, &opts, &mut rng).unwrap_err();
        assert!(matches!(err, Error::TransmissionFailed { .. }));
    }
}
