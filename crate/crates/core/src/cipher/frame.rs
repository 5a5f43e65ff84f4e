//! Error-detecting auxiliary characters.
//!
//! Every `period`-th character of the framed message (1-based positions
//! `period, 2*period, ...`) is auxiliary. The first one is a space; the
//! `k`-th (`k >= 2`) repeats the framed character at position
//! `(k-1)*period - 1`. Positions always refer to the framed string as built.

use super::codec::{canonicalize, encode_text, CharCode};
use crate::error::{Error, Result};

pub const DEFAULT_PERIOD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedMessage {
    pub original: String,
    pub framed: String,
    pub period: usize,
}

fn check_period(period: usize) -> Result<()> {
    if period < 2 {
        return Err(Error::InvalidParameter(format!("frame period must be at least 2, got {period}")));
    }
    Ok(())
}

/// 1-based position the auxiliary at 1-based `position` copies, or `None` for the first one.
pub fn reference_position(position: usize, period: usize) -> Option<usize> {
    let k = position / period;
    (k >= 2).then(|| (k - 1) * period - 1)
}

pub fn is_auxiliary(position: usize, period: usize) -> bool {
    position.is_multiple_of(period)
}

/// Inserts auxiliaries between message symbols. No auxiliary is appended
/// after the final symbol.
pub fn frame_codes(codes: &[CharCode], period: usize) -> Result<Vec<CharCode>> {
    check_period(period)?;
    let mut framed = Vec::with_capacity(codes.len() + codes.len() / (period - 1) + 1);
    for &c in codes {
        let next = framed.len() + 1;
        if is_auxiliary(next, period) {
            let aux = match reference_position(next, period) {
                None => CharCode::SPACE,
                Some(r) => framed[r - 1],
            };
            framed.push(aux);
        }
        framed.push(c);
    }
    Ok(framed)
}

/// Drops auxiliary positions.
pub fn unframe_codes(framed: &[CharCode], period: usize) -> Vec<CharCode> {
    framed
        .iter()
        .enumerate()
        .filter(|(i, _)| !is_auxiliary(i + 1, period))
        .map(|(_, &c)| c)
        .collect()
}

/// 1-based auxiliary positions whose value disagrees with what they should copy.
pub fn verify_codes(framed: &[CharCode], period: usize) -> Vec<usize> {
    (1..=framed.len())
        .filter(|&p| is_auxiliary(p, period))
        .filter(|&p| {
            let expected = match reference_position(p, period) {
                None => CharCode::SPACE,
                Some(r) => framed[r - 1],
            };
            framed[p - 1] != expected
        })
        .collect()
}

pub fn frame_message(text: &str, period: usize) -> Result<FramedMessage> {
    let codes = encode_text(text)?;
    let framed = frame_codes(&codes, period)?;
    Ok(FramedMessage {
        original: canonicalize(text)?,
        framed: super::codec::decode_text(&framed),
        period,
    })
}

pub fn verify_frame(decoded: &str, period: usize) -> Result<Vec<usize>> {
    check_period(period)?;
    Ok(verify_codes(&encode_text(decoded)?, period))
}
