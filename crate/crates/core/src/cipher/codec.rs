use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 6-bit plaintext symbol.
///
/// `0` is the word separator (space), `1..=26` are `A..=Z`, `27..=52` are
/// `a..=z`, `53..=62` are `0..=9` and `63` is the sentence mark, written `.`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharCode(u8);

impl CharCode {
    pub const SPACE: CharCode = CharCode(0);
    pub const MARK: CharCode = CharCode(63);
    pub const COUNT: usize = 64;

    pub fn new(value: u8) -> Result<Self> {
        if value as usize >= Self::COUNT {
            return Err(Error::InvalidParameter(format!("code {value} outside 0..=63")));
        }
        Ok(CharCode(value))
    }

    /// Low six bits of `value`.
    pub fn wrapping(value: usize) -> Self {
        CharCode((value % Self::COUNT) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_odd(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn all() -> impl Iterator<Item = CharCode> {
        (0..Self::COUNT as u8).map(CharCode)
    }
}

impl fmt::Display for CharCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", code_to_char(*self))
    }
}

/// Characters that all encode as the sentence mark.
pub const SENTENCE_MARKS: [char; 6] = [',', '.', ':', ';', '!', '?'];

pub fn char_to_code(c: char) -> Option<CharCode> {
    let v = match c {
        ' ' => 0,
        'A'..='Z' => c as u8 - b'A' + 1,
        'a'..='z' => c as u8 - b'a' + 27,
        '0'..='9' => c as u8 - b'0' + 53,
        _ if SENTENCE_MARKS.contains(&c) => 63,
        _ => return None,
    };
    Some(CharCode(v))
}

pub fn code_to_char(code: CharCode) -> char {
    match code.0 {
        0 => ' ',
        v @ 1..=26 => (b'A' + v - 1) as char,
        v @ 27..=52 => (b'a' + v - 27) as char,
        v @ 53..=62 => (b'0' + v - 53) as char,
        _ => '.',
    }
}

/// Removes line breaks and tabs, which have no code.
pub fn preprocess(text: &str) -> String {
    text.chars().filter(|c| !matches!(c, '\n' | '\r' | '\t')).collect()
}

/// Encodes every character, reporting the first unmappable one by 0-based position.
pub fn encode_text(text: &str) -> Result<Vec<CharCode>> {
    text.chars()
        .enumerate()
        .map(|(position, ch)| char_to_code(ch).ok_or(Error::UnmappableCharacter { ch, position }))
        .collect()
}

pub fn decode_text(codes: &[CharCode]) -> String {
    codes.iter().map(|&c| code_to_char(c)).collect()
}

/// Maps text onto the canonical 64-symbol alphabet (marks become `.`).
pub fn canonicalize(text: &str) -> Result<String> {
    encode_text(text).map(|codes| decode_text(&codes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_anchors() {
        assert_eq!(char_to_code('A'), Some(CharCode(1)));
        assert_eq!(char_to_code(' '), Some(CharCode(0)));
        assert_eq!(char_to_code('9'), Some(CharCode(62)));
        assert_eq!(char_to_code('l'), Some(CharCode(38)));
        assert_eq!(char_to_code('Z'), Some(CharCode(26)));
        assert_eq!(char_to_code('z'), Some(CharCode(52)));
        assert_eq!(char_to_code('0'), Some(CharCode(53)));
    }

    #[test]
    fn marks_canonicalize_to_period() {
        let code = char_to_code(':').unwrap();
        assert_eq!(code.value(), 63);
        assert_eq!(code_to_char(code), '.');
        for m in SENTENCE_MARKS {
            assert_eq!(char_to_code(m), Some(CharCode::MARK));
        }
    }

    #[test]
    fn round_trip_over_alphabet() {
        for code in CharCode::all() {
            assert_eq!(char_to_code(code_to_char(code)), Some(code));
        }
    }

    #[test]
    fn unmappable_reports_position() {
        match encode_text("ab@c") {
            Err(Error::UnmappableCharacter { ch, position }) => {
                assert_eq!(ch, '@');
                assert_eq!(position, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(encode_text("line\nbreak").is_err());
        assert_eq!(encode_text(&preprocess("line\nbreak")).unwrap().len(), 9);
    }

    #[test]
    fn code_range_checked() {
        assert!(CharCode::new(64).is_err());
        assert_eq!(CharCode::wrapping(1 + 38 + 64).value(), 39);
    }
}
