//! Block cipher over six-qubit registers.

pub mod block;
pub mod codec;
pub mod frame;
pub mod keyfile;
pub mod schedule;
pub mod transmit;
pub mod vtable;

use std::f64::consts::PI;

use crate::quantum::RotationParams;

pub use block::{
    build_coherent_decoder, coherent_decode, decode_block, decode_distribution, decode_with_inverse,
    encode_block, prepare_with_aux, AUX_QUBIT,
};
pub use codec::{canonicalize, char_to_code, code_to_char, decode_text, encode_text, CharCode};
pub use frame::{frame_codes, frame_message, unframe_codes, verify_codes, verify_frame, FramedMessage, DEFAULT_PERIOD};
pub use keyfile::KeyFile;
pub use schedule::{KeySchedule, ScheduleMode};
pub use transmit::{transmit_codes, transmit_message, BlockRecord, Transcript, TransmitOptions};
pub use vtable::{build_vtable, builtin_blueprints, pair_blueprint, triangle_blueprint, u_bi, u_tri, BLOCK_QUBITS};

/// Reference plaintext used throughout the examples and tests.
pub const DUMAS_MESSAGE: &str =
    "All human wisdom is contained in these words. Wait and hope. The Count of Monte Cristo. Chap 117.";

/// Key angles of the reference attack experiment.
pub fn attack_key_theta() -> (RotationParams, RotationParams) {
    (
        RotationParams::new(0.0, 0.15 * PI, 0.72 * PI, 0.32 * PI),
        RotationParams::new(0.0, 0.45 * PI, 0.17 * PI, 1.64 * PI),
    )
}

/// Key angles of the reference match-rate experiment.
pub fn match_key_theta() -> (RotationParams, RotationParams) {
    (
        RotationParams::new(0.45 * PI, 4.04, 1.04, 0.92),
        RotationParams::new(0.0, 0.35, 0.55 * PI, 0.79),
    )
}
