//! The built-in set of 64 six-qubit encoding operations.
//!
//! Each entry is written as a product of disjoint factor groups of `u_ij`
//! labels (control `i`, target `j`, 1-based), exactly as the operator
//! products are written: `&[31, 23, 12]` is `u31 u23 u12`, so `u12` acts first.

use crate::error::Result;
use crate::quantum::{Blueprint, GateSequence, RotationParams};

pub const BLOCK_QUBITS: usize = 6;

/// Three-qubit loops on `{q1,q2,q3}` and `{q4,q5,q6}`.
pub const TRIANGLE_LOOPS: &[&[u8]] = &[&[31, 23, 12], &[64, 56, 45]];

/// Two-qubit loops on `{q1,q2}`, `{q3,q4}`, `{q5,q6}`.
pub const PAIR_LOOPS: &[&[u8]] = &[&[21, 12], &[43, 34], &[65, 56]];

#[rustfmt::skip]
pub const ENCODING_TABLE: [&[&[u8]]; 64] = [
    &[&[12, 21], &[34, 43], &[56, 65]], // 0
    &[&[12, 23, 31], &[45, 56, 64]], // 1
    &[&[12, 23, 31], &[46, 65, 54]], // 2
    &[&[12, 23, 31], &[54, 46, 65]], // 3
    &[&[12, 23, 31], &[56, 64, 45]], // 4
    &[&[12, 23, 31], &[64, 45, 56]], // 5
    &[&[12, 23, 31], &[65, 54, 46]], // 6
    &[&[13, 32, 21], &[45, 56, 64]], // 7
    &[&[13, 32, 21], &[46, 65, 54]], // 8
    &[&[13, 32, 21], &[54, 46, 65]], // 9
    &[&[13, 32, 21], &[56, 64, 45]], // 10
    &[&[13, 32, 21], &[64, 45, 56]], // 11
    &[&[13, 32, 21], &[65, 54, 46]], // 12
    &[&[21, 13, 32], &[45, 56, 64]], // 13
    &[&[21, 13, 32], &[46, 65, 54]], // 14
    &[&[21, 13, 32], &[54, 46, 65]], // 15
    &[&[21, 13, 32], &[56, 64, 45]], // 16
    &[&[21, 13, 32], &[64, 45, 56]], // 17
    &[&[21, 13, 32], &[65, 54, 46]], // 18
    &[&[23, 31, 12], &[45, 56, 64]], // 19
    &[&[23, 31, 12], &[46, 65, 54]], // 20
    &[&[23, 31, 12], &[54, 46, 65]], // 21
    &[&[23, 31, 12], &[56, 64, 45]], // 22
    &[&[23, 31, 12], &[64, 45, 56]], // 23
    &[&[23, 31, 12], &[65, 54, 46]], // 24
    &[&[31, 12, 23], &[45, 56, 64]], // 25
    &[&[31, 12, 23], &[46, 65, 54]], // 26
    &[&[13, 35, 51], &[24, 46, 62]], // 27
    &[&[13, 35, 51], &[26, 64, 42]], // 28
    &[&[13, 35, 51], &[42, 26, 64]], // 29
    &[&[13, 35, 51], &[46, 62, 24]], // 30
    &[&[13, 35, 51], &[62, 24, 46]], // 31
    &[&[13, 35, 51], &[64, 42, 26]], // 32
    &[&[15, 53, 31], &[24, 46, 62]], // 33
    &[&[15, 53, 31], &[26, 64, 42]], // 34
    &[&[15, 53, 31], &[42, 26, 64]], // 35
    &[&[15, 53, 31], &[46, 62, 24]], // 36
    &[&[15, 53, 31], &[62, 24, 46]], // 37
    &[&[15, 53, 31], &[64, 42, 26]], // 38
    &[&[31, 15, 53], &[24, 46, 62]], // 39
    &[&[31, 15, 53], &[26, 64, 42]], // 40
    &[&[31, 15, 53], &[42, 26, 64]], // 41
    &[&[31, 15, 53], &[46, 62, 24]], // 42
    &[&[31, 15, 53], &[62, 24, 46]], // 43
    &[&[31, 15, 53], &[64, 42, 26]], // 44
    &[&[35, 51, 13], &[24, 46, 62]], // 45
    &[&[35, 51, 13], &[26, 64, 42]], // 46
    &[&[35, 51, 13], &[42, 26, 64]], // 47
    &[&[35, 51, 13], &[46, 62, 24]], // 48
    &[&[35, 51, 13], &[62, 24, 46]], // 49
    &[&[35, 51, 13], &[64, 42, 26]], // 50
    &[&[51, 13, 35], &[24, 46, 62]], // 51
    &[&[51, 13, 35], &[26, 64, 42]], // 52
    &[&[51, 13, 35], &[42, 26, 64]], // 53
    &[&[51, 13, 35], &[46, 62, 24]], // 54
    &[&[51, 13, 35], &[62, 24, 46]], // 55
    &[&[51, 13, 35], &[64, 42, 26]], // 56
    &[&[53, 31, 15], &[24, 46, 62]], // 57
    &[&[53, 31, 15], &[26, 64, 42]], // 58
    &[&[53, 31, 15], &[42, 26, 64]], // 59
    &[&[53, 31, 15], &[46, 62, 24]], // 60
    &[&[53, 31, 15], &[62, 24, 46]], // 61
    &[&[53, 31, 15], &[64, 42, 26]], // 62
    // 63
    &[&[21, 12], &[43, 34], &[65, 56]],];

pub fn triangle_blueprint() -> Blueprint {
    Blueprint::from_printed(BLOCK_QUBITS, TRIANGLE_LOOPS).expect("static table is well formed")
}

pub fn pair_blueprint() -> Blueprint {
    Blueprint::from_printed(BLOCK_QUBITS, PAIR_LOOPS).expect("static table is well formed")
}

pub fn builtin_blueprints() -> Vec<Blueprint> {
    ENCODING_TABLE
        .iter()
        .map(|groups| Blueprint::from_printed(BLOCK_QUBITS, groups).expect("static table is well formed"))
        .collect()
}

/// The 64 built-in operations for the given rotation parameters.
pub fn build_vtable(theta1: &RotationParams, theta2: &RotationParams) -> Result<Vec<GateSequence>> {
    builtin_blueprints()
        .iter()
        .map(|bp| bp.materialize(theta1, theta2))
        .collect()
}

/// `U_tri`: both triangle loops.
pub fn u_tri(theta1: &RotationParams, theta2: &RotationParams) -> Result<GateSequence> {
    triangle_blueprint().materialize(theta1, theta2)
}

/// `U_bi`: the three pair loops.
pub fn u_bi(theta1: &RotationParams, theta2: &RotationParams) -> Result<GateSequence> {
    pair_blueprint().materialize(theta1, theta2)
}
