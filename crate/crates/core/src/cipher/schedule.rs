use std::fmt;

use super::codec::CharCode;
use super::vtable::{builtin_blueprints, pair_blueprint, triangle_blueprint, BLOCK_QUBITS};
use crate::error::{Error, Result};
use crate::quantum::{Blueprint, GateSequence, RotationParams};

/// How previous plaintext blocks select the next encoding operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScheduleMode {
    /// Two operations: `U_tri` after an odd block, `U_bi` after an even one.
    Parity,
    /// Entry `n(k-1)` of the 64-operation table.
    Table,
    /// Entry `(n(k-t') + ... + n(k-1)) mod 64` of the table.
    SumOfPrevious { t_prime: usize },
}

impl fmt::Display for ScheduleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleMode::Parity => write!(f, "parity"),
            ScheduleMode::Table => write!(f, "table"),
            ScheduleMode::SumOfPrevious { t_prime } => write!(f, "sum_prev({t_prime})"),
        }
    }
}

/// The shared key: selection rule, rotation parameters and operation set.
///
/// Operations are materialized once at construction; the schedule is
/// immutable afterwards and can be shared freely between threads.
#[derive(Debug, Clone)]
pub struct KeySchedule {
    mode: ScheduleMode,
    theta1: RotationParams,
    theta2: RotationParams,
    blueprints: Vec<Blueprint>,
    operations: Vec<GateSequence>,
    inverses: Vec<GateSequence>,
    initial_op: usize,
}

impl KeySchedule {
    /// Builds a schedule. For [`ScheduleMode::Parity`] the operation set is
    /// always `[U_bi, U_tri]` and `vtable` is ignored; otherwise `vtable`
    /// (or the built-in table when `None`) must hold 64 six-qubit entries.
    pub fn new(
        mode: ScheduleMode,
        theta1: RotationParams,
        theta2: RotationParams,
        vtable: Option<Vec<Blueprint>>,
        initial_op: usize,
    ) -> Result<Self> {
        let blueprints = match mode {
            ScheduleMode::Parity => vec![pair_blueprint(), triangle_blueprint()],
            ScheduleMode::Table | ScheduleMode::SumOfPrevious { .. } => {
                let table = vtable.unwrap_or_else(builtin_blueprints);
                if table.len() != CharCode::COUNT {
                    return Err(Error::InvalidKey(format!(
                        "operation table has {} entries, expected 64",
                        table.len()
                    )));
                }
                table
            }
        };
        if let ScheduleMode::SumOfPrevious { t_prime: 0 } = mode {
            return Err(Error::InvalidKey("t_prime must be at least 1".into()));
        }
        if let Some(bp) = blueprints.iter().find(|bp| bp.n_qubits() != BLOCK_QUBITS) {
            return Err(Error::InvalidKey(format!(
                "operation acts on {} qubits, expected {BLOCK_QUBITS}",
                bp.n_qubits()
            )));
        }
        if initial_op >= blueprints.len() {
            return Err(Error::InvalidKey(format!(
                "initial operation {initial_op} outside the {}-entry operation set",
                blueprints.len()
            )));
        }
        let operations = blueprints
            .iter()
            .map(|bp| bp.materialize(&theta1, &theta2))
            .collect::<Result<Vec<_>>>()?;
        let inverses = operations.iter().map(GateSequence::inverse).collect();
        Ok(Self {
            mode,
            theta1,
            theta2,
            blueprints,
            operations,
            inverses,
            initial_op,
        })
    }

    pub fn parity(theta1: RotationParams, theta2: RotationParams) -> Result<Self> {
        Self::new(ScheduleMode::Parity, theta1, theta2, None, 0)
    }

    pub fn table(theta1: RotationParams, theta2: RotationParams) -> Result<Self> {
        Self::new(ScheduleMode::Table, theta1, theta2, None, 0)
    }

    pub fn sum_of_previous(t_prime: usize, theta1: RotationParams, theta2: RotationParams) -> Result<Self> {
        Self::new(ScheduleMode::SumOfPrevious { t_prime }, theta1, theta2, None, 0)
    }

    /// Same key material under a different selection rule.
    pub fn with_mode(&self, mode: ScheduleMode) -> Result<Self> {
        let vtable = match self.mode {
            ScheduleMode::Parity => None,
            _ => Some(self.blueprints.clone()),
        };
        let initial = if matches!(mode, ScheduleMode::Parity) != matches!(self.mode, ScheduleMode::Parity) {
            0
        } else {
            self.initial_op
        };
        Self::new(mode, self.theta1, self.theta2, vtable, initial)
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    pub fn theta1(&self) -> RotationParams {
        self.theta1
    }

    pub fn theta2(&self) -> RotationParams {
        self.theta2
    }

    pub fn initial_op(&self) -> usize {
        self.initial_op
    }

    pub fn blueprints(&self) -> &[Blueprint] {
        &self.blueprints
    }

    pub fn operation_count(&self) -> usize {
        self.operations.len()
    }

    pub fn operation(&self, index: usize) -> &GateSequence {
        &self.operations[index]
    }

    pub fn inverse_operation(&self, index: usize) -> &GateSequence {
        &self.inverses[index]
    }

    /// Index of the operation encoding block `k`, given the codes of the
    /// blocks before it. Only `history[..k]` is consulted.
    pub fn select_index(&self, history: &[CharCode], k: usize) -> Result<usize> {
        if k > history.len() {
            return Err(Error::InvalidIndex {
                index: k,
                available: history.len(),
            });
        }
        if k == 0 {
            return Ok(self.initial_op);
        }
        let prev = history[k - 1];
        Ok(match self.mode {
            ScheduleMode::Parity => usize::from(prev.is_odd()),
            ScheduleMode::Table => prev.index(),
            ScheduleMode::SumOfPrevious { t_prime } => {
                // blocks before the start of the message count as 0
                let start = k.saturating_sub(t_prime);
                history[start..k].iter().map(|c| c.index()).sum::<usize>() % CharCode::COUNT
            }
        })
    }

    /// Operation for the block following `history`.
    pub fn next_index(&self, history: &[CharCode]) -> usize {
        self.select_index(history, history.len())
            .expect("history length is always a valid index")
    }

    pub fn select_encoding(&self, history: &[CharCode], k: usize) -> Result<&GateSequence> {
        Ok(self.operation(self.select_index(history, k)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(values: &[u8]) -> Vec<CharCode> {
        values.iter().map(|&v| CharCode::new(v).unwrap()).collect()
    }

    fn theta() -> (RotationParams, RotationParams) {
        (
            RotationParams::new(0.0, 0.47, 2.26, 1.01),
            RotationParams::new(0.0, 1.41, 0.53, 5.15),
        )
    }

    #[test]
    fn parity_selection() {
        let (t1, t2) = theta();
        let s = KeySchedule::parity(t1, t2).unwrap();
        assert_eq!(s.select_index(&[], 0).unwrap(), 0);
        assert_eq!(s.select_index(&codes(&[4]), 1).unwrap(), 0);
        assert_eq!(s.select_index(&codes(&[7]), 1).unwrap(), 1);
        assert_eq!(s.blueprints()[0], pair_blueprint());
        assert_eq!(s.blueprints()[1], triangle_blueprint());
    }

    #[test]
    fn table_selection() {
        let (t1, t2) = theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        assert_eq!(s.select_index(&[], 0).unwrap(), 0);
        assert_eq!(s.select_index(&codes(&[1]), 1).unwrap(), 1);
        assert_eq!(s.select_index(&codes(&[1, 38]), 2).unwrap(), 38);
    }

    #[test]
    fn sum_of_previous_selection() {
        let (t1, t2) = theta();
        let s = KeySchedule::sum_of_previous(2, t1, t2).unwrap();
        assert_eq!(s.select_index(&codes(&[1, 38]), 2).unwrap(), 39);
        assert_eq!(s.select_index(&codes(&[1]), 1).unwrap(), 1);
        assert_eq!(s.select_index(&codes(&[60, 10, 63]), 3).unwrap(), (10 + 63) % 64);
        let s3 = KeySchedule::sum_of_previous(3, t1, t2).unwrap();
        assert_eq!(s3.select_index(&codes(&[60, 10, 63]), 3).unwrap(), (60 + 10 + 63) % 64);
    }

    #[test]
    fn index_beyond_history_is_rejected() {
        let (t1, t2) = theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        assert!(matches!(s.select_index(&codes(&[1]), 2), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn invalid_keys_are_rejected() {
        let (t1, t2) = theta();
        assert!(KeySchedule::sum_of_previous(0, t1, t2).is_err());
        assert!(KeySchedule::new(ScheduleMode::Table, t1, t2, Some(vec![pair_blueprint()]), 0).is_err());
        assert!(KeySchedule::new(ScheduleMode::Parity, t1, t2, None, 2).is_err());
    }
}
