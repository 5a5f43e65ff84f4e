//! JSON key files.
//!
//! ```json
//! {
//!   "mode": "sum_prev",
//!   "t_prime": 2,
//!   "theta1": [0, {"pi": 0.15}, {"pi": 0.72}, {"pi": 0.32}],
//!   "theta2": [0, {"pi": 0.45}, {"pi": 0.17}, {"pi": 1.64}],
//!   "vtable": "builtin-64",
//!   "initial_op": 0
//! }
//! ```
//!
//! Angles are either plain radians or `{"pi": k}` for `k * pi`. An explicit
//! `vtable` is a list of 64 gate lists; each gate is
//! `{"control": i, "target": j}` with 1-based qubit labels, listed in
//! application order (first entry acts first).
//!
//! Rotation convention: `R = exp(-i t1) Rz(t2) Ry(t3) Rz(t4)` with
//! `Rz(t) = diag(e^{-it/2}, e^{it/2})` and `Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`.
//! Qubit `q1` is the most significant bit of a block. For the sum mode,
//! blocks before the start of the message count as 0.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::schedule::{KeySchedule, ScheduleMode};
use super::vtable::BLOCK_QUBITS;
use crate::error::{Error, Result};
use crate::quantum::{Blueprint, Edge, RotationParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    PiMultiple { pi: f64 },
}

impl Angle {
    pub fn radians(self) -> f64 {
        match self {
            Angle::Radians(r) => r,
            Angle::PiMultiple { pi } => pi * PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Parity,
    Table,
    SumPrev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuiltinTable {
    #[serde(rename = "builtin-64")]
    Builtin64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub control: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VTableSpec {
    Builtin(BuiltinTable),
    Explicit(Vec<Vec<GateEntry>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub mode: ModeName,
    #[serde(default = "default_t_prime")]
    pub t_prime: usize,
    pub theta1: [Angle; 4],
    pub theta2: [Angle; 4],
    pub vtable: VTableSpec,
    #[serde(default)]
    pub initial_op: usize,
}

fn default_t_prime() -> usize {
    1
}

fn params(angles: &[Angle; 4]) -> RotationParams {
    RotationParams::new(
        angles[0].radians(),
        angles[1].radians(),
        angles[2].radians(),
        angles[3].radians(),
    )
}

pub fn radians(p: &RotationParams) -> [Angle; 4] {
    p.to_array().map(Angle::Radians)
}

pub fn pi_multiples(k: [f64; 4]) -> [Angle; 4] {
    k.map(|pi| Angle::PiMultiple { pi })
}

/// Converts blueprints into key-file gate lists (1-based labels).
pub fn export_vtable(blueprints: &[Blueprint]) -> Vec<Vec<GateEntry>> {
    blueprints
        .iter()
        .map(|bp| {
            bp.edges()
                .iter()
                .map(|e| GateEntry {
                    control: e.control + 1,
                    target: e.target + 1,
                })
                .collect()
        })
        .collect()
}

fn import_vtable(entries: &[Vec<GateEntry>]) -> Result<Vec<Blueprint>> {
    entries
        .iter()
        .enumerate()
        .map(|(n, gates)| {
            let edges = gates
                .iter()
                .map(|g| {
                    let ok = |q: usize| (1..=BLOCK_QUBITS).contains(&q);
                    if !ok(g.control) || !ok(g.target) || g.control == g.target {
                        return Err(Error::InvalidKey(format!(
                            "vtable entry {n}: gate {}->{} invalid",
                            g.control, g.target
                        )));
                    }
                    Ok(Edge::new(g.control - 1, g.target - 1))
                })
                .collect::<Result<Vec<_>>>()?;
            Blueprint::new(BLOCK_QUBITS, edges)
        })
        .collect()
}

impl KeyFile {
    pub fn mode(&self) -> Result<ScheduleMode> {
        Ok(match self.mode {
            ModeName::Parity => ScheduleMode::Parity,
            ModeName::Table => ScheduleMode::Table,
            ModeName::SumPrev => {
                if self.t_prime == 0 {
                    return Err(Error::InvalidKey("t_prime must be at least 1".into()));
                }
                ScheduleMode::SumOfPrevious { t_prime: self.t_prime }
            }
        })
    }

    pub fn theta1(&self) -> RotationParams {
        params(&self.theta1)
    }

    pub fn theta2(&self) -> RotationParams {
        params(&self.theta2)
    }

    pub fn to_schedule(&self) -> Result<KeySchedule> {
        let (t1, t2) = (self.theta1(), self.theta2());
        if !t1.is_finite() || !t2.is_finite() {
            return Err(Error::InvalidKey("angles must be finite".into()));
        }
        let vtable = match &self.vtable {
            VTableSpec::Builtin(_) => None,
            VTableSpec::Explicit(entries) => {
                if entries.len() != 64 {
                    return Err(Error::InvalidKey(format!(
                        "explicit vtable has {} entries, expected 64",
                        entries.len()
                    )));
                }
                Some(import_vtable(entries)?)
            }
        };
        KeySchedule::new(self.mode()?, t1, t2, vtable, self.initial_op)
    }

    pub fn validate(&self) -> Result<()> {
        self.to_schedule().map(|_| ())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let key: KeyFile = serde_json::from_str(text)?;
        key.validate()?;
        Ok(key)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}
