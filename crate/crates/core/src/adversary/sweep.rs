//! Eve's error statistics as a function of message length.

use rand::Rng;
use serde::Serialize;

use super::attack::{count_errors, simulate_eve_run, AttackRunRecord};
use super::stats::{error_rate, p_exceed};
use crate::cipher::{CharCode, KeySchedule};
use crate::error::{Error, Result};
use crate::parallel::try_map_runs;
use crate::seed::SeedStream;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub lengths: Vec<usize>,
    pub runs: usize,
    pub thresholds: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lengths: (10..=300).step_by(10).collect(),
            runs: 1000,
            thresholds: vec![0.25, 0.5, 0.75],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub length: usize,
    pub avg_err_rate: f64,
    pub p_x: f64,
    pub x: f64,
}

/// For every length, `runs` independent random messages are attacked with a
/// uniformly drawn first guess. Rows are ordered by length, then threshold.
pub fn length_sweep(schedule: &KeySchedule, config: &SweepConfig, seeds: &SeedStream) -> Result<Vec<SweepRow>> {
    if config.runs == 0 || config.lengths.is_empty() || config.lengths.contains(&0) {
        return Err(Error::InvalidParameter("sweep needs positive runs and lengths".into()));
    }
    let runs = config.runs;
    let errors = try_map_runs(config.lengths.len() * runs, |task| {
        let (li, j) = (task / runs, task % runs);
        let length = config.lengths[li];
        let mut rng = seeds.child(&format!("length-{length}")).rng(j as u64);
        let message: Vec<CharCode> = (0..length)
            .map(|_| CharCode::wrapping(rng.random_range(0..CharCode::COUNT)))
            .collect();
        let draw = rng.random_range(0..schedule.operation_count());
        let eve = simulate_eve_run(&message, schedule, draw, &mut rng)?;
        Ok::<_, Error>(count_errors(&message, &eve.history))
    })?;
    let mut rows = Vec::with_capacity(config.lengths.len() * config.thresholds.len());
    for (li, chunk) in errors.chunks(runs).enumerate() {
        let length = config.lengths[li];
        let records: Vec<AttackRunRecord> = chunk
            .iter()
            .enumerate()
            .map(|(run, &errors)| AttackRunRecord { run, errors })
            .collect();
        let r = error_rate(&records, length)?;
        for &x in &config.thresholds {
            rows.push(SweepRow {
                length,
                avg_err_rate: r,
                p_x: p_exceed(&records, x, length)?,
                x,
            });
        }
    }
    Ok(rows)
}
