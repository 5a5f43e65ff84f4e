use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::cipher::{encode_block, CharCode, KeySchedule};
use crate::error::{Error, Result};
use crate::parallel::try_map_runs;
use crate::quantum::NoiseModel;
use crate::seed::SeedStream;

/// Eve's view of the conversation: her decoded guesses so far and the
/// operation she drew for the first block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EveState {
    pub history: Vec<CharCode>,
    pub initial_draw: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AttackRunRecord {
    pub run: usize,
    pub errors: usize,
}

/// Error-count frequencies over a set of runs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Histogram {
    counts: BTreeMap<usize, usize>,
    total: usize,
}

impl Histogram {
    pub fn from_records(records: &[AttackRunRecord]) -> Self {
        let mut h = Self::default();
        for r in records {
            *h.counts.entry(r.errors).or_default() += 1;
            h.total += 1;
        }
        h
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn count(&self, errors: usize) -> usize {
        self.counts.get(&errors).copied().unwrap_or(0)
    }

    /// `(errors, count)` pairs in increasing error order, non-zero counts only.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&e, &c)| (e, c))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackResult {
    pub records: Vec<AttackRunRecord>,
    pub histogram: Histogram,
}

impl AttackResult {
    pub fn mean_errors(&self) -> f64 {
        let n = self.records.len() as f64;
        self.records.iter().map(|r| r.errors as f64).sum::<f64>() / n
    }

    /// Sample standard deviation of the per-run error counts.
    pub fn std_errors(&self) -> f64 {
        let n = self.records.len() as f64;
        if n < 2.0 {
            return 0.0;
        }
        let mean = self.mean_errors();
        let ss: f64 = self.records.iter().map(|r| (r.errors as f64 - mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    }

    pub fn fraction_below(&self, threshold: usize) -> f64 {
        let hits = self.records.iter().filter(|r| r.errors < threshold).count();
        hits as f64 / self.records.len() as f64
    }
}

/// One eavesdropping run with a fixed first-block guess.
///
/// Alice encodes each block with the operation implied by the true history;
/// Eve inverts the operation implied by her own decoded history and reads
/// out in the computational basis. Returns Eve's guesses.
pub fn simulate_eve_run<R: Rng + ?Sized>(
    message: &[CharCode],
    schedule: &KeySchedule,
    initial_draw: usize,
    rng: &mut R,
) -> Result<EveState> {
    if initial_draw >= schedule.operation_count() {
        return Err(Error::InvalidIndex {
            index: initial_draw,
            available: schedule.operation_count(),
        });
    }
    let ideal = NoiseModel::ideal();
    let mut eve = EveState {
        history: Vec::with_capacity(message.len()),
        initial_draw,
    };
    for (k, &n) in message.iter().enumerate() {
        let state = encode_block(n, schedule.select_encoding(message, k)?, &ideal, rng)?;
        let op = if k == 0 {
            initial_draw
        } else {
            schedule.select_index(&eve.history, k)?
        };
        let mut s = state;
        schedule.inverse_operation(op).apply_noiseless(&mut s)?;
        eve.history.push(CharCode::wrapping(s.measure_z_all(rng)?));
    }
    Ok(eve)
}

pub fn count_errors(message: &[CharCode], guesses: &[CharCode]) -> usize {
    message.iter().zip(guesses).filter(|(a, b)| a != b).count()
}

/// Repeats [`simulate_eve_run`] `runs` times, drawing Eve's first operation
/// uniformly from the schedule's operation set. Run `j` uses `seeds.rng(j)`.
pub fn simulate_eve_attack(
    message: &[CharCode],
    schedule: &KeySchedule,
    runs: usize,
    seeds: &SeedStream,
) -> Result<AttackResult> {
    if runs == 0 {
        return Err(Error::InvalidParameter("number of runs must be positive".into()));
    }
    let records = try_map_runs(runs, |j| {
        let mut rng = seeds.rng(j as u64);
        let draw = rng.random_range(0..schedule.operation_count());
        let eve = simulate_eve_run(message, schedule, draw, &mut rng)?;
        Ok::<_, Error>(AttackRunRecord {
            run: j,
            errors: count_errors(message, &eve.history),
        })
    })?;
    let histogram = Histogram::from_records(&records);
    Ok(AttackResult { records, histogram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::{encode_text, attack_key_theta, DUMAS_MESSAGE};
    use crate::quantum::RotationParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_key_gives_no_errors() {
        let z = RotationParams::zero();
        let s = KeySchedule::sum_of_previous(2, z, z).unwrap();
        let msg = encode_text(DUMAS_MESSAGE).unwrap();
        let res = simulate_eve_attack(&msg, &s, 20, &SeedStream::new(1, "t")).unwrap();
        assert!(res.records.iter().all(|r| r.errors == 0));
        assert_eq!(res.histogram.count(0), 20);
    }

    #[test]
    fn correct_first_guess_never_errs_in_table_mode() {
        let (t1, t2) = attack_key_theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        let msg = encode_text(DUMAS_MESSAGE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let eve = simulate_eve_run(&msg, &s, s.initial_op(), &mut rng).unwrap();
        assert_eq!(eve.history, msg);
    }

    #[test]
    fn histogram_totals_match_runs() {
        let (t1, t2) = attack_key_theta();
        let s = KeySchedule::table(t1, t2).unwrap();
        let msg = encode_text("Wait and hope.").unwrap();
        let res = simulate_eve_attack(&msg, &s, 50, &SeedStream::new(2, "t")).unwrap();
        assert_eq!(res.histogram.total(), 50);
        assert_eq!(res.histogram.iter().map(|(_, c)| c).sum::<usize>(), 50);
        assert!(res.records.iter().all(|r| r.errors <= msg.len()));
    }

    #[test]
    fn zero_runs_is_rejected() {
        let z = RotationParams::zero();
        let s = KeySchedule::table(z, z).unwrap();
        assert!(simulate_eve_attack(&[], &s, 0, &SeedStream::new(0, "t")).is_err());
    }
}
