//! CSV output. Every writer emits its header even when there are no rows.

use std::io::Write;

use serde::Serialize;

use crate::adversary::{AttackRunRecord, Histogram, MatchRateCurve, MeasurementOptimum, SweepRow};
use crate::discrimination::DiscriminationTally;
use crate::error::Result;

pub const HISTOGRAM_HEADER: [&str; 2] = ["errors", "count"];
pub const RECORDS_HEADER: [&str; 2] = ["run", "errors"];
pub const MATCHRATE_HEADER: [&str; 3] = ["strategy", "n_bits", "correct_rate"];
pub const SWEEP_HEADER: [&str; 4] = ["length", "avg_err_rate", "p_x", "x"];
pub const DISCRIMINATION_HEADER: [&str; 7] = [
    "m",
    "true_label",
    "trials",
    "correct",
    "incorrect",
    "inconclusive",
    "analytic_p",
];
pub const OPTIMIZE_HEADER: [&str; 6] = ["circuit", "qubit", "polar", "azimuth", "g", "f_z"];

fn write_rows<W: Write, T: Serialize>(out: W, header: &[&str], rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_histogram<W: Write>(out: W, hist: &Histogram) -> Result<()> {
    write_rows(out, &HISTOGRAM_HEADER, hist.iter())
}

pub fn write_records<W: Write>(out: W, records: &[AttackRunRecord]) -> Result<()> {
    write_rows(out, &RECORDS_HEADER, records)
}

pub fn write_match_rates<W: Write>(out: W, curves: &[MatchRateCurve]) -> Result<()> {
    let rows = curves
        .iter()
        .flat_map(|c| c.rates.iter().enumerate().map(move |(n, &r)| (c.strategy.label(), n, r)));
    write_rows(out, &MATCHRATE_HEADER, rows)
}

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    write_rows(out, &SWEEP_HEADER, rows)
}

pub fn write_discrimination<W: Write>(out: W, rows: &[DiscriminationTally]) -> Result<()> {
    write_rows(out, &DISCRIMINATION_HEADER, rows)
}

/// One row per qubit of each named optimum.
pub fn write_optima<W: Write>(out: W, optima: &[(&str, &MeasurementOptimum)]) -> Result<()> {
    let rows = optima.iter().flat_map(|(name, opt)| {
        opt.angles
            .iter()
            .enumerate()
            .map(move |(q, a)| (*name, q + 1, a.polar, a.azimuth, opt.value, opt.z_value))
    });
    write_rows(out, &OPTIMIZE_HEADER, rows)
}
