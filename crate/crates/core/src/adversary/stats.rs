//! Message-length statistics over attack records.

use super::attack::AttackRunRecord;
use crate::error::{Error, Result};

fn check(records: &[AttackRunRecord], length: usize) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no attack records".into()));
    }
    if length == 0 {
        return Err(Error::InvalidParameter("message length must be positive".into()));
    }
    Ok(())
}

/// Average error rate `R = sum(e_j) / (M L)`.
pub fn error_rate(records: &[AttackRunRecord], length: usize) -> Result<f64> {
    check(records, length)?;
    let total: usize = records.iter().map(|r| r.errors).sum();
    Ok(total as f64 / (records.len() * length) as f64)
}

/// Fraction of runs with strictly more than `x L` errors.
pub fn p_exceed(records: &[AttackRunRecord], x: f64, length: usize) -> Result<f64> {
    check(records, length)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("threshold fraction {x} outside [0, 1]")));
    }
    let limit = x * length as f64;
    let hits = records.iter().filter(|r| r.errors as f64 - limit > 0.0).count();
    Ok(hits as f64 / records.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recs(e: &[usize]) -> Vec<AttackRunRecord> {
        e.iter().enumerate().map(|(run, &errors)| AttackRunRecord { run, errors }).collect()
    }

    #[test]
    fn hand_arithmetic() {
        let r = recs(&[10, 20]);
        assert_eq!(error_rate(&r, 100).unwrap(), 0.15);
        assert_eq!(p_exceed(&r, 0.15, 100).unwrap(), 0.5);
        assert_eq!(p_exceed(&r, 0.1, 100).unwrap(), 0.5);
        assert_eq!(p_exceed(&r, 0.05, 100).unwrap(), 1.0);
        assert_eq!(p_exceed(&r, 0.2, 100).unwrap(), 0.0);
    }

    #[test]
    fn error_free_records() {
        let r = recs(&[0, 0, 0]);
        assert_eq!(error_rate(&r, 10).unwrap(), 0.0);
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(p_exceed(&r, x, 10).unwrap(), 0.0);
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(error_rate(&[], 10).is_err());
        assert!(error_rate(&recs(&[1]), 0).is_err());
        assert!(p_exceed(&recs(&[1]), 1.5, 10).is_err());
    }
}
