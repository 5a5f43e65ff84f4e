//! Eavesdropper models and the statistics used to compare them.

pub mod attack;
pub mod matchrate;
pub mod objective;
pub mod optimize;
pub mod stats;
pub mod sweep;

pub use attack::{
    count_errors, simulate_eve_attack, simulate_eve_run, AttackResult, AttackRunRecord, EveState, Histogram,
};
pub use matchrate::{match_rate_study, MatchRateConfig, MatchRateCurve, Strategy};
pub use objective::{pair_objective, pair_state, LoopObjective};
pub use optimize::{
    optimize_loop, optimize_measurements, optimize_measurements_with, optimize_triangle, BlochAngles,
    MeasurementOptimum, OptimizerConfig,
};
pub use stats::{error_rate, p_exceed};
pub use sweep::{length_sweep, SweepConfig, SweepRow};
