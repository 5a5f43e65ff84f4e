//! Maximizing the measurement objective over single-qubit bases.
//!
//! Each basis is `Rz(azimuth) Ry(polar)`; its global phase does not affect
//! outcome probabilities and is left out. A coarse grid locates candidate
//! optima, then a compass search polishes each one.

use std::f64::consts::PI;

use serde::Serialize;

use super::objective::LoopObjective;
use crate::cipher::vtable::TRIANGLE_LOOPS;
use crate::error::{Error, Result};
use crate::parallel::map_runs;
use crate::quantum::{Blueprint, RotationParams, Unitary2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points per angle.
    pub grid: usize,
    /// Grid candidates refined locally.
    pub starts: usize,
    /// Compass step at which refinement stops.
    pub tolerance: f64,
    /// Block-coordinate sweeps for loops with more than two qubits.
    pub sweeps: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid: 32,
            starts: 8,
            tolerance: 1e-10,
            sweeps: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochAngles {
    pub polar: f64,
    pub azimuth: f64,
}

impl BlochAngles {
    pub fn z() -> Self {
        Self { polar: 0.0, azimuth: 0.0 }
    }

    pub fn unitary(&self) -> Unitary2 {
        Unitary2::bloch_basis(self.polar, self.azimuth)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOptimum {
    pub angles: Vec<BlochAngles>,
    /// Best objective value found (`g`).
    pub value: f64,
    /// Objective with every qubit measured in the computational basis.
    pub z_value: f64,
}

impl MeasurementOptimum {
    pub fn bases(&self) -> Vec<Unitary2> {
        self.angles.iter().map(BlochAngles::unitary).collect()
    }
}

fn check_config(c: &OptimizerConfig) -> Result<()> {
    if c.grid < 2 || c.starts == 0 || c.tolerance <= 0.0 {
        return Err(Error::InvalidParameter(
            "optimizer needs grid >= 2, starts >= 1 and a positive tolerance".into(),
        ));
    }
    Ok(())
}

fn grid_points(grid: usize) -> Vec<BlochAngles> {
    let mut pts = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            pts.push(BlochAngles {
                polar: PI * i as f64 / (grid - 1) as f64,
                azimuth: 2.0 * PI * j as f64 / grid as f64,
            });
        }
    }
    pts
}

fn eval(obj: &LoopObjective, x: &[f64]) -> f64 {
    let bases: Vec<Unitary2> = x.chunks(2).map(|c| Unitary2::bloch_basis(c[0], c[1])).collect();
    obj.evaluate_fast(&bases)
}

fn compass(obj: &LoopObjective, mut x: Vec<f64>, step0: f64, tol: f64) -> (Vec<f64>, f64) {
    let mut best = eval(obj, &x);
    let mut step = step0;
    while step > tol {
        let mut improved = false;
        for d in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[d] += sign * step;
                let v = eval(obj, &y);
                if v > best {
                    best = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}

fn flatten(angles: &[BlochAngles]) -> Vec<f64> {
    angles.iter().flat_map(|a| [a.polar, a.azimuth]).collect()
}

fn unflatten(x: &[f64]) -> Vec<BlochAngles> {
    x.chunks(2)
        .map(|c| BlochAngles {
            polar: c[0],
            azimuth: c[1].rem_euclid(2.0 * PI),
        })
        .collect()
}

/// Grid candidates, best first.
fn pair_grid(obj: &LoopObjective, config: &OptimizerConfig) -> Vec<(f64, Vec<BlochAngles>)> {
    let pts = grid_points(config.grid);
    let unitaries: Vec<Unitary2> = pts.iter().map(BlochAngles::unitary).collect();
    let mut per_first: Vec<(f64, usize, usize)> = map_runs(pts.len(), |i| {
        let mut best = (f64::NEG_INFINITY, i, 0);
        for (j, u2) in unitaries.iter().enumerate() {
            let v = obj.evaluate_fast(&[unitaries[i], *u2]);
            if v > best.0 {
                best = (v, i, j);
            }
        }
        best
    });
    per_first.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    per_first
        .into_iter()
        .take(config.starts)
        .map(|(v, i, j)| (v, vec![pts[i], pts[j]]))
        .collect()
}

/// Cycles through the qubits, re-gridding one basis at a time.
fn block_coordinate(obj: &LoopObjective, config: &OptimizerConfig) -> Vec<(f64, Vec<BlochAngles>)> {
    let pts = grid_points(config.grid);
    let k = obj.n_qubits();
    // a few deterministic initial points, one per grid row offset
    map_runs(config.starts, |s| {
        let mut angles: Vec<BlochAngles> = (0..k)
            .map(|q| pts[(s * 131 + q * 37) % pts.len()])
            .collect();
        if s == 0 {
            angles = vec![BlochAngles::z(); k];
        }
        let mut value = f64::NEG_INFINITY;
        for _ in 0..config.sweeps {
            for q in 0..k {
                for p in &pts {
                    let mut trial = angles.clone();
                    trial[q] = *p;
                    let bases: Vec<Unitary2> = trial.iter().map(BlochAngles::unitary).collect();
                    let v = obj.evaluate_fast(&bases);
                    if v > value {
                        value = v;
                        angles = trial;
                    }
                }
            }
        }
        (value, angles)
    })
}

/// Maximizes the objective of `obj` over per-qubit bases.
pub fn optimize_loop(obj: &LoopObjective, config: &OptimizerConfig) -> Result<MeasurementOptimum> {
    check_config(config)?;
    let k = obj.n_qubits();
    let z_value = obj.evaluate_fast(&vec![Unitary2::IDENTITY; k]);
    let candidates = if k == 2 {
        pair_grid(obj, config)
    } else {
        block_coordinate(obj, config)
    };
    let step0 = PI / (config.grid - 1) as f64;
    let refined = map_runs(candidates.len(), |i| {
        let (x, v) = compass(obj, flatten(&candidates[i].1), step0, config.tolerance);
        (v, x)
    });
    let (value, x) = refined
        .into_iter()
        .fold((f64::NEG_INFINITY, Vec::new()), |best, c| if c.0 > best.0 { c } else { best });
    // the grid contains the computational basis, so this only guards rounding
    let (value, angles) = if value >= z_value {
        (value, unflatten(&x))
    } else {
        (z_value, vec![BlochAngles::z(); k])
    };
    Ok(MeasurementOptimum {
        angles,
        value,
        z_value,
    })
}

/// `g(theta1, theta2)`: best pair of bases for the two-qubit loop.
pub fn optimize_measurements(theta1: &RotationParams, theta2: &RotationParams) -> Result<MeasurementOptimum> {
    optimize_measurements_with(theta1, theta2, &OptimizerConfig::default())
}

pub fn optimize_measurements_with(
    theta1: &RotationParams,
    theta2: &RotationParams,
    config: &OptimizerConfig,
) -> Result<MeasurementOptimum> {
    optimize_loop(&LoopObjective::pair(theta1, theta2)?, config)
}

/// Three bases for the three-qubit loop `u31 u23 u12`.
pub fn optimize_triangle(
    theta1: &RotationParams,
    theta2: &RotationParams,
    config: &OptimizerConfig,
) -> Result<MeasurementOptimum> {
    let bp = Blueprint::from_printed(3, &TRIANGLE_LOOPS[..1])?;
    let obj = LoopObjective::from_sequence(&bp.materialize(theta1, theta2)?)?;
    optimize_loop(&obj, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn match_key() -> (RotationParams, RotationParams) {
        (
            RotationParams::new(0.45 * PI, 4.04, 1.04, 0.92),
            RotationParams::new(0.0, 0.35, 0.55 * PI, 0.79),
        )
    }

    #[test]
    fn trivial_key_is_optimal_in_z() {
        let z = RotationParams::zero();
        let opt = optimize_measurements(&z, &z).unwrap();
        assert!((opt.value - 4.0).abs() < 1e-9);
        assert!((opt.z_value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn optimum_dominates_z_and_converges() {
        let (t1, t2) = match_key();
        let coarse = optimize_measurements(&t1, &t2).unwrap();
        let fine = optimize_measurements_with(
            &t1,
            &t2,
            &OptimizerConfig {
                grid: 64,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(coarse.value >= coarse.z_value);
        assert!((coarse.value - fine.value).abs() < 1e-3);
        assert!(coarse.value <= 4.0 + 1e-12);
    }

    #[test]
    fn triangle_optimum_dominates_z() {
        let (t1, t2) = match_key();
        let opt = optimize_triangle(
            &t1,
            &t2,
            &OptimizerConfig {
                grid: 16,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(opt.angles.len(), 3);
        assert!(opt.value >= opt.z_value);
        assert!(opt.value <= 8.0 + 1e-12);
    }

    #[test]
    fn bad_config_rejected() {
        let z = RotationParams::zero();
        let c = OptimizerConfig {
            grid: 1,
            ..Default::default()
        };
        assert!(optimize_measurements_with(&z, &z, &c).is_err());
    }
}
