use num_complex::Complex64;
use rand::Rng;

use super::rotation::Unitary2;
use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

const NORM_TOLERANCE: f64 = 1e-6;

/// Dense amplitude vector over `2^n` computational basis states.
///
/// Qubit 0 (`q1` in one-based labels) is the most significant bit of the basis
/// index, so `|38>` on six qubits is `|100110>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Outcome of a single-qubit measurement in a rotated basis `M`:
/// `Plus` selects `M|0>`, `Minus` selects `M|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisOutcome {
    Plus,
    Minus,
}

impl BasisOutcome {
    /// Bit carried by the outcome: `Plus -> 0`, `Minus -> 1`.
    pub fn bit(self) -> usize {
        match self {
            BasisOutcome::Plus => 0,
            BasisOutcome::Minus => 1,
        }
    }
}

pub(crate) fn bit_mask(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!(
                "register size {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an amplitude vector; the length must be a power of two and the
    /// squared norm within 1e-10 of one.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector length {dim} is not a power of two"
            )));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        let state = Self { n_qubits, amps };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::CorruptedState { norm_sqr });
        }
        Ok(state)
    }

    /// Normalizes an arbitrary non-zero vector.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self (x) other`, with `self` occupying the leading (most significant) qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::InvalidParameter(format!("tensor product of {n} qubits too large")));
        }
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { n_qubits: n, amps })
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    fn check_norm(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::CorruptedState { norm_sqr });
        }
        Ok(())
    }

    /// Applies a 2x2 unitary to one qubit.
    pub fn apply_single(&mut self, qubit: usize, u: &Unitary2) -> Result<()> {
        self.check_qubit(qubit)?;
        let mask = bit_mask(self.n_qubits, qubit);
        let m = u.rows();
        for i in 0..self.amps.len() {
            if i & mask != 0 {
                continue;
            }
            let j = i | mask;
            let (a, b) = (self.amps[i], self.amps[j]);
            self.amps[i] = m[0][0] * a + m[0][1] * b;
            self.amps[j] = m[1][0] * a + m[1][1] * b;
        }
        Ok(())
    }

    /// Born-rule measurement of every qubit in the computational basis.
    /// The state is left untouched; callers discard it after reading out.
    pub fn measure_z_all<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        self.check_norm()?;
        let u: f64 = rng.random::<f64>() * self.norm_sqr();
        Ok(sample_index(&self.amps, u))
    }

    /// Measures `len` consecutive qubits starting at `first` in the
    /// computational basis and collapses the state onto the result.
    /// The outcome is read with `first` as the most significant bit.
    pub fn measure_register<R: Rng + ?Sized>(&mut self, first: usize, len: usize, rng: &mut R) -> Result<usize> {
        if len == 0 || first + len > self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "register [{first}, {}) out of range for {} qubits",
                first + len,
                self.n_qubits
            )));
        }
        self.check_norm()?;
        let shift = self.n_qubits - first - len;
        let field = |i: usize| (i >> shift) & ((1 << len) - 1);
        let mut weights = vec![0.0; 1 << len];
        for (i, a) in self.amps.iter().enumerate() {
            weights[field(i)] += a.norm_sqr();
        }
        let total: f64 = weights.iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut outcome = None;
        for (v, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                outcome = Some(v);
                if u < w {
                    break;
                }
                u -= w;
            }
        }
        let outcome = outcome.expect("normalized state has non-zero weight");
        let scale = 1.0 / weights[outcome].sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if field(i) == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(outcome)
    }

    /// Measures one qubit in the basis `{M|0>, M|1>}` and collapses onto the
    /// selected eigenvector.
    pub fn measure_qubit_in_basis<R: Rng + ?Sized>(
        &mut self,
        qubit: usize,
        basis: &Unitary2,
        rng: &mut R,
    ) -> Result<BasisOutcome> {
        self.check_qubit(qubit)?;
        if !basis.is_unitary(1e-10) {
            return Err(Error::InvalidParameter("measurement basis is not unitary".into()));
        }
        self.check_norm()?;
        let mask = bit_mask(self.n_qubits, qubit);
        let plus = basis.column(0);
        let overlap = |amps: &[Complex64], i: usize, phi: [Complex64; 2]| {
            phi[0].conj() * amps[i] + phi[1].conj() * amps[i | mask]
        };
        let p_plus: f64 = (0..self.amps.len())
            .filter(|i| i & mask == 0)
            .map(|i| overlap(&self.amps, i, plus).norm_sqr())
            .sum();
        let total = self.norm_sqr();
        let outcome = if rng.random::<f64>() * total < p_plus {
            BasisOutcome::Plus
        } else {
            BasisOutcome::Minus
        };
        let phi = basis.column(outcome.bit());
        let p = match outcome {
            BasisOutcome::Plus => p_plus,
            BasisOutcome::Minus => total - p_plus,
        };
        let scale = 1.0 / p.sqrt();
        for i in 0..self.amps.len() {
            if i & mask != 0 {
                continue;
            }
            let proj = overlap(&self.amps, i, phi) * scale;
            self.amps[i] = phi[0] * proj;
            self.amps[i | mask] = phi[1] * proj;
        }
        Ok(outcome)
    }
}

/// Inverse-CDF sampling; falls back to the last index with non-zero weight
/// when rounding pushes `u` past the cumulative total.
fn sample_index(amps: &[Complex64], mut u: f64) -> usize {
    let mut last = 0;
    for (i, a) in amps.iter().enumerate() {
        let p = a.norm_sqr();
        if p > 0.0 {
            last = i;
            if u < p {
                return i;
            }
            u -= p;
        }
    }
    last
}
