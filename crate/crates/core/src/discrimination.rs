//! Deciding which of two known circuits produced a single encoded state.
//!
//! The register holds `3N` qubits: the encoded state on qubits `0..N` and two
//! auxiliary copies on `N..2N` and `2N..3N`. `S1` copies the label of the
//! state in the `U1` eigenbasis into the first auxiliary register, `S2` does
//! the same for `U2` into the second. Both are applied, `S1` first.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::try_map_runs;
use crate::quantum::{Gate, GateSequence, StateVector};
use crate::seed::SeedStream;

/// Largest register accepted by the discrimination routines.
pub const MAX_DISCRIMINATION_QUBITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    Circuit1,
    Circuit2,
}

impl Label {
    pub fn number(self) -> u8 {
        match self {
            Label::Circuit1 => 1,
            Label::Circuit2 => 2,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Guess {
    Circuit1,
    Circuit2,
    Inconclusive,
}

impl Guess {
    pub fn is_correct(self, truth: Label) -> bool {
        matches!(
            (self, truth),
            (Guess::Circuit1, Label::Circuit1) | (Guess::Circuit2, Label::Circuit2)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationInstance {
    n_qubits: usize,
    u1: GateSequence,
    u2: GateSequence,
    m: usize,
    true_label: Label,
}

impl DiscriminationInstance {
    pub fn new(u1: GateSequence, u2: GateSequence, m: usize, true_label: Label) -> Result<Self> {
        let n = u1.n_qubits();
        check_pair(&u1, &u2)?;
        if m >= 1 << n {
            return Err(Error::InvalidIndex {
                index: m,
                available: 1 << n,
            });
        }
        Ok(Self {
            n_qubits: n,
            u1,
            u2,
            m,
            true_label,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn true_label(&self) -> Label {
        self.true_label
    }

    pub fn u1(&self) -> &GateSequence {
        &self.u1
    }

    pub fn u2(&self) -> &GateSequence {
        &self.u2
    }

    fn true_circuit(&self) -> &GateSequence {
        match self.true_label {
            Label::Circuit1 => &self.u1,
            Label::Circuit2 => &self.u2,
        }
    }
}

fn check_pair(u1: &GateSequence, u2: &GateSequence) -> Result<()> {
    let n = u1.n_qubits();
    if n == 0 || n > MAX_DISCRIMINATION_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "discrimination supports 1..={MAX_DISCRIMINATION_QUBITS} qubits, got {n}"
        )));
    }
    if u2.n_qubits() != n {
        return Err(Error::InvalidParameter(format!(
            "circuits act on {n} and {} qubits",
            u2.n_qubits()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscriminationOutcome {
    pub guess: Guess,
    /// Readout of the first auxiliary register.
    pub first_aux: usize,
    /// Readout of the second auxiliary register; the index `l` compared
    /// against the final measurement.
    pub l: usize,
    /// Final readout of the data register, absent when inconclusive.
    pub final_outcome: Option<usize>,
}

impl DiscriminationOutcome {
    pub fn is_inconclusive(&self) -> bool {
        self.guess == Guess::Inconclusive
    }
}

/// `|n>|0> -> |n>|n>` on `2N` qubits.
pub fn copy_register_unitary(n_qubits: usize) -> Result<GateSequence> {
    GateSequence::from_gates(
        2 * n_qubits,
        (0..n_qubits).map(|i| Gate::cnot(i, n_qubits + i)).collect::<Result<Vec<_>>>()?,
    )
}

/// `U^-1` on the data register, copy into auxiliary register `slot`
/// (1 or 2), then `U`.
fn conjugated_copy(u: &GateSequence, n_qubits: usize, slot: usize) -> Result<GateSequence> {
    let total = 3 * n_qubits;
    let u_big = u.embed(0, total)?;
    let copies = (0..n_qubits)
        .map(|i| Gate::cnot(i, slot * n_qubits + i))
        .collect::<Result<Vec<_>>>()?;
    u_big
        .inverse()
        .then(&GateSequence::from_gates(total, copies)?)?
        .then(&u_big)
}

pub fn build_s1(u1: &GateSequence, n_qubits: usize) -> Result<GateSequence> {
    check_width(u1, n_qubits)?;
    conjugated_copy(u1, n_qubits, 1)
}

pub fn build_s2(u2: &GateSequence, n_qubits: usize) -> Result<GateSequence> {
    check_width(u2, n_qubits)?;
    conjugated_copy(u2, n_qubits, 2)
}

fn check_width(u: &GateSequence, n_qubits: usize) -> Result<()> {
    if u.n_qubits() != n_qubits || n_qubits == 0 || n_qubits > MAX_DISCRIMINATION_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "circuit on {} qubits used as an {n_qubits}-qubit register",
            u.n_qubits()
        )));
    }
    Ok(())
}

/// Single trial of the protocol.
///
/// Both auxiliary registers are read out; equal readouts are inconclusive.
/// Otherwise `U1^-1` is applied to the data register and circuit 1 is guessed
/// when the result equals the second auxiliary readout `l`.
pub fn run_discrimination<R: Rng + ?Sized>(inst: &DiscriminationInstance, rng: &mut R) -> Result<DiscriminationOutcome> {
    let n = inst.n_qubits;
    let s1 = build_s1(&inst.u1, n)?;
    let s2 = build_s2(&inst.u2, n)?;
    let u1_inv = inst.u1.inverse().embed(0, 3 * n)?;
    run_prepared(inst, &s1.then(&s2)?, &u1_inv, rng)
}

fn run_prepared<R: Rng + ?Sized>(
    inst: &DiscriminationInstance,
    s21: &GateSequence,
    u1_inv: &GateSequence,
    rng: &mut R,
) -> Result<DiscriminationOutcome> {
    let n = inst.n_qubits;
    let mut data = StateVector::basis(n, inst.m)?;
    inst.true_circuit().apply_noiseless(&mut data)?;
    let mut state = data.tensor(&StateVector::zero(2 * n)?)?;
    s21.apply_noiseless(&mut state)?;
    let first_aux = state.measure_register(n, n, rng)?;
    let l = state.measure_register(2 * n, n, rng)?;
    if first_aux == l {
        return Ok(DiscriminationOutcome {
            guess: Guess::Inconclusive,
            first_aux,
            l,
            final_outcome: None,
        });
    }
    u1_inv.apply_noiseless(&mut state)?;
    let r = state.measure_register(0, n, rng)?;
    Ok(DiscriminationOutcome {
        guess: if r == l { Guess::Circuit1 } else { Guess::Circuit2 },
        first_aux,
        l,
        final_outcome: Some(r),
    })
}

/// Overlap tables of the two encoded bases.
#[derive(Debug, Clone)]
pub struct Overlaps {
    dim: usize,
    /// `cross[n][k] = |<psi2_k|psi1_n>|^2`
    cross: Vec<Vec<f64>>,
    /// `diag2[l] = |<psi2_l|l>|^2`
    diag2: Vec<f64>,
}

impl Overlaps {
    pub fn new(u1: &GateSequence, u2: &GateSequence) -> Result<Self> {
        check_pair(u1, u2)?;
        let c1 = u1.to_columns()?;
        let c2 = u2.to_columns()?;
        let dim = c1.len();
        let inner = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>();
        let cross = (0..dim)
            .map(|n| (0..dim).map(|k| inner(&c2[k], &c1[n]).norm_sqr()).collect())
            .collect();
        let diag2 = (0..dim).map(|l| c2[l][l].norm_sqr()).collect();
        Ok(Self { dim, cross, diag2 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|<psi2_k|psi1_n>|^2`
    pub fn cross(&self, n: usize, k: usize) -> f64 {
        self.cross[n][k]
    }

    /// `|<psi2_l|l>|^2`
    pub fn diag2(&self, l: usize) -> f64 {
        self.diag2[l]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::InvalidIndex {
                index: i,
                available: self.dim,
            });
        }
        Ok(())
    }

    /// `P = 1 - |<psi2_m|psi1_m>|^2 - sum_{l != m} |<psi2_l|psi1_m>|^2 |<psi2_l|l>|^2`
    pub fn printed_probability(&self, m: usize) -> Result<f64> {
        self.check_index(m)?;
        let tail: f64 = (0..self.dim)
            .filter(|&l| l != m)
            .map(|l| self.cross[m][l] * self.diag2[l])
            .sum();
        Ok(1.0 - self.cross[m][m] - tail)
    }

    /// `[1 - |<psi2_m|psi1_m>|^2] [1 - |<psi2_l|l>|^2]`
    pub fn lower_bound(&self, m: usize, l: usize) -> Result<f64> {
        self.check_index(m)?;
        self.check_index(l)?;
        Ok((1.0 - self.cross[m][m]) * (1.0 - self.diag2[l]))
    }

    /// Exact probability that a trial of [`run_discrimination`] guesses right.
    pub fn exact_probability(&self, m: usize, truth: Label) -> Result<f64> {
        self.check_index(m)?;
        let d = self.dim;
        let guess1 = |k: usize| self.cross[k][k];
        Ok(match truth {
            Label::Circuit1 => (0..d).filter(|&k| k != m).map(|k| self.cross[m][k] * guess1(k)).sum(),
            Label::Circuit2 => (0..d)
                .map(|n| {
                    let weight = self.cross[n][m];
                    let inner: f64 = (0..d)
                        .filter(|&k| k != n)
                        .map(|k| self.cross[n][k] * (1.0 - guess1(k)))
                        .sum();
                    weight * inner
                })
                .sum(),
        })
    }

    /// Largest deviation between the final-step success `|<psi1_l|psi2_l>|^2`
    /// and `1 - |<psi2_l|l>|^2`. When zero, the printed probability equals the
    /// exact one for circuit 1.
    pub fn assumption_gap(&self) -> f64 {
        (0..self.dim)
            .map(|l| (self.cross[l][l] - (1.0 - self.diag2[l])).abs())
            .fold(0.0, f64::max)
    }
}

pub fn success_probability(u1: &GateSequence, u2: &GateSequence, m: usize) -> Result<f64> {
    Overlaps::new(u1, u2)?.printed_probability(m)
}

pub fn success_lower_bound(u1: &GateSequence, u2: &GateSequence, m: usize, l: usize) -> Result<f64> {
    Overlaps::new(u1, u2)?.lower_bound(m, l)
}

pub fn exact_success_probability(u1: &GateSequence, u2: &GateSequence, m: usize, truth: Label) -> Result<f64> {
    Overlaps::new(u1, u2)?.exact_probability(m, truth)
}

/// Frobenius norm of `S1 S2 - S2 S1`.
pub fn commutator_norm(u1: &GateSequence, u2: &GateSequence) -> Result<f64> {
    check_pair(u1, u2)?;
    let n = u1.n_qubits();
    let s1 = build_s1(u1, n)?;
    let s2 = build_s2(u2, n)?;
    let a = s1.then(&s2)?.to_columns()?;
    let b = s2.then(&s1)?.to_columns()?;
    let ss: f64 = a
        .iter()
        .zip(&b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm_sqr()))
        .sum();
    Ok(ss.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminationTally {
    pub m: usize,
    pub true_label: u8,
    pub trials: usize,
    pub correct: usize,
    pub incorrect: usize,
    pub inconclusive: usize,
    pub analytic_p: f64,
}

impl DiscriminationTally {
    pub fn frequency(&self) -> f64 {
        self.correct as f64 / self.trials as f64
    }
}

/// Runs `trials` independent trials; trial `j` uses `seeds.rng(j)`.
pub fn run_trials(inst: &DiscriminationInstance, trials: usize, seeds: &SeedStream) -> Result<DiscriminationTally> {
    if trials == 0 {
        return Err(Error::InvalidParameter("number of trials must be positive".into()));
    }
    let n = inst.n_qubits;
    let s21 = build_s1(&inst.u1, n)?.then(&build_s2(&inst.u2, n)?)?;
    let u1_inv = inst.u1.inverse().embed(0, 3 * n)?;
    let outcomes = try_map_runs(trials, |j| run_prepared(inst, &s21, &u1_inv, &mut seeds.rng(j as u64)))?;
    let correct = outcomes.iter().filter(|o| o.guess.is_correct(inst.true_label)).count();
    let inconclusive = outcomes.iter().filter(|o| o.is_inconclusive()).count();
    Ok(DiscriminationTally {
        m: inst.m,
        true_label: inst.true_label.number(),
        trials,
        correct,
        incorrect: trials - correct - inconclusive,
        inconclusive,
        analytic_p: success_probability(&inst.u1, &inst.u2, inst.m)?,
    })
}

/// Monte-Carlo frequency against the printed and exact probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discrepancy {
    pub tally: DiscriminationTally,
    pub exact_p: f64,
    /// `|frequency - printed| / sigma`, with `sigma` the binomial standard
    /// error at the exact probability (floored at one count).
    pub z_printed: f64,
    pub z_exact: f64,
    pub flagged: bool,
}

pub const DISCREPANCY_SIGMAS: f64 = 5.0;

pub fn cross_validate(inst: &DiscriminationInstance, trials: usize, seeds: &SeedStream) -> Result<Discrepancy> {
    let tally = run_trials(inst, trials, seeds)?;
    let exact_p = exact_success_probability(&inst.u1, &inst.u2, inst.m, inst.true_label)?;
    let t = trials as f64;
    let sigma = (exact_p * (1.0 - exact_p) / t).sqrt().max(1.0 / t);
    let freq = tally.frequency();
    let z_printed = (freq - tally.analytic_p).abs() / sigma;
    Ok(Discrepancy {
        tally,
        exact_p,
        z_printed,
        z_exact: (freq - exact_p).abs() / sigma,
        flagged: z_printed > DISCREPANCY_SIGMAS,
    })
}
