use num_complex::Complex64;
use rand::Rng;

use super::noise::NoiseModel;
use super::rotation::{RotationParams, Unitary2};
use super::state::{bit_mask, StateVector};
use crate::error::{Error, Result};

/// Two-qubit gate `u_ij = |0><0|_i (x) R_j(params0) + |1><1|_i (x) R_j(params1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlledRotation {
    pub control: usize,
    pub target: usize,
    /// Rotation applied to the target when the control reads 0.
    pub params0: RotationParams,
    /// Rotation applied to the target when the control reads 1.
    pub params1: RotationParams,
}

impl ControlledRotation {
    pub fn new(control: usize, target: usize, params0: RotationParams, params1: RotationParams) -> Self {
        Self {
            control,
            target,
            params0,
            params1,
        }
    }
}

/// One element of a circuit.
///
/// The general form is a target qubit, an optional selector qubit choosing
/// between two branch matrices, and a list of `(qubit, value)` conditions
/// that must all hold for the gate to act at all. A plain single-qubit gate
/// has no selector and equal branches; a controlled rotation uses its
/// control as the selector; conditions express the auxiliary-qubit gating
/// of the coherent decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    target: usize,
    selector: Option<usize>,
    conditions: Vec<(usize, bool)>,
    on_zero: Unitary2,
    on_one: Unitary2,
}

impl Gate {
    pub fn single(target: usize, unitary: Unitary2) -> Self {
        Self {
            target,
            selector: None,
            conditions: Vec::new(),
            on_zero: unitary,
            on_one: unitary,
        }
    }

    /// Selector-controlled gate: `on_zero` when `selector` reads 0, `on_one` otherwise.
    pub fn controlled(selector: usize, target: usize, on_zero: Unitary2, on_one: Unitary2) -> Result<Self> {
        if selector == target {
            return Err(Error::InvalidGate(format!("control and target are both qubit {target}")));
        }
        Ok(Self {
            target,
            selector: Some(selector),
            conditions: Vec::new(),
            on_zero,
            on_one,
        })
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::controlled(control, target, Unitary2::IDENTITY, Unitary2::PAULI_X)
    }

    pub fn rotation(rot: &ControlledRotation) -> Result<Self> {
        Self::controlled(rot.control, rot.target, rot.params0.matrix()?, rot.params1.matrix()?)
    }

    /// Restricts the gate to the subspace where `qubit` reads `value`.
    pub fn conditioned_on(mut self, qubit: usize, value: bool) -> Result<Self> {
        if qubit == self.target || Some(qubit) == self.selector {
            return Err(Error::InvalidGate(format!("condition qubit {qubit} overlaps the gate")));
        }
        self.conditions.push((qubit, value));
        Ok(self)
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn selector(&self) -> Option<usize> {
        self.selector
    }

    pub fn conditions(&self) -> &[(usize, bool)] {
        &self.conditions
    }

    pub fn branches(&self) -> (Unitary2, Unitary2) {
        (self.on_zero, self.on_one)
    }

    pub fn inverse(&self) -> Self {
        Self {
            on_zero: self.on_zero.adjoint(),
            on_one: self.on_one.adjoint(),
            ..self.clone()
        }
    }

    /// Renumbers every qubit by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Self {
            target: self.target + offset,
            selector: self.selector.map(|s| s + offset),
            conditions: self.conditions.iter().map(|&(q, v)| (q + offset, v)).collect(),
            ..self.clone()
        }
    }

    fn max_qubit(&self) -> usize {
        let mut m = self.target;
        if let Some(s) = self.selector {
            m = m.max(s);
        }
        for &(q, _) in &self.conditions {
            m = m.max(q);
        }
        m
    }

    pub(crate) fn apply_to(&self, state: &mut StateVector) {
        let n = state.n_qubits();
        let tmask = bit_mask(n, self.target);
        let smask = self.selector.map(|s| bit_mask(n, s));
        let (cmask, cval) = self.conditions.iter().fold((0, 0), |(m, v), &(q, bit)| {
            let b = bit_mask(n, q);
            (m | b, if bit { v | b } else { v })
        });
        let amps: &mut [Complex64] = state.amplitudes_mut();
        for i in 0..amps.len() {
            if i & tmask != 0 || i & cmask != cval {
                continue;
            }
            let m = match smask {
                Some(s) if i & s != 0 => &self.on_one.0,
                _ => &self.on_zero.0,
            };
            let j = i | tmask;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a + m[0][1] * b;
            amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// An ordered circuit on a fixed register. Gates are stored in application
/// order: the first element acts first, which is the rightmost factor of a
/// written operator product.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSequence {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut seq = Self::new(n_qubits);
        for g in gates {
            seq.push(g)?;
        }
        Ok(seq)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.max_qubit() >= self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "gate touches qubit {} on a {}-qubit register",
                gate.max_qubit(),
                self.n_qubits
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Reverse-order sequence of inverted gates.
    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &GateSequence) -> Result<Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "cannot chain {}-qubit and {}-qubit sequences",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Self {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    /// Places this sequence on qubits `offset..offset + n` of a larger register.
    pub fn embed(&self, offset: usize, total_qubits: usize) -> Result<Self> {
        if offset + self.n_qubits > total_qubits {
            return Err(Error::InvalidGate(format!(
                "cannot place {} qubits at offset {offset} in a {total_qubits}-qubit register",
                self.n_qubits
            )));
        }
        Ok(Self {
            n_qubits: total_qubits,
            gates: self.gates.iter().map(|g| g.shifted(offset)).collect(),
        })
    }

    /// Adds `condition` to every gate.
    pub fn conditioned_on(&self, qubit: usize, value: bool) -> Result<Self> {
        let gates = self
            .gates
            .iter()
            .map(|g| g.clone().conditioned_on(qubit, value))
            .collect::<Result<Vec<_>>>()?;
        Self::from_gates(self.n_qubits, gates)
    }

    fn check_register(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "{}-qubit sequence applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        Ok(())
    }

    pub fn apply_noiseless(&self, state: &mut StateVector) -> Result<()> {
        self.check_register(state)?;
        for g in &self.gates {
            g.apply_to(state);
        }
        Ok(())
    }

    /// Applies every gate in order, following each with the noise channel on
    /// the gate's target.
    pub fn apply<R: Rng + ?Sized>(&self, state: &mut StateVector, noise: &NoiseModel, rng: &mut R) -> Result<()> {
        if noise.is_ideal() {
            return self.apply_noiseless(state);
        }
        self.check_register(state)?;
        for g in &self.gates {
            g.apply_to(state);
            noise.apply_channel(state, g.target, rng)?;
        }
        Ok(())
    }

    /// Dense matrix of the sequence, column `c` being the image of `|c>`.
    /// Stored column-major as `columns[c][r]`.
    pub fn to_columns(&self) -> Result<Vec<Vec<Complex64>>> {
        (0..1usize << self.n_qubits)
            .map(|c| {
                let mut s = StateVector::basis(self.n_qubits, c)?;
                self.apply_noiseless(&mut s)?;
                Ok(s.amplitudes().to_vec())
            })
            .collect()
    }
}

/// Free-function form of [`GateSequence::apply`].
pub fn apply_sequence<R: Rng + ?Sized>(
    state: &mut StateVector,
    seq: &GateSequence,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<()> {
    seq.apply(state, noise, rng)
}

/// Applies a single controlled rotation.
pub fn apply_controlled_rotation(state: &mut StateVector, gate: &ControlledRotation) -> Result<()> {
    state.check_qubit(gate.control)?;
    state.check_qubit(gate.target)?;
    Gate::rotation(gate)?.apply_to(state);
    Ok(())
}

/// A directed control edge `u_{control,target}` with 0-based qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub control: usize,
    pub target: usize,
}

impl Edge {
    pub const fn new(control: usize, target: usize) -> Self {
        Self { control, target }
    }
}

/// Structure of an encoding operation built only from `u_ij` gates sharing
/// one pair of rotation parameters. Edges are in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Blueprint {
    n_qubits: usize,
    edges: Vec<Edge>,
}

impl Blueprint {
    pub fn new(n_qubits: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.control == e.target || e.control >= n_qubits || e.target >= n_qubits {
                return Err(Error::InvalidGate(format!(
                    "edge {} -> {} invalid on {n_qubits} qubits",
                    e.control, e.target
                )));
            }
        }
        Ok(Self { n_qubits, edges })
    }

    /// Builds from a written product of factor groups such as
    /// `(u31 u23 u12) (x) (u64 u56 u45)`, given as 1-based two-digit labels.
    /// Within each group the rightmost factor is applied first; groups act on
    /// disjoint qubits and are applied in the listed order.
    pub fn from_printed(n_qubits: usize, groups: &[&[u8]]) -> Result<Self> {
        let mut edges = Vec::new();
        for group in groups {
            for &label in group.iter().rev() {
                let (i, j) = ((label / 10) as usize, (label % 10) as usize);
                if i == 0 || j == 0 {
                    return Err(Error::InvalidGate(format!("bad gate label u{label}")));
                }
                edges.push(Edge::new(i - 1, j - 1));
            }
        }
        Self::new(n_qubits, edges)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn materialize(&self, theta1: &RotationParams, theta2: &RotationParams) -> Result<GateSequence> {
        let (r1, r2) = (theta1.matrix()?, theta2.matrix()?);
        let gates = self
            .edges
            .iter()
            .map(|e| Gate::controlled(e.control, e.target, r1, r2))
            .collect::<Result<Vec<_>>>()?;
        GateSequence::from_gates(self.n_qubits, gates)
    }
}
