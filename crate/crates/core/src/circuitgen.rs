//! Encoding operations for registers of any size.
//!
//! Method I closes one loop of controlled rotations through every qubit in
//! permutation order. Method II splits the register into pairs and triplets
//! and loops each group independently.

use crate::cipher::keyfile::{export_vtable, GateEntry};
use crate::error::{Error, Result};
use crate::quantum::{Blueprint, Edge, GateSequence, RotationParams, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation(Vec<usize>);

impl QubitPermutation {
    pub fn new(p: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; p.len()];
        for &i in &p {
            if i >= p.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("{p:?} is not a permutation of 0..{}", p.len())));
            }
        }
        Ok(Self(p))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Edges `p0->p1, p1->p2, ..., p_{k-1}->p0` in application order.
fn cycle_edges(order: &[usize]) -> Vec<Edge> {
    let k = order.len();
    (0..k).map(|i| Edge::new(order[i], order[(i + 1) % k])).collect()
}

fn check_size(n: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::InvalidParameter(format!("loop needs 2..={MAX_QUBITS} qubits, got {n}")));
    }
    Ok(())
}

pub fn loop_blueprint(p: &QubitPermutation) -> Result<Blueprint> {
    check_size(p.len())?;
    Blueprint::new(p.len(), cycle_edges(p.as_slice()))
}

pub fn loop_from_permutation(
    p: &QubitPermutation,
    theta1: &RotationParams,
    theta2: &RotationParams,
) -> Result<GateSequence> {
    loop_blueprint(p)?.materialize(theta1, theta2)
}

/// Disjoint cover of `0..n` by groups of two or three qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n_qubits: usize,
    groups: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n_qubits: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        check_size(n_qubits)?;
        let mut seen = vec![false; n_qubits];
        for g in &groups {
            if !(2..=3).contains(&g.len()) {
                return Err(Error::InvalidParameter(format!(
                    "group {g:?} has {} qubits; groups must be pairs or triplets",
                    g.len()
                )));
            }
            for &q in g {
                if q >= n_qubits {
                    return Err(Error::InvalidParameter(format!("qubit {q} outside a {n_qubits}-qubit register")));
                }
                if std::mem::replace(&mut seen[q], true) {
                    return Err(Error::InvalidParameter(format!("qubit {q} appears in more than one group")));
                }
            }
        }
        if let Some(q) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!("qubit {q} is not covered by any group")));
        }
        Ok(Self { n_qubits, groups })
    }

    /// Consecutive pairs, with one trailing triplet when `n` is odd.
    pub fn consecutive(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let pairs = if n_qubits.is_multiple_of(2) { n_qubits / 2 } else { (n_qubits - 3) / 2 };
        let mut groups: Vec<Vec<usize>> = (0..pairs).map(|i| vec![2 * i, 2 * i + 1]).collect();
        if n_qubits % 2 == 1 {
            groups.push(vec![n_qubits - 3, n_qubits - 2, n_qubits - 1]);
        }
        Self::new(n_qubits, groups)
    }

    /// Consecutive triplets only; `n` must be a multiple of three.
    pub fn triplets(n_qubits: usize) -> Result<Self> {
        if !n_qubits.is_multiple_of(3) {
            return Err(Error::InvalidParameter(format!("{n_qubits} qubits cannot be split into triplets")));
        }
        Self::new(n_qubits, (0..n_qubits / 3).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }
}

pub fn partition_blueprint(partition: &Partition) -> Result<Blueprint> {
    let edges = partition.groups.iter().flat_map(|g| cycle_edges(g)).collect();
    Blueprint::new(partition.n_qubits, edges)
}

pub fn partition_encoding(
    partition: &Partition,
    theta1: &RotationParams,
    theta2: &RotationParams,
) -> Result<GateSequence> {
    partition_blueprint(partition)?.materialize(theta1, theta2)
}

/// Key-file gate lists for a generated operation set. The caller decides
/// which entry serves which previous-plaintext value by the order given.
pub fn to_vtable_entries(blueprints: &[Blueprint]) -> Vec<Vec<GateEntry>> {
    export_vtable(blueprints)
}
