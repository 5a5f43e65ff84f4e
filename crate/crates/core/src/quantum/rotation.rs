use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Four Euler-style angles `(t1, t2, t3, t4)` describing
/// `exp(-i t1) Rz(t2) Ry(t3) Rz(t4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RotationParams {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
}

impl RotationParams {
    pub const fn new(theta1: f64, theta2: f64, theta3: f64, theta4: f64) -> Self {
        Self {
            theta1,
            theta2,
            theta3,
            theta4,
        }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.theta1, self.theta2, self.theta3, self.theta4]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|t| t.is_finite())
    }

    pub fn matrix(&self) -> Result<Unitary2> {
        rotation_matrix(self)
    }
}

/// A 2x2 complex matrix, row-major. Constructors in this crate only ever
/// produce unitary matrices; [`Unitary2::from_rows`] checks the property.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub(crate) [[Complex64; 2]; 2]);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2([[ONE, ZERO], [ZERO, ONE]]);
    pub const PAULI_X: Unitary2 = Unitary2([[ZERO, ONE], [ONE, ZERO]]);
    pub const PAULI_Y: Unitary2 = Unitary2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]]);
    pub const PAULI_Z: Unitary2 = Unitary2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]]);

    pub fn from_rows(rows: [[Complex64; 2]; 2]) -> Result<Self> {
        let m = Unitary2(rows);
        if !m.is_unitary(1e-10) {
            return Err(Error::InvalidParameter(format!("matrix {rows:?} is not unitary")));
        }
        Ok(m)
    }

    pub fn rz(theta: f64) -> Self {
        Unitary2([
            [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
        ])
    }

    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Unitary2([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    /// Measurement basis whose `+` eigenvector has Bloch angles `(polar, azimuth)`:
    /// `Rz(azimuth) Ry(polar)`.
    pub fn bloch_basis(polar: f64, azimuth: f64) -> Self {
        Self::rz(azimuth) * Self::ry(polar)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        self.0
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = self.0;
        Unitary2([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    pub fn adjoint(&self) -> Self {
        let m = self.0;
        Unitary2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Column `bit` of the matrix, i.e. the image of `|bit>`.
    pub fn column(&self, bit: usize) -> [Complex64; 2] {
        [self.0[0][bit], self.0[1][bit]]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn max_abs_diff(&self, other: &Unitary2) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::IDENTITY) <= tol
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Unitary2(out)
    }
}

/// `exp(-i t1) Rz(t2) Ry(t3) Rz(t4)` with half-angle conventions
/// `Rz(t) = diag(e^{-it/2}, e^{it/2})` and `Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`.
pub fn rotation_matrix(params: &RotationParams) -> Result<Unitary2> {
    if !params.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rotation angles must be finite, got {:?}",
            params.to_array()
        )));
    }
    let core = Unitary2::rz(params.theta2) * Unitary2::ry(params.theta3) * Unitary2::rz(params.theta4);
    Ok(core.scale(Complex64::from_polar(1.0, -params.theta1)))
}
