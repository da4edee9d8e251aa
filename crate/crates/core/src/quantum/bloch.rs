use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::state::PureState;
use crate::error::{Error, Result};

/// Point in the unit ball. The surface holds pure states, the interior
/// mixed states, and the origin the completely depolarized state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn length(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Polar angle `arccos(z/r)` in [0, π]; 0 at the origin.
    pub fn theta(&self) -> f64 {
        let r = self.length();
        if r == 0.0 {
            return 0.0;
        }
        (self.z / r).clamp(-1.0, 1.0).acos()
    }

    /// Azimuth `atan2(y, x)` in [0, 2π); 0 on the z-axis where it is undefined.
    pub fn phi(&self) -> f64 {
        let rho = self.x.hypot(self.y);
        if rho <= 1e-12 * self.length().max(1.0) {
            return 0.0;
        }
        let p = self.y.atan2(self.x);
        let p = if p < 0.0 { p + TAU } else { p };
        if p >= TAU {
            0.0
        } else {
            p
        }
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Bloch point of a single-qubit pure state; invariant under global phase.
pub fn bloch_from_pure(state: &PureState) -> Result<BlochVector> {
    if state.n_qubits() != 1 {
        return Err(Error::NotSingleQubit(state.n_qubits()));
    }
    let alpha = state.amplitude(0);
    let beta = state.amplitude(1);
    let coherence = alpha.conj() * beta;
    Ok(BlochVector::new(
        2.0 * coherence.re,
        2.0 * coherence.im,
        alpha.norm_sqr() - beta.norm_sqr(),
    ))
}

/// `(Tr(ρX), Tr(ρY), Tr(ρZ))` of a 2×2 density matrix.
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    // Tr(ρX) = 2 Re ρ₁₀, Tr(ρY) = 2 Im ρ₁₀, Tr(ρZ) = ρ₀₀ − ρ₁₁.
    let off = rho.get(1, 0);
    Ok(BlochVector::new(
        2.0 * off.re,
        2.0 * off.im,
        rho.get(0, 0).re - rho.get(1, 1).re,
    ))
}
