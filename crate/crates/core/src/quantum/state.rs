use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{MAX_QUBITS, TOL};

/// A complex probability amplitude.
pub type ComplexAmp = Complex64;

/// Normalized amplitude vector over `n_qubits` qubits.
///
/// Index bit order: qubit 0 is the most significant bit, so the ket label
/// `|10⟩` is index 2.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<ComplexAmp>,
}

impl PureState {
    /// Validates length, finiteness and normalization (within `1e-9`).
    pub fn new(amps: Vec<ComplexAmp>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Scales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(mut amps: Vec<ComplexAmp>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { n_qubits, amps })
    }

    /// Skips validation; callers guarantee the invariants (unitary evolution,
    /// renormalized projections).
    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<ComplexAmp>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> ComplexAmp {
        self.amps[index]
    }

    /// Σ|aᵢ|².
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `e^{iγ}`.
    pub fn with_global_phase(&self, gamma: f64) -> Self {
        let phase = Complex64::from_polar(1.0, gamma);
        Self::from_raw(self.n_qubits, self.amps.iter().map(|a| a * phase).collect())
    }

    /// Index of the basis state this is (up to global phase), if it is one.
    pub fn basis_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if (p - 1.0).abs() <= TOL {
                found = Some(i);
            } else if p > TOL {
                return None;
            }
        }
        found
    }

    /// Largest absolute amplitude difference to `other`.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for PureState {
    /// Sum-of-kets rendering, e.g. `(0.5+0.5i)|0⟩ + (0.5-0.5i)|1⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.basis_index() {
            let a = self.amps[i];
            if (a - Complex64::new(1.0, 0.0)).norm() <= TOL {
                return write!(f, "|{}⟩", ket_label(self.n_qubits, i));
            }
        }
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() <= 1e-12 {
                continue;
            }
            let amp = format_amp(*a);
            let amp = match (first, amp.strip_prefix('-')) {
                (true, _) => amp.as_str(),
                (false, Some(rest)) => {
                    f.write_str(" - ")?;
                    rest
                }
                (false, None) => {
                    f.write_str(" + ")?;
                    amp.as_str()
                }
            };
            first = false;
            write!(f, "{amp}|{}⟩", ket_label(self.n_qubits, i))?;
        }
        Ok(())
    }
}

/// Compact rendering of a complex amplitude with 6 decimals.
pub fn format_amp(a: ComplexAmp) -> String {
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let (re, im) = (clean(a.re), clean(a.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re:.6}"),
        (true, false) => format!("{im:.6}i"),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("({re:.6}{sign}{:.6}i)", im.abs())
        }
    }
}

/// Binary label of a basis index, qubit 0 leftmost.
pub fn ket_label(n_qubits: usize, index: usize) -> String {
    (0..n_qubits)
        .map(|q| {
            if index >> (n_qubits - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::BadLength(len));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    Ok(n)
}

/// Computational basis ket with amplitude 1 at `index`.
pub fn basis_state(n_qubits: usize, index: usize) -> Result<PureState> {
    if n_qubits == 0 {
        return Err(Error::BadLength(1));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    let dim = 1usize << n_qubits;
    if index >= dim {
        return Err(Error::IndexOutOfRange { n_qubits, index });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[index] = Complex64::new(1.0, 0.0);
    Ok(PureState::from_raw(n_qubits, amps))
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` for θ ∈ [0, π], φ ∈ [0, 2π).
pub fn pure_from_angles(theta: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::OutOfRange {
            what: "theta",
            value: theta,
            lo: 0.0,
            hi: PI,
        });
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(Error::OutOfRange {
            what: "phi",
            value: phi,
            lo: 0.0,
            hi: TAU,
        });
    }
    let half = theta / 2.0;
    Ok(PureState::from_raw(
        1,
        vec![
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), phi),
        ],
    ))
}

/// ⟨bra_of|ket⟩ = Σ conj(aᵢ)·bᵢ.
pub fn inner_product(bra_of: &PureState, ket: &PureState) -> Result<ComplexAmp> {
    if bra_of.n_qubits != ket.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: bra_of.n_qubits,
            got: ket.n_qubits,
        });
    }
    Ok(bra_of
        .amps
        .iter()
        .zip(&ket.amps)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Kronecker product; `a` supplies the most significant qubits.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    let n = a.n_qubits + b.n_qubits;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let amps = a
        .amps
        .iter()
        .flat_map(|x| b.amps.iter().map(move |y| x * y))
        .collect();
    Ok(PureState::from_raw(n, amps))
}
