use num_complex::Complex64;

use super::bloch::BlochVector;
use super::state::{ComplexAmp, PureState};
use crate::error::{Error, Result};
use crate::{MAX_QUBITS, TOL};

/// Weighted collection of pure states, all on the same number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::InvalidEnsemble("no members".into()));
        };
        let n = first.n_qubits();
        let mut total = 0.0;
        for (w, s) in &members {
            if !w.is_finite() || *w < 0.0 || *w > 1.0 {
                return Err(Error::InvalidEnsemble(format!("weight {w} outside [0, 1]")));
            }
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.n_qubits(),
                });
            }
            total += w;
        }
        if (total - 1.0).abs() > TOL {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].1.n_qubits()
    }
}

/// Hermitian, unit-trace, positive semidefinite operator stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<ComplexAmp>,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and eigenvalues ≥ −1e-9.
    pub fn new(dim: usize, entries: Vec<ComplexAmp>) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::BadLength(dim));
        }
        if dim.trailing_zeros() as usize > MAX_QUBITS {
            return Err(Error::TooManyQubits(dim.trailing_zeros() as usize));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("density matrix"));
        }
        let rho = Self { dim, entries };
        for i in 0..dim {
            for j in i..dim {
                if (rho.get(i, j) - rho.get(j, i).conj()).norm() > TOL {
                    return Err(Error::InvalidDensity(format!(
                        "not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TOL || tr.im.abs() > TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        if !rho.is_psd() {
            return Err(Error::InvalidDensity(
                "negative eigenvalue below -1e-9".into(),
            ));
        }
        Ok(rho)
    }

    /// `(I + x·X + y·Y + z·Z) / 2`.
    pub fn from_bloch(b: &BlochVector) -> Self {
        let half = |v: f64| Complex64::new(v / 2.0, 0.0);
        Self {
            dim: 2,
            entries: vec![
                half(1.0 + b.z),
                Complex64::new(b.x / 2.0, -b.y / 2.0),
                Complex64::new(b.x / 2.0, b.y / 2.0),
                half(1.0 - b.z),
            ],
        }
    }

    /// Maximally mixed state `I / dim`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let dim = 1 << n_qubits;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexAmp {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[ComplexAmp] {
        &self.entries
    }

    pub fn trace(&self) -> ComplexAmp {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Cholesky factorization of `ρ + 1e-9·I`; succeeds iff every eigenvalue
    /// of `ρ` is above `-1e-9`.
    fn is_psd(&self) -> bool {
        let n = self.dim;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut diag = self.get(j, j).re + TOL;
            for k in 0..j {
                diag -= l[j * n + k].norm_sqr();
            }
            if diag <= 0.0 {
                return false;
            }
            let ljj = diag.sqrt();
            l[j * n + j] = Complex64::new(ljj, 0.0);
            for i in j + 1..n {
                let mut v = self.get(i, j);
                for k in 0..j {
                    v -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = v / ljj;
            }
        }
        true
    }
}

/// `|Ψ⟩⟨Ψ|`.
pub fn density_from_pure(state: &PureState) -> DensityMatrix {
    let a = state.amplitudes();
    let dim = a.len();
    let entries = (0..dim * dim)
        .map(|k| a[k / dim] * a[k % dim].conj())
        .collect();
    DensityMatrix { dim, entries }
}

/// `Σₖ pₖ |Ψₖ⟩⟨Ψₖ|`.
pub fn mix(ensemble: &Ensemble) -> DensityMatrix {
    let dim = 1usize << ensemble.n_qubits();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (w, s) in ensemble.members() {
        let a = s.amplitudes();
        for (k, e) in entries.iter_mut().enumerate() {
            *e += *w * a[k / dim] * a[k % dim].conj();
        }
    }
    DensityMatrix { dim, entries }
}

/// `Tr(ρ²)`: 1 for pure states, `1/dim` for the maximally mixed state.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // Tr(ρ²) = Σᵢⱼ ρᵢⱼ ρⱼᵢ = Σᵢⱼ |ρᵢⱼ|² for Hermitian ρ.
    rho.entries.iter().map(|e| e.norm_sqr()).sum()
}

/// Closed-form spectrum of a 2×2 density matrix, eigenvalues in descending order.
pub fn eigen2(rho: &DensityMatrix) -> Result<([f64; 2], [PureState; 2])> {
    if rho.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim,
        });
    }
    let a = rho.get(0, 0).re;
    let d = rho.get(1, 1).re;
    let b = rho.get(0, 1);
    let mean = (a + d) / 2.0;
    let radius = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    let (hi, lo) = (mean + radius, mean - radius);

    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let vectors = if b.norm() < 1e-15 {
        if a >= d {
            [vec![one, zero], vec![zero, one]]
        } else {
            [vec![zero, one], vec![one, zero]]
        }
    } else {
        [
            vec![b, Complex64::new(hi - a, 0.0)],
            vec![b, Complex64::new(lo - a, 0.0)],
        ]
    };
    let [v0, v1] = vectors;
    Ok((
        [hi, lo],
        [PureState::normalized(v0)?, PureState::normalized(v1)?],
    ))
}

/// Reduced state of one qubit of `state`, tracing out the others.
pub fn reduced_density(state: &PureState, qubit: usize) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    if qubit >= n {
        return Err(Error::BadTargets {
            targets: vec![qubit],
            n_qubits: n,
        });
    }
    let shift = n - 1 - qubit;
    let a = state.amplitudes();
    let mut entries = vec![Complex64::new(0.0, 0.0); 4];
    for (i, ai) in a.iter().enumerate() {
        if i >> shift & 1 == 1 {
            continue;
        }
        let j = i | 1 << shift;
        let aj = a[j];
        entries[0] += ai.norm_sqr();
        entries[1] += ai * aj.conj();
        entries[3] += aj.norm_sqr();
    }
    entries[2] = entries[1].conj();
    Ok(DensityMatrix { dim: 2, entries })
}
