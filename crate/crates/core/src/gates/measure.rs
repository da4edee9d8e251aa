use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quantum::{inner_product, ket_label, PureState};
use crate::TOL;

/// Seeded deterministic generator. Identical seeds give identical draws.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// Identifier of the generator backing every `RandomSource`.
    pub const ALGORITHM: &'static str = "chacha8";

    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// Outcome of a single-qubit computational-basis measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    /// Observed bit.
    pub outcome_index: usize,
    /// Z eigenvalue of the outcome: +1 for |0⟩, −1 for |1⟩.
    pub value: f64,
    /// Born probability of the outcome in the pre-measurement state.
    pub probability: f64,
    pub post_state: PureState,
}

/// Observable given by its spectral decomposition `Σₖ mₖ |k⟩⟨k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOperator {
    outcomes: Vec<(f64, PureState)>,
}

impl MeasurementOperator {
    /// Requires an orthonormal basis that spans the space.
    pub fn new(outcomes: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = outcomes.first() else {
            return Err(Error::InvalidOperator("no outcomes".into()));
        };
        let dim = first.dim();
        if outcomes.len() != dim {
            return Err(Error::InvalidOperator(format!(
                "{} outcomes for a {dim}-dimensional space",
                outcomes.len()
            )));
        }
        for (i, (m, a)) in outcomes.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFinite("outcome value"));
            }
            for (j, (_, b)) in outcomes.iter().enumerate().skip(i) {
                let ip = inner_product(a, b)?;
                let want = if i == j { 1.0 } else { 0.0 };
                if (ip - want).norm() > TOL {
                    return Err(Error::InvalidOperator(format!(
                        "basis states {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(Self { outcomes })
    }

    pub fn dim(&self) -> usize {
        self.outcomes[0].1.dim()
    }

    pub fn outcomes(&self) -> &[(f64, PureState)] {
        &self.outcomes
    }

    /// Single-qubit operator with eigenvalue +1 on `plus` and −1 on `minus`.
    fn axis(plus: [Complex64; 2], minus: [Complex64; 2]) -> Self {
        let p = PureState::new(plus.to_vec()).expect("axis eigenstate");
        let m = PureState::new(minus.to_vec()).expect("axis eigenstate");
        Self::new(vec![(1.0, p), (-1.0, m)]).expect("axis eigenbasis")
    }

    /// +1 on `(|0⟩+|1⟩)/√2`, −1 on `(|0⟩−|1⟩)/√2`.
    pub fn x_axis() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::axis(
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        )
    }

    /// +1 on `(|0⟩+i|1⟩)/√2`, −1 on `(|0⟩−i|1⟩)/√2`.
    pub fn y_axis() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::axis(
            [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
            [Complex64::new(h, 0.0), Complex64::new(0.0, -h)],
        )
    }

    /// +1 on |0⟩, −1 on |1⟩.
    pub fn z_axis() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::axis([one, zero], [zero, one])
    }
}

/// Born distribution `pᵢ = |aᵢ|²` over basis indices.
pub fn probabilities(state: &PureState) -> Vec<f64> {
    state.amplitudes().iter().map(|a| a.norm_sqr()).collect()
}

/// Nonzero entries of [`probabilities`] keyed by ket label.
pub fn labeled_probabilities(state: &PureState) -> BTreeMap<String, f64> {
    probabilities(state)
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > 1e-15)
        .map(|(i, p)| (ket_label(state.n_qubits(), i), p))
        .collect()
}

/// Born-rule measurement of one qubit in the computational basis.
pub fn measure_qubit(
    state: &PureState,
    qubit: usize,
    rng: &mut RandomSource,
) -> Result<MeasurementRecord> {
    let n = state.n_qubits();
    if qubit >= n {
        return Err(Error::BadTargets {
            targets: vec![qubit],
            n_qubits: n,
        });
    }
    let shift = n - 1 - qubit;
    let amps = state.amplitudes();
    let (mut p0, mut p1) = (0.0, 0.0);
    for (i, a) in amps.iter().enumerate() {
        if i >> shift & 1 == 0 {
            p0 += a.norm_sqr();
        } else {
            p1 += a.norm_sqr();
        }
    }
    // A zero-probability branch can never satisfy the comparison.
    let u = rng.uniform();
    let outcome = if u * (p0 + p1) < p0 { 0 } else { 1 };
    Ok(collapse(state, qubit, outcome, p0, p1))
}

/// Projects `qubit` onto `outcome` and renormalizes. The outcome must have
/// nonzero probability.
pub fn project_qubit(state: &PureState, qubit: usize, outcome: usize) -> Result<MeasurementRecord> {
    let n = state.n_qubits();
    if qubit >= n || outcome > 1 {
        return Err(Error::BadTargets {
            targets: vec![qubit],
            n_qubits: n,
        });
    }
    let shift = n - 1 - qubit;
    let p1: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i >> shift & 1 == 1)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    let p0 = (state.norm_sqr() - p1).max(0.0);
    let p = if outcome == 0 { p0 } else { p1 };
    if p <= 0.0 {
        return Err(Error::InvalidOperator(format!(
            "outcome {outcome} has probability zero"
        )));
    }
    Ok(collapse(state, qubit, outcome, p0, p1))
}

fn collapse(
    state: &PureState,
    qubit: usize,
    outcome: usize,
    p0: f64,
    p1: f64,
) -> MeasurementRecord {
    let n = state.n_qubits();
    let shift = n - 1 - qubit;
    let p = if outcome == 0 { p0 } else { p1 };
    let scale = p.sqrt();
    let post = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i >> shift & 1 == outcome {
                a / scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    MeasurementRecord {
        outcome_index: outcome,
        value: if outcome == 0 { 1.0 } else { -1.0 },
        probability: p / (p0 + p1),
        post_state: PureState::from_raw(n, post),
    }
}

/// Measures every qubit in order 0..n and returns the basis index observed.
pub fn measure_register(state: &PureState, rng: &mut RandomSource) -> Result<usize> {
    let mut current = state.clone();
    let mut index = 0;
    for q in 0..state.n_qubits() {
        let rec = measure_qubit(&current, q, rng)?;
        index = index << 1 | rec.outcome_index;
        current = rec.post_state;
    }
    Ok(index)
}

/// Histogram of `shots` full-register measurements keyed by ket label.
pub fn sample_counts(
    state: &PureState,
    shots: usize,
    rng: &mut RandomSource,
) -> Result<BTreeMap<String, usize>> {
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let idx = measure_register(state, rng)?;
        *counts.entry(ket_label(state.n_qubits(), idx)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `⟨M⟩ = Σₖ |⟨k|Ψ⟩|² mₖ`.
pub fn expectation(state: &PureState, m: &MeasurementOperator) -> Result<f64> {
    if state.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: state.dim(),
        });
    }
    m.outcomes
        .iter()
        .map(|(value, k)| Ok(inner_product(k, state)?.norm_sqr() * value))
        .sum()
}
