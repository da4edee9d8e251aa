use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{expectation, MeasurementOperator};
use crate::quantum::{bloch_from_density, pure_from_angles, DensityMatrix, PureState};

/// Default magnitude an axis expectation must exceed before it is labeled.
pub const DEFAULT_THRESHOLD: f64 = 0.25;

/// The three ±1 axis observables of the psychological qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisOperators {
    /// Reflection depth: +1 deep, −1 shallow.
    pub x_op: MeasurementOperator,
    /// Valence: +1 positive, −1 negative.
    pub y_op: MeasurementOperator,
    /// Processing lane: +1 affective (|0⟩), −1 reflective (|1⟩).
    pub z_op: MeasurementOperator,
}

impl AxisOperators {
    pub fn new() -> Self {
        Self {
            x_op: MeasurementOperator::x_axis(),
            y_op: MeasurementOperator::y_axis(),
            z_op: MeasurementOperator::z_axis(),
        }
    }
}

impl Default for AxisOperators {
    fn default() -> Self {
        Self::new()
    }
}

/// Psychological reading of a single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsychReadout {
    /// ⟨X⟩: deep (+1) versus shallow (−1) reflection.
    pub reflection_depth: f64,
    /// ⟨Y⟩: positive (+1) versus negative (−1) direction of affect.
    pub valence: f64,
    /// ⟨Z⟩: affective fast lane (+1) versus reflective slow lane (−1).
    pub processing_balance: f64,
    /// |α|², weight on the affective eigenstate.
    pub relevance_affect: f64,
    /// |β|², weight on the reflective eigenstate.
    pub relevance_reflection: f64,
}

impl PsychReadout {
    /// Readout of a (possibly mixed) single-qubit density matrix.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        let b = bloch_from_density(rho)?;
        Ok(Self {
            reflection_depth: b.x,
            valence: b.y,
            processing_balance: b.z,
            relevance_affect: rho.get(0, 0).re,
            relevance_reflection: rho.get(1, 1).re,
        })
    }
}

/// Observable effects named on the sphere's axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffectLabel {
    DeepReflection,
    ShallowReflection,
    PositiveValence,
    NegativeValence,
    Affective,
    Reflective,
}

impl AffectLabel {
    pub fn observable_effect(self) -> &'static str {
        match self {
            AffectLabel::DeepReflection => "Thinking something over",
            AffectLabel::ShallowReflection => "Routine response",
            AffectLabel::PositiveValence => "Direction of affect is upbeat",
            AffectLabel::NegativeValence => "Direction of affect is down",
            AffectLabel::Affective => "Fast",
            AffectLabel::Reflective => "Slow",
        }
    }
}

impl fmt::Display for AffectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Pure state whose affective weight |α|² equals `relevance_affect`.
pub fn state_from_relevance(relevance_affect: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&relevance_affect) {
        return Err(Error::OutOfRange {
            what: "relevance_affect",
            value: relevance_affect,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let theta = 2.0 * relevance_affect.sqrt().acos();
    pure_from_angles(theta, phi)
}

/// Axis expectations and relevance split of a single-qubit pure state.
pub fn readout(state: &PureState) -> Result<PsychReadout> {
    if state.n_qubits() != 1 {
        return Err(Error::NotSingleQubit(state.n_qubits()));
    }
    let ops = AxisOperators::new();
    Ok(PsychReadout {
        reflection_depth: expectation(state, &ops.x_op)?,
        valence: expectation(state, &ops.y_op)?,
        processing_balance: expectation(state, &ops.z_op)?,
        relevance_affect: state.amplitude(0).norm_sqr(),
        relevance_reflection: state.amplitude(1).norm_sqr(),
    })
}

/// Labels every axis whose expectation exceeds `threshold` in magnitude.
pub fn classify(r: &PsychReadout, threshold: f64) -> Result<Vec<AffectLabel>> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::OutOfRange {
            what: "threshold",
            value: threshold,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let axes = [
        (
            r.reflection_depth,
            AffectLabel::DeepReflection,
            AffectLabel::ShallowReflection,
        ),
        (
            r.valence,
            AffectLabel::PositiveValence,
            AffectLabel::NegativeValence,
        ),
        (
            r.processing_balance,
            AffectLabel::Affective,
            AffectLabel::Reflective,
        ),
    ];
    Ok(axes
        .into_iter()
        .filter_map(|(v, pos, neg)| {
            if v > threshold {
                Some(pos)
            } else if v < -threshold {
                Some(neg)
            } else {
                None
            }
        })
        .collect())
}
