use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::trajectory::TrajectorySample;
use crate::error::{Error, Result};
use crate::gates::{apply_gate, measure_qubit, Gate, MeasurementRecord, RandomSource};
use crate::quantum::{basis_state, bloch_from_pure, PureState};

/// Angular speed per unit stick deflection, rad/s.
pub const DEFAULT_OMEGA: f64 = FRAC_PI_2;

/// Accumulated |rotation| that commits a choice, rad.
pub const DEFAULT_COLLAPSE_THRESHOLD: f64 = FRAC_PI_2;

/// Which stick channel drives which sphere axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HandMap {
    /// dx → x-axis, dy → y-axis.
    #[default]
    Normal,
    /// dx and dy exchange roles.
    Swapped,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CollapseMode {
    /// z-basis measurement by the Born rule.
    #[default]
    Born,
    /// Counter-clockwise net rotation selects |0⟩, clockwise |1⟩.
    Forced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub omega: f64,
    pub collapse_threshold: f64,
    pub seed: u64,
    pub hand_map: HandMap,
    pub collapse_mode: CollapseMode,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            omega: DEFAULT_OMEGA,
            collapse_threshold: DEFAULT_COLLAPSE_THRESHOLD,
            seed: 0,
            hand_map: HandMap::Normal,
            collapse_mode: CollapseMode::Born,
        }
    }
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidInput(format!("omega = {}", self.omega)));
        }
        if !(self.collapse_threshold.is_finite() && self.collapse_threshold > 0.0) {
            return Err(Error::InvalidInput(format!(
                "collapse threshold = {}",
                self.collapse_threshold
            )));
        }
        Ok(())
    }
}

/// One frame of stick deflection. `rot > 0` is counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JoystickInput {
    pub dx: f64,
    pub dy: f64,
    pub rot: f64,
    pub dt: f64,
}

impl JoystickInput {
    pub fn idle(dt: f64) -> Self {
        Self {
            dx: 0.0,
            dy: 0.0,
            rot: 0.0,
            dt,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("dx", self.dx), ("dy", self.dy), ("rot", self.rot)] {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::InvalidInput(format!("{name} = {v} outside [-1, 1]")));
            }
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidInput(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        Ok(())
    }
}

/// Live steering state of one participant.
#[derive(Debug, Clone)]
pub struct SessionState {
    register: PureState,
    trajectory: Vec<TrajectorySample>,
    rng: RandomSource,
    pub hand_map: HandMap,
    pub collapse_mode: CollapseMode,
    omega: f64,
    collapse_threshold: f64,
    rot_accumulator: f64,
    net_rotation: f64,
    t: f64,
}

impl SessionState {
    /// Starts at |0⟩ with one sample at `t = 0`.
    pub fn new(config: SessionConfig) -> Result<Self> {
        config.validate()?;
        let register = basis_state(1, 0)?;
        let origin = TrajectorySample::at(0.0, bloch_from_pure(&register)?);
        Ok(Self {
            register,
            trajectory: vec![origin],
            rng: RandomSource::new(config.seed),
            hand_map: config.hand_map,
            collapse_mode: config.collapse_mode,
            omega: config.omega,
            collapse_threshold: config.collapse_threshold,
            rot_accumulator: 0.0,
            net_rotation: 0.0,
            t: 0.0,
        })
    }

    pub fn register(&self) -> &PureState {
        &self.register
    }

    pub fn trajectory(&self) -> &[TrajectorySample] {
        &self.trajectory
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn rot_accumulator(&self) -> f64 {
        self.rot_accumulator
    }

    pub fn collapse_threshold(&self) -> f64 {
        self.collapse_threshold
    }

    pub fn reseed(&mut self, seed: u64) {
        self.rng = RandomSource::new(seed);
    }

    pub fn last_sample(&self) -> &TrajectorySample {
        self.trajectory.last().expect("trajectory starts non-empty")
    }

    /// Applies Ry(ω·dx·dt), Rx(−ω·dy·dt), Rz(ω·rot·dt) and records a sample.
    pub fn tick(&mut self, input: &JoystickInput) -> Result<&TrajectorySample> {
        input.validate()?;
        let (dx, dy) = match self.hand_map {
            HandMap::Normal => (input.dx, input.dy),
            HandMap::Swapped => (input.dy, input.dx),
        };
        let w = self.omega * input.dt;
        let mut reg = apply_gate(&self.register, &Gate::ry(w * dx), &[0])?;
        reg = apply_gate(&reg, &Gate::rx(-w * dy), &[0])?;
        reg = apply_gate(&reg, &Gate::rz(w * input.rot), &[0])?;
        self.register = reg;
        self.rot_accumulator += w * input.rot.abs();
        self.net_rotation += w * input.rot;
        self.t += input.dt;
        let sample = TrajectorySample::at(self.t, bloch_from_pure(&self.register)?);
        self.trajectory.push(sample);
        Ok(self.last_sample())
    }

    /// Commits a choice once enough rotation has accumulated, marking the
    /// latest sample with the outcome.
    pub fn trigger_collapse(&mut self) -> Result<MeasurementRecord> {
        if self.rot_accumulator < self.collapse_threshold {
            return Err(Error::ThresholdNotReached {
                accumulated: self.rot_accumulator,
                threshold: self.collapse_threshold,
            });
        }
        let forced = match self.collapse_mode {
            CollapseMode::Forced if self.net_rotation > 0.0 => Some(0),
            CollapseMode::Forced if self.net_rotation < 0.0 => Some(1),
            // Balanced rotation gives no direction; fall back to the Born rule.
            _ => None,
        };
        let record = match forced {
            Some(outcome) => MeasurementRecord {
                outcome_index: outcome,
                value: if outcome == 0 { 1.0 } else { -1.0 },
                probability: self.register.amplitude(outcome).norm_sqr(),
                post_state: basis_state(1, outcome)?,
            },
            None => measure_qubit(&self.register, 0, &mut self.rng)?,
        };
        self.register = record.post_state.clone();
        let b = bloch_from_pure(&self.register)?;
        let last = self
            .trajectory
            .last_mut()
            .expect("trajectory starts non-empty");
        last.x = b.x;
        last.y = b.y;
        last.z = b.z;
        last.collapsed = Some(record.outcome_index as u8);
        self.rot_accumulator = 0.0;
        self.net_rotation = 0.0;
        Ok(record)
    }

    /// [`tick`](Self::tick) followed by a collapse when the threshold is reached.
    pub fn advance(&mut self, input: &JoystickInput) -> Result<Option<MeasurementRecord>> {
        self.tick(input)?;
        if self.rot_accumulator >= self.collapse_threshold {
            Ok(Some(self.trigger_collapse()?))
        } else {
            Ok(None)
        }
    }
}
