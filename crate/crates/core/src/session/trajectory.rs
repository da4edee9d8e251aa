use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::BlochVector;

/// Refuse to materialize trajectories longer than this.
pub const MAX_SAMPLES: usize = 10_000_000;

pub const CSV_HEADER: &str = "t,x,y,z,collapsed";

/// One tracked position on (or in) the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Outcome bit when a collapse happened at this sample.
    pub collapsed: Option<u8>,
}

impl TrajectorySample {
    pub fn at(t: f64, b: BlochVector) -> Self {
        Self {
            t,
            x: b.x,
            y: b.y,
            z: b.z,
            collapsed: None,
        }
    }

    pub fn point(&self) -> BlochVector {
        BlochVector::new(self.x, self.y, self.z)
    }
}

/// Renders samples as CSV with 17 significant digits per float.
pub fn write_trajectory_csv(samples: &[TrajectorySample]) -> String {
    let mut out = String::with_capacity(samples.len() * 100 + 20);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let collapsed = s.collapsed.map(|c| c.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{collapsed}",
            s.t, s.x, s.y, s.z
        );
    }
    out
}

/// Parses trajectory CSV, enforcing the header, strictly increasing `t` and
/// Bloch length ≤ 1 + 1e-9.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<TrajectorySample>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let expected: Vec<&str> = CSV_HEADER.split(',').collect();
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse(format!("expected header `{CSV_HEADER}`")));
    }
    let mut out: Vec<TrajectorySample> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = row + 2;
        let num = |i: usize| -> Result<f64> {
            let v: f64 = record[i]
                .parse()
                .map_err(|_| Error::Parse(format!("line {line}: bad number `{}`", &record[i])))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("line {line}: non-finite value")))
            }
        };
        let collapsed = match &record[4] {
            "" => None,
            "0" => Some(0),
            "1" => Some(1),
            other => return Err(Error::Parse(format!("line {line}: collapsed = `{other}`"))),
        };
        let s = TrajectorySample {
            t: num(0)?,
            x: num(1)?,
            y: num(2)?,
            z: num(3)?,
            collapsed,
        };
        if s.point().length() > 1.0 + crate::TOL {
            return Err(Error::Parse(format!(
                "line {line}: point outside the unit ball"
            )));
        }
        if let Some(prev) = out.last() {
            if s.t <= prev.t {
                return Err(Error::Parse(format!(
                    "line {line}: timestamps must increase"
                )));
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Surface point to reach, and the time spent travelling from it to the next
/// waypoint (for the final waypoint: time spent holding there).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub target: [f64; 3],
    pub duration: f64,
}

/// Model script: waypoints and an optional sampling interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryScript {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    pub waypoints: Vec<Waypoint>,
}

/// Sampling interval used when neither the script nor the caller sets one.
pub const DEFAULT_DT: f64 = 0.02;

impl TrajectoryScript {
    /// Predicted path, sampled at `dt`, else the script's own interval, else [`DEFAULT_DT`].
    pub fn predict(&self, dt: Option<f64>) -> Result<Vec<TrajectorySample>> {
        predict_trajectory(&self.waypoints, dt.or(self.dt).unwrap_or(DEFAULT_DT))
    }
}

pub fn parse_script_json(text: &str) -> Result<TrajectoryScript> {
    let script: TrajectoryScript = serde_json::from_str(text)?;
    if let Some(dt) = script.dt {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidScript(format!("dt = {dt}")));
        }
    }
    validate_waypoints(&script.waypoints)?;
    Ok(script)
}

fn validate_waypoints(waypoints: &[Waypoint]) -> Result<Vec<BlochVector>> {
    if waypoints.is_empty() {
        return Err(Error::InvalidScript("no waypoints".into()));
    }
    let mut points = Vec::with_capacity(waypoints.len());
    for (i, w) in waypoints.iter().enumerate() {
        let p = BlochVector::new(w.target[0], w.target[1], w.target[2]);
        let len = p.length();
        if !len.is_finite() || (len - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidScript(format!(
                "waypoint {i} has length {len}"
            )));
        }
        if !(w.duration.is_finite() && w.duration > 0.0) {
            return Err(Error::InvalidScript(format!(
                "waypoint {i} duration {}",
                w.duration
            )));
        }
        points.push(p.scale(1.0 / len));
    }
    for i in 1..points.len() {
        if points[i - 1].dot(&points[i]) < -1.0 + 1e-9 {
            return Err(Error::AntipodalTargets(i - 1, i));
        }
    }
    Ok(points)
}

/// Constant-speed great-circle interpolation between unit vectors.
fn slerp(a: &BlochVector, b: &BlochVector, f: f64) -> BlochVector {
    let cos = a.dot(b).clamp(-1.0, 1.0);
    let omega = cos.acos();
    if omega < 1e-12 {
        return *a;
    }
    let s = omega.sin();
    let wa = ((1.0 - f) * omega).sin() / s;
    let wb = (f * omega).sin() / s;
    let p = BlochVector::new(
        wa * a.x + wb * b.x,
        wa * a.y + wb * b.y,
        wa * a.z + wb * b.z,
    );
    p.scale(1.0 / p.length())
}

/// Samples the scripted path every `dt` seconds from `t = 0` to the total
/// script duration.
pub fn predict_trajectory(waypoints: &[Waypoint], dt: f64) -> Result<Vec<TrajectorySample>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidScript(format!("dt = {dt}")));
    }
    let points = validate_waypoints(waypoints)?;
    let total: f64 = waypoints.iter().map(|w| w.duration).sum();
    let steps = (total / dt + 1e-9).floor();
    if steps >= MAX_SAMPLES as f64 {
        return Err(Error::InvalidScript(format!(
            "{steps} samples exceed the cap"
        )));
    }
    let steps = steps as usize;

    let mut out = Vec::with_capacity(steps + 1);
    let mut seg = 0;
    let mut seg_start = 0.0;
    for k in 0..=steps {
        let t = k as f64 * dt;
        while seg + 1 < points.len() && t >= seg_start + waypoints[seg].duration {
            seg_start += waypoints[seg].duration;
            seg += 1;
        }
        let p = if seg + 1 < points.len() {
            let f = ((t - seg_start) / waypoints[seg].duration).clamp(0.0, 1.0);
            slerp(&points[seg], &points[seg + 1], f)
        } else {
            points[seg]
        };
        out.push(TrajectorySample::at(t, p));
    }
    Ok(out)
}

/// Angular deviation between a model path and a human path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub mean_dev: f64,
    pub max_dev: f64,
    pub per_sample: Vec<f64>,
    pub n: usize,
}

fn angle_between(a: &BlochVector, b: &BlochVector) -> f64 {
    let (la, lb) = (a.length(), b.length());
    if la > 1e-12 && lb > 1e-12 {
        (a.dot(b) / (la * lb)).clamp(-1.0, 1.0).acos()
    } else {
        let d = a.distance(b);
        (1.0 - d * d / 2.0).clamp(-1.0, 1.0).acos()
    }
}

/// Nearest sample of `path` (sorted by `t`) to time `t`; ties go to the earlier one.
fn nearest(path: &[TrajectorySample], t: f64) -> &TrajectorySample {
    let i = path.partition_point(|s| s.t < t);
    if i == 0 {
        return &path[0];
    }
    if i == path.len() {
        return &path[i - 1];
    }
    let (before, after) = (&path[i - 1], &path[i]);
    if after.t - t < t - before.t {
        after
    } else {
        before
    }
}

/// Resamples `human` onto the model's timestamps and measures the angle
/// between corresponding points.
pub fn compare_trajectories(
    model: &[TrajectorySample],
    human: &[TrajectorySample],
) -> Result<DeviationReport> {
    if model.is_empty() || human.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let per_sample: Vec<f64> = model
        .iter()
        .map(|m| angle_between(&m.point(), &nearest(human, m.t).point()))
        .collect();
    let n = per_sample.len();
    let mean_dev = per_sample.iter().sum::<f64>() / n as f64;
    let max_dev = per_sample.iter().copied().fold(0.0, f64::max);
    Ok(DeviationReport {
        // Summation rounding can push the mean a hair above the max.
        mean_dev: mean_dev.min(max_dev),
        max_dev,
        per_sample,
        n,
    })
}
