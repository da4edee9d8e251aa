//! Subcommand bodies. Each returns the text to print on stdout.

use anyhow::{bail, Context, Result};
use qaffect::affect::{
    classify, hri_table, readout, render_hri, render_satisfaction, render_traits,
    satisfaction_table, traits_table,
};
use qaffect::formats::{parse_circuit_json, parse_ket_label};
use qaffect::gates::{labeled_probabilities, run_circuit, sample_counts, RandomSource};
use qaffect::network::{detect_danger, fixtures, TransitionNetwork};
use qaffect::quantum::{bloch_from_pure, ket_label, pure_from_angles, PureState};
use qaffect::session::{
    compare_trajectories, parse_script_json, parse_trajectory_csv, replay_log,
    write_trajectory_csv, SessionConfig,
};
use serde_json::{json, Value};

fn amplitudes_json(state: &PureState) -> Value {
    let n = state.n_qubits();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| json!({"basis": ket_label(n, i), "re": a.re, "im": a.im}))
        .collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn bloch(theta: f64, phi: f64, degrees: bool, threshold: f64) -> Result<String> {
    let (theta, phi) = if degrees {
        (theta.to_radians(), phi.to_radians())
    } else {
        (theta, phi)
    };
    let state = pure_from_angles(theta, phi)?;
    let point = bloch_from_pure(&state)?;
    let r = readout(&state)?;
    let labels = classify(&r, threshold)?;
    let effects: Vec<_> = labels.iter().map(|l| l.observable_effect()).collect();
    Ok(pretty(&json!({
        "theta": theta,
        "phi": phi,
        "state": amplitudes_json(&state),
        "point": point,
        "readout": r,
        "labels": labels,
        "effects": effects,
    })))
}

pub fn circuit_run(
    text: &str,
    input: Option<&str>,
    shots: Option<usize>,
    seed: u64,
) -> Result<String> {
    let circuit = parse_circuit_json(text)?;
    let n = circuit.n_qubits();
    let input = match input {
        Some(label) => parse_ket_label(label)?,
        None => qaffect::quantum::basis_state(n, 0)?,
    };
    if input.n_qubits() != n {
        bail!("input has {} qubits, circuit has {n}", input.n_qubits());
    }
    let out = run_circuit(&circuit, &input)?;
    let v = match shots {
        None => json!({
            "qubits": n,
            "amplitudes": amplitudes_json(&out),
            "probabilities": labeled_probabilities(&out),
        }),
        Some(shots) => {
            let counts = sample_counts(&out, shots, &mut RandomSource::new(seed))?;
            json!({
                "qubits": n,
                "shots": shots,
                "seed": seed,
                "algorithm": RandomSource::ALGORITHM,
                "counts": counts,
            })
        }
    };
    Ok(pretty(&v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Traits,
    Satisfaction,
    Hri,
}

pub fn table(which: Table, as_json: bool) -> Result<String> {
    Ok(match (which, as_json) {
        (Table::Traits, false) => render_traits(&traits_table()?),
        (Table::Satisfaction, false) => render_satisfaction(&satisfaction_table()?),
        (Table::Hri, false) => render_hri(&hri_table()?),
        (Table::Traits, true) => pretty(&serde_json::to_value(traits_table()?)?),
        (Table::Satisfaction, true) => pretty(
            &satisfaction_table()?
                .iter()
                .map(|r| {
                    json!({
                        "involvement": r.involvement,
                        "distance": r.distance,
                        "label": r.verdict.label,
                        "state": amplitudes_json(&r.verdict.state),
                        "display": r.verdict.state.to_string(),
                    })
                })
                .collect(),
        ),
        (Table::Hri, true) => pretty(
            &hri_table()?
                .iter()
                .map(|r| {
                    json!({
                        "human": r.human,
                        "robot": r.robot,
                        "state": amplitudes_json(&r.state),
                        "display": r.state.to_string(),
                        "outcomes": r.outcomes,
                    })
                })
                .collect(),
        ),
    })
}

pub fn load_network(file_text: Option<&str>, builtin: Option<&str>) -> Result<TransitionNetwork> {
    match (file_text, builtin) {
        (Some(text), None) => Ok(TransitionNetwork::from_json(text)?),
        (None, Some(name)) => fixtures::builtin(name).with_context(|| {
            format!(
                "unknown built-in network `{name}` (have: {})",
                fixtures::BUILTIN_NAMES.join(", ")
            )
        }),
        _ => bail!("give exactly one of a network file or --builtin"),
    }
}

pub fn network_check(network: &TransitionNetwork, metric: &str, threshold: f64) -> Result<String> {
    let report = detect_danger(network, metric, threshold)?;
    Ok(pretty(&json!({
        "metric": metric,
        "threshold": threshold,
        "flagged": report.flagged,
    })))
}

pub fn predict(script_text: &str, dt: Option<f64>) -> Result<String> {
    let script = parse_script_json(script_text)?;
    Ok(write_trajectory_csv(&script.predict(dt)?))
}

pub fn compare(model_csv: &str, human_csv: &str) -> Result<String> {
    let model = parse_trajectory_csv(model_csv).context("model trajectory")?;
    let human = parse_trajectory_csv(human_csv).context("human trajectory")?;
    Ok(pretty(&serde_json::to_value(compare_trajectories(
        &model, &human,
    )?)?))
}

/// Replays a newline-delimited message log; returns the trajectory CSV and
/// a per-collapse summary.
pub fn replay(log: &str, config: SessionConfig) -> Result<(String, Vec<(f64, u8)>)> {
    let (handler, _) = replay_log(log, config, None)?;
    let samples = handler.session().trajectory();
    let collapses = samples
        .iter()
        .filter_map(|s| s.collapsed.map(|o| (s.t, o)))
        .collect();
    Ok((write_trajectory_csv(samples), collapses))
}
