//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so every line is printed by a plain `cargo test`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use qaffect::affect::{satisfaction, traits_circuit, AxisOperators};
use qaffect::gates::{
    apply_gate, epr_map, expectation, measure_qubit, run_circuit, sample_counts, Gate, RandomSource,
};
use qaffect::network::{detect_danger, fixtures, TransitionNetwork};
use qaffect::quantum::*;
use qaffect::session::{
    compare_trajectories, replay_log, write_trajectory_csv, SessionConfig, TrajectorySample,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Check = Box<dyn Fn() -> Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qaffect(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qaffect"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn ket(label: &str) -> PureState {
    qaffect::formats::parse_ket_label(label).expect("valid label")
}

fn random_qubit(rng: &mut RandomSource) -> PureState {
    let theta = (1.0 - 2.0 * rng.uniform()).acos();
    let phi = TAU * rng.uniform();
    pure_from_angles(theta, phi).expect("angles in range")
}

fn traits_table_matches() -> Outcome {
    let text = qaffect(&["table", "traits"])?;
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    let want = [
        ["|0⟩", "|0⟩", "|0⟩", "Do nothing, sit still"],
        ["|0⟩", "|1⟩", "|1⟩", "Negative approach"],
        ["|1⟩", "|0⟩", "|1⟩", "Positive approach"],
        ["|1⟩", "|1⟩", "|0⟩", "Avoid"],
    ];
    ensure(rows.len() == 4, || format!("{} rows", rows.len()))?;
    for (row, w) in rows.iter().zip(want) {
        ensure(row.as_slice() == w, || {
            format!("row {row:?}, expected {w:?}")
        })?;
    }
    // The printed interaction column is what the circuit computes.
    for (g, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let out =
            run_circuit(&traits_circuit(), &basis_state(3, g << 2 | b << 1).unwrap()).unwrap();
        ensure(out.basis_index() == Some(g << 2 | b << 1 | (g ^ b)), || {
            format!("circuit on {g}{b}")
        })?;
    }
    Ok("4/4 rows".into())
}

fn satisfaction_table_matches() -> Outcome {
    let v: Value = serde_json::from_str(&qaffect(&["table", "satisfaction", "--json"])?)
        .map_err(|e| e.to_string())?;
    let rows = v.as_array().ok_or("not an array")?;
    let labels: Vec<_> = rows
        .iter()
        .map(|r| r["label"].as_str().unwrap_or(""))
        .collect();
    ensure(
        labels == ["Unsatisfied", "InDoubt", "InDoubt", "Satisfied"],
        || format!("{labels:?}"),
    )?;
    let want = [
        [(1.0, 0.0), (0.0, 0.0)],
        [(0.5, 0.5), (0.5, -0.5)],
        [(0.5, 0.5), (0.5, -0.5)],
        [(0.0, 0.0), (1.0, 0.0)],
    ];
    let mut worst: f64 = 0.0;
    for (row, w) in rows.iter().zip(want) {
        for (amp, (re, im)) in row["state"].as_array().ok_or("no state")?.iter().zip(w) {
            let got = C::new(
                amp["re"].as_f64().unwrap_or(f64::NAN),
                amp["im"].as_f64().unwrap_or(f64::NAN),
            );
            worst = worst.max((got - C::new(re, im)).norm());
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    let text = qaffect(&["table", "satisfaction"])?;
    ensure(
        text.contains("(0.500000+0.500000i)|0⟩ + (0.500000-0.500000i)|1⟩"),
        || "printout".into(),
    )?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn bell_mappings() -> Outcome {
    let r = FRAC_1_SQRT_2;
    let cases = [
        ("00", [r, 0.0, 0.0, r]),
        ("11", [0.0, r, -r, 0.0]),
        ("10", [r, 0.0, 0.0, -r]),
        ("01", [0.0, r, r, 0.0]),
    ];
    let (mut worst, mut purity_dev): (f64, f64) = (0.0, 0.0);
    for (input, want) in cases {
        let out = epr_map(&ket(input)).map_err(|e| e.to_string())?;
        for (k, w) in want.iter().enumerate() {
            worst = worst.max((out.amplitude(k) - C::new(*w, 0.0)).norm());
        }
        for q in 0..2 {
            let p = purity(&reduced_density(&out, q).unwrap());
            purity_dev = purity_dev.max((p - 0.5).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("amplitude deviation {worst:e}"))?;
    ensure(purity_dev <= 1e-9, || {
        format!("reduced purity deviation {purity_dev:e}")
    })?;
    Ok(format!(
        "amplitudes {worst:.1e}, reduced purity {purity_dev:.1e}"
    ))
}

fn v_squared_is_not() -> Outcome {
    let d = Gate::v()
        .compose(&Gate::v())
        .map_err(|e| e.to_string())?
        .max_abs_diff(&Gate::x());
    ensure(d <= 1e-12, || format!("{d:e}"))?;
    Ok(format!("entrywise {d:.1e}"))
}

fn angle_geometry() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..19 {
        let theta = PI * i as f64 / 18.0;
        for j in 0..24 {
            let phi = TAU * j as f64 / 24.0;
            let b =
                bloch_from_pure(&pure_from_angles(theta, phi).map_err(|e| e.to_string())?).unwrap();
            let want = BlochVector::new(
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            );
            worst = worst.max(b.distance(&want));
        }
    }
    ensure(worst <= 1e-9, || format!("{worst:e}"))?;
    let north = pure_from_angles(0.0, 1.0).unwrap();
    let south = pure_from_angles(PI, 1.0).unwrap();
    ensure(north.max_abs_diff(&ket("0")) <= 1e-12, || {
        "θ = 0 is not |0⟩".into()
    })?;
    ensure((south.amplitude(1).norm() - 1.0).abs() <= 1e-12, || {
        "θ = π is not |1⟩".into()
    })?;
    Ok(format!("456 grid points, max {worst:.1e}"))
}

fn mixed_state_diagnostics() -> Outcome {
    let start = Instant::now();
    let mixed = DensityMatrix::maximally_mixed(1).unwrap();
    let b = bloch_from_density(&mixed).unwrap();
    ensure(
        b.length() == 0.0 && (purity(&mixed) - 0.5).abs() < 1e-12,
        || format!("{b:?}"),
    )?;

    let mut rng = RandomSource::new(2024);
    let (mut pure_count, mut mismatches) = (0, 0);
    for k in 0..1000 {
        let a = random_qubit(&mut rng);
        // Every fifth ensemble repeats its member, which makes it pure.
        let b = if k % 5 == 0 {
            a.with_global_phase(TAU * rng.uniform())
        } else {
            random_qubit(&mut rng)
        };
        let w = rng.uniform();
        let rho = mix(&Ensemble::new(vec![(w, a), (1.0 - w, b)]).map_err(|e| e.to_string())?);
        let p = purity(&rho);
        let len = bloch_from_density(&rho).unwrap().length();
        ensure(p <= 1.0 + 1e-8 && len <= 1.0 + 1e-8, || {
            format!("purity {p}, length {len}")
        })?;
        let is_pure = (p - 1.0).abs() <= 1e-6;
        if is_pure {
            pure_count += 1;
        }
        if is_pure != ((len - 1.0).abs() <= 1e-6) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} purity/length disagreements")
    })?;
    ensure(pure_count >= 200, || {
        format!("only {pure_count} pure ensembles")
    })?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "1000 ensembles, {pure_count} pure, 0 disagreements"
    ))
}

fn measurement_statistics() -> Outcome {
    let start = Instant::now();
    let in_doubt = satisfaction(false, true).map_err(|e| e.to_string())?.state;
    let mut rng = RandomSource::new(7);
    let mut zeros = 0;
    for _ in 0..10_000 {
        if measure_qubit(&in_doubt, 0, &mut rng)
            .map_err(|e| e.to_string())?
            .outcome_index
            == 0
        {
            zeros += 1;
        }
    }
    let freq = zeros as f64 / 10_000.0;
    ensure((0.47..=0.53).contains(&freq), || {
        format!("outcome-0 frequency {freq}")
    })?;
    let allowed = [
        ("00", ["00", "11"]),
        ("11", ["01", "10"]),
        ("10", ["00", "11"]),
        ("01", ["01", "10"]),
    ];
    for (input, outcomes) in allowed {
        let out = epr_map(&ket(input)).unwrap();
        let counts =
            sample_counts(&out, 10_000, &mut RandomSource::new(11)).map_err(|e| e.to_string())?;
        let seen: Vec<_> = counts.keys().map(String::as_str).collect();
        ensure(seen == outcomes, || format!("{input} produced {seen:?}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("outcome-0 frequency {freq:.4}"))
}

/// Sample mean of ±1 outcomes after rotating the measured axis onto z.
fn monte_carlo_mean(state: &PureState, axis: usize, draws: usize, rng: &mut RandomSource) -> f64 {
    let rotated = match axis {
        0 => apply_gate(state, &Gate::h(), &[0]).unwrap(),
        1 => {
            let s = apply_gate(state, &Gate::s().adjoint(), &[0]).unwrap();
            apply_gate(&s, &Gate::h(), &[0]).unwrap()
        }
        _ => state.clone(),
    };
    let total: f64 = (0..draws)
        .map(|_| measure_qubit(&rotated, 0, rng).unwrap().value)
        .sum();
    total / draws as f64
}

fn expectation_identity() -> Outcome {
    let ops = AxisOperators::new();
    let mut rng = RandomSource::new(99);
    let draws = 10_000;
    let mut worst_sigma: f64 = 0.0;
    for _ in 0..20 {
        let s = random_qubit(&mut rng);
        for (axis, op) in [&ops.x_op, &ops.y_op, &ops.z_op].into_iter().enumerate() {
            let e = expectation(&s, op).map_err(|e| e.to_string())?;
            let mean = monte_carlo_mean(&s, axis, draws, &mut rng);
            let sigma = ((1.0 - e * e).max(0.0) / draws as f64).sqrt();
            let dev = (mean - e).abs();
            if sigma == 0.0 {
                ensure(dev <= 1e-12, || format!("axis {axis}: mean {mean} vs {e}"))?;
                continue;
            }
            worst_sigma = worst_sigma.max(dev / sigma);
            ensure(dev <= 3.0 * sigma, || {
                format!("axis {axis}: mean {mean} vs {e} ({:.2}σ)", dev / sigma)
            })?;
        }
    }
    Ok(format!("60 checks, worst {worst_sigma:.2}σ"))
}

fn flagged(net: &TransitionNetwork) -> Result<Vec<String>, String> {
    let report = detect_danger(net, "dissatisfaction", 0.5).map_err(|e| e.to_string())?;
    Ok(report.node_ids().into_iter().map(str::to_owned).collect())
}

fn danger_detection() -> Outcome {
    let freeze = flagged(&fixtures::freeze())?;
    ensure(freeze == ["freeze"], || {
        format!("freeze network flagged {freeze:?}")
    })?;
    let dup = flagged(&fixtures::duplicate())?;
    ensure(dup == ["exit_unadapted", "freeze"], || {
        format!("duplicate network flagged {dup:?}")
    })?;
    let appraisal = flagged(&fixtures::appraisal())?;
    ensure(appraisal.is_empty(), || {
        format!("unitary network flagged {appraisal:?}")
    })?;
    Ok("freeze: {freeze}; duplicate: {exit_unadapted, freeze}; appraisal: {}".into())
}

fn recorded_log(ticks: usize) -> String {
    let mut rng = RandomSource::new(314);
    let mut log = String::new();
    for _ in 0..ticks {
        let mut d = || 2.0 * rng.uniform() - 1.0;
        let (dx, dy, rot) = (d(), d(), d());
        log.push_str(&format!(
            "{{\"type\":\"joystick\",\"dx\":{dx},\"dy\":{dy},\"rot\":{rot},\"dt\":0.02}}\n"
        ));
    }
    log
}

fn session_determinism() -> Outcome {
    let log = recorded_log(1000);
    let config = SessionConfig {
        seed: 17,
        ..Default::default()
    };
    let run = || -> Result<(String, Vec<Option<u8>>, f64), String> {
        let (h, _) = replay_log(&log, config, None).map_err(|e| e.to_string())?;
        let samples = h.session().trajectory();
        let outcomes = samples.iter().map(|s| s.collapsed).collect();
        let worst = samples
            .iter()
            .map(|s| (s.point().length() - 1.0).abs())
            .fold(0.0, f64::max);
        Ok((write_trajectory_csv(samples), outcomes, worst))
    };
    let (csv_a, out_a, worst) = run()?;
    let (csv_b, out_b, _) = run()?;
    ensure(csv_a == csv_b && out_a == out_b, || {
        "in-process replays differ".into()
    })?;

    // A separate process replaying the same log file must agree byte for byte.
    let path =
        std::env::temp_dir().join(format!("qaffect-acceptance-{}.jsonl", std::process::id()));
    std::fs::write(&path, &log).map_err(|e| e.to_string())?;
    let cli = qaffect(&["replay", path.to_str().unwrap(), "--seed", "17"]);
    let _ = std::fs::remove_file(&path);
    ensure(cli? == csv_a, || "CLI replay differs".into())?;

    ensure(worst <= 1e-8, || format!("length deviation {worst:e}"))?;
    let collapses = out_a.iter().flatten().count();
    ensure(collapses > 0, || "log never triggered a collapse".into())?;
    Ok(format!(
        "1000 ticks, {collapses} collapses, length deviation {worst:.1e}"
    ))
}

fn constant(p: [f64; 3]) -> Vec<TrajectorySample> {
    (0..10)
        .map(|k| TrajectorySample::at(k as f64 * 0.1, BlochVector::new(p[0], p[1], p[2])))
        .collect()
}

fn trajectory_comparison() -> Outcome {
    let mut rng = RandomSource::new(5);
    let wander: Vec<_> = (0..50)
        .map(|k| {
            TrajectorySample::at(
                k as f64 * 0.02,
                bloch_from_pure(&random_qubit(&mut rng)).unwrap(),
            )
        })
        .collect();
    let cases = [
        ("identical", compare_trajectories(&wander, &wander), 0.0),
        (
            "antipodal",
            compare_trajectories(&constant([0.0, 0.0, 1.0]), &constant([0.0, 0.0, -1.0])),
            PI,
        ),
        (
            "orthogonal",
            compare_trajectories(&constant([0.0, 0.0, 1.0]), &constant([1.0, 0.0, 0.0])),
            PI / 2.0,
        ),
    ];
    for (name, report, want) in cases {
        let r = report.map_err(|e| e.to_string())?;
        ensure(
            (r.mean_dev - want).abs() <= 1e-9 && (r.max_dev - want).abs() <= 1e-9,
            || {
                format!(
                    "{name}: mean {} max {} (want {want})",
                    r.mean_dev, r.max_dev
                )
            },
        )?;
    }
    Ok("0, π, π/2".into())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn timed(limit: Duration, f: fn() -> Outcome) -> impl Fn() -> Outcome {
    move || {
        let start = Instant::now();
        let r = f()?;
        within(start, limit)?;
        Ok(r)
    }
}

fn main() -> ExitCode {
    let one_second = Duration::from_secs(1);
    let criteria: Vec<(&str, Check)> = vec![
        (
            "traits table regeneration",
            Box::new(timed(one_second, traits_table_matches)),
        ),
        (
            "satisfaction table regeneration",
            Box::new(timed(one_second, satisfaction_table_matches)),
        ),
        ("entangling mappings", Box::new(bell_mappings)),
        ("V·V = NOT", Box::new(v_squared_is_not)),
        ("angle geometry grid", Box::new(angle_geometry)),
        ("mixed-state diagnostics", Box::new(mixed_state_diagnostics)),
        ("measurement statistics", Box::new(measurement_statistics)),
        ("expectation identity", Box::new(expectation_identity)),
        ("danger detection", Box::new(danger_detection)),
        ("session determinism", Box::new(session_determinism)),
        ("trajectory comparison", Box::new(trajectory_comparison)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} [{ms:.0} ms]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{ms:.0} ms]");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
