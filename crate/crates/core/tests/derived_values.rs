//! Operation examples whose expected values come from the reference
//! computations in `common`, checked against the library.
#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use common::*;
use qaffect::gates::{
    apply_gate, expectation, measure_qubit, project_qubit, Gate, MeasurementOperator, RandomSource,
};
use qaffect::network::{concurrent_activations, Dimension, TransitionNetwork, Traversal};
use qaffect::quantum::*;
use qaffect::session::{
    compare_trajectories, predict_trajectory, JoystickInput, SessionConfig, SessionState,
    TrajectorySample, Waypoint,
};

fn plus() -> PureState {
    PureState::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap()
}

#[test]
fn inner_product_with_plus() {
    let ip = inner_product(&basis_state(1, 0).unwrap(), &plus()).unwrap();
    // ⟨0|+⟩ = conj(1)·(1/√2) + conj(0)·(1/√2)
    let oracle = c(1.0, 0.0).conj() * c(FRAC_1_SQRT_2, 0.0);
    assert!((ip - oracle).norm() < 1e-15);
}

#[test]
fn tensor_against_kronecker() {
    let out = tensor(&plus(), &basis_state(1, 0).unwrap()).unwrap();
    let oracle = kron_vec(plus().amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(max_diff(out.amplitudes(), &oracle) < 1e-15);
    // (|00⟩ + |10⟩)/√2
    assert!((out.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((out.amplitude(2).re - FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn density_of_plus_against_outer_product() {
    let rho = density_from_pure(&plus());
    let oracle = outer(plus().amplitudes(), plus().amplitudes());
    for i in 0..2 {
        for j in 0..2 {
            assert!((rho.get(i, j) - oracle[i][j]).norm() < 1e-15);
            assert!((rho.get(i, j).re - 0.5).abs() < 1e-15);
        }
    }
}

fn three_quarter_mix() -> DensityMatrix {
    mix(&Ensemble::new(vec![
        (0.75, basis_state(1, 0).unwrap()),
        (0.25, basis_state(1, 1).unwrap()),
    ])
    .unwrap())
}

#[test]
fn weighted_mixture() {
    let rho = three_quarter_mix();
    let p0 = outer(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]);
    let p1 = outer(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)]);
    for i in 0..2 {
        for j in 0..2 {
            let oracle = 0.75 * p0[i][j] + 0.25 * p1[i][j];
            assert!((rho.get(i, j) - oracle).norm() < 1e-15);
        }
    }
}

#[test]
fn purity_against_matrix_square() {
    let rho = three_quarter_mix();
    let m: Mat = (0..2)
        .map(|i| (0..2).map(|j| rho.get(i, j)).collect())
        .collect();
    let oracle = trace(&matmul(&m, &m)).re;
    assert!((oracle - 0.625).abs() < 1e-15);
    assert!((purity(&rho) - oracle).abs() < 1e-15);
}

#[test]
fn eigen2_against_characteristic_polynomial() {
    let rho = density_from_pure(&plus());
    let m: Mat = (0..2)
        .map(|i| (0..2).map(|j| rho.get(i, j)).collect())
        .collect();
    let (hi, lo) = char_poly_roots(&m);
    assert!((hi - 1.0).abs() < 1e-12 && lo.abs() < 1e-12);
    let (vals, vecs) = eigen2(&rho).unwrap();
    assert!((vals[0] - hi).abs() < 1e-12 && (vals[1] - lo).abs() < 1e-12);
    // ρv = λv and v ∝ |+⟩
    let v = vecs[0].amplitudes();
    let rv = matvec(&m, v);
    assert!(max_diff(&rv, &v.iter().map(|a| a * vals[0]).collect::<Vec<_>>()) < 1e-12);
    assert!((inner_product(&vecs[0], &plus()).unwrap().norm() - 1.0).abs() < 1e-12);
}

#[test]
fn bloch_from_trace_formula() {
    let rho = three_quarter_mix();
    let m: Mat = (0..2)
        .map(|i| (0..2).map(|j| rho.get(i, j)).collect())
        .collect();
    let oracle = [
        trace(&matmul(&m, &pauli_x())).re,
        trace(&matmul(&m, &pauli_y())).re,
        trace(&matmul(&m, &pauli_z())).re,
    ];
    assert_eq!(oracle, [0.0, 0.0, 0.5]);
    let b = bloch_from_density(&rho).unwrap();
    assert!(
        max_diff(
            &[c(b.x, 0.0), c(b.y, 0.0), c(b.z, 0.0)],
            &oracle.map(|v| c(v, 0.0))
        ) < 1e-15
    );
}

#[test]
fn cnot_on_superposition_against_dense_embedding() {
    let input = tensor(&plus(), &basis_state(1, 0).unwrap()).unwrap();
    let out = apply_gate(&input, &Gate::cnot(), &[0, 1]).unwrap();
    let oracle = matvec(
        &embed(Gate::cnot().matrix(), &[0, 1], 2),
        input.amplitudes(),
    );
    assert!(max_diff(out.amplitudes(), &oracle) < 1e-15);
    // (|00⟩ + |11⟩)/√2
    assert!((out.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((out.amplitude(3).re - FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn embedding_matches_for_every_target_layout() {
    let gates = [
        Gate::h(),
        Gate::v(),
        Gate::ry(0.4),
        Gate::cnot(),
        Gate::cv(),
        Gate::cv().adjoint(),
    ];
    // A fixed non-symmetric 3-qubit input.
    let input = PureState::normalized(
        (0..8)
            .map(|k| c(1.0 + k as f64, 0.5 * k as f64 - 1.0))
            .collect(),
    )
    .unwrap();
    for g in &gates {
        let layouts: Vec<Vec<usize>> = if g.arity() == 1 {
            (0..3).map(|q| vec![q]).collect()
        } else {
            (0..3)
                .flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| vec![a, b]))
                .collect()
        };
        for t in layouts {
            let out = apply_gate(&input, g, &t).unwrap();
            let oracle = matvec(&embed(g.matrix(), &t, 3), input.amplitudes());
            assert!(
                max_diff(out.amplitudes(), &oracle) < 1e-12,
                "{} on {t:?}",
                g.name()
            );
        }
    }
}

#[test]
fn measurement_post_state_against_projector() {
    let bell = apply_gate(
        &tensor(&plus(), &basis_state(1, 0).unwrap()).unwrap(),
        &Gate::cnot(),
        &[0, 1],
    )
    .unwrap();
    // Projector |0⟩⟨0| ⊗ I, then renormalize.
    let proj = kron(&unit(0, 0), &identity(2));
    let projected = matvec(&proj, bell.amplitudes());
    let norm = projected.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let oracle: Vec<C> = projected.iter().map(|a| a / norm).collect();

    let rec = project_qubit(&bell, 0, 0).unwrap();
    assert!(max_diff(rec.post_state.amplitudes(), &oracle) < 1e-15);
    assert_eq!(rec.post_state, basis_state(2, 0).unwrap());

    // Sampled outcomes collapse to the same states.
    let mut seen = BTreeSet::new();
    for seed in 0..50 {
        let rec = measure_qubit(&bell, 0, &mut RandomSource::new(seed)).unwrap();
        let want = basis_state(2, if rec.outcome_index == 0 { 0 } else { 3 }).unwrap();
        assert!(rec.post_state.max_abs_diff(&want) < 1e-15);
        assert!((rec.probability - 0.5).abs() < 1e-12);
        seen.insert(rec.outcome_index);
    }
    assert_eq!(seen.len(), 2);
}

#[test]
fn z_expectation_is_cos_theta() {
    let s = pure_from_angles(FRAC_PI_3, 0.0).unwrap();
    let e = expectation(&s, &MeasurementOperator::z_axis()).unwrap();
    assert!((e - FRAC_PI_3.cos()).abs() < 1e-12);
    assert!((e - 0.5).abs() < 1e-12);
}

#[test]
fn hadamard_arc_from_idle() {
    let net = TransitionNetwork::from_json(
        r#"{"nodes": [{"id": "idle", "metrics": {}}, {"id": "ethics", "metrics": {}}],
            "arcs": [{"from": "idle", "to": "ethics", "operator": "H"}],
            "start": "idle"}"#,
    )
    .unwrap();
    let mut t = Traversal::start(&net);
    t.go(&net, "ethics").unwrap();
    let h: Mat = vec![
        vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
        vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
    ];
    let oracle = matvec(&h, &[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(max_diff(t.register.amplitudes(), &oracle) < 1e-15);
}

#[test]
fn activations_against_bitmask_powerset() {
    let dims = [
        Dimension::Ethics,
        Dimension::Engagement,
        Dimension::UseIntentions,
    ];
    let oracle: BTreeSet<BTreeSet<Dimension>> = (1u32..8)
        .map(|mask| {
            (0..3)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| dims[i])
                .collect()
        })
        .collect();
    let got = concurrent_activations(&dims.into_iter().collect()).unwrap();
    assert_eq!(got.len(), 7);
    assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), oracle);
}

#[test]
fn full_dx_tick_against_rotation_matrix() {
    let mut s = SessionState::new(SessionConfig::default()).unwrap();
    let p = *s
        .tick(&JoystickInput {
            dx: 1.0,
            dy: 0.0,
            rot: 0.0,
            dt: 1.0,
        })
        .unwrap();
    // Ry(θ) turns the Bloch vector about +y by θ = ω·dx·dt = π/2.
    let oracle = rotate_about_y([0.0, 0.0, 1.0], FRAC_PI_2);
    assert!((p.x - oracle[0]).abs() < 1e-9);
    assert!((p.y - oracle[1]).abs() < 1e-9);
    assert!((p.z - oracle[2]).abs() < 1e-9);
    assert!((p.x - 1.0).abs() < 1e-9);
}

#[test]
fn great_circle_midpoint_closed_form() {
    let path = predict_trajectory(
        &[
            Waypoint {
                target: [0.0, 0.0, 1.0],
                duration: 1.0,
            },
            Waypoint {
                target: [1.0, 0.0, 0.0],
                duration: 1.0,
            },
        ],
        0.25,
    )
    .unwrap();
    let mid = path.iter().find(|s| (s.t - 0.5).abs() < 1e-12).unwrap();
    // Halfway along a quarter circle: angle π/4 from the pole.
    let oracle = [FRAC_PI_4.sin(), 0.0, FRAC_PI_4.cos()];
    assert!((mid.x - oracle[0]).abs() < 1e-12);
    assert!(mid.y.abs() < 1e-12);
    assert!((mid.z - oracle[2]).abs() < 1e-12);
    // two equal segments of 1 s at 0.25 s → 2/0.25 + 1 samples
    assert_eq!(path.len(), 9);
}

#[test]
fn orthogonal_paths_score_quarter_turn() {
    let north: Vec<_> = (0..4)
        .map(|k| TrajectorySample::at(k as f64, BlochVector::new(0.0, 0.0, 1.0)))
        .collect();
    let east: Vec<_> = (0..4)
        .map(|k| TrajectorySample::at(k as f64, BlochVector::new(1.0, 0.0, 0.0)))
        .collect();
    let r = compare_trajectories(&north, &east).unwrap();
    let oracle = (0.0f64).acos(); // dot product of the two unit vectors is 0
    assert!((r.mean_dev - oracle).abs() < 1e-12);
    assert!((r.max_dev - FRAC_PI_2).abs() < 1e-12);
    assert!(r.mean_dev <= r.max_dev && r.max_dev <= PI);
}

#[test]
fn equator_born_sampling() {
    // One second at full dx reaches +x; one second at full rot then reaches the threshold.
    let mut zeros = 0;
    let sessions = 10_000;
    for seed in 0..sessions {
        let mut s = SessionState::new(SessionConfig {
            seed,
            ..Default::default()
        })
        .unwrap();
        s.tick(&JoystickInput {
            dx: 1.0,
            dy: 0.0,
            rot: 0.0,
            dt: 1.0,
        })
        .unwrap();
        let rec = s
            .advance(&JoystickInput {
                dx: 0.0,
                dy: 0.0,
                rot: 1.0,
                dt: 1.0,
            })
            .unwrap()
            .expect("threshold reached");
        // Rz keeps the state on the equator: p = 1/2 for both outcomes.
        assert!((rec.probability - 0.5).abs() < 1e-9);
        if rec.outcome_index == 0 {
            zeros += 1;
        }
    }
    let freq = zeros as f64 / sessions as f64;
    assert!((0.47..=0.53).contains(&freq), "{freq}");
}
