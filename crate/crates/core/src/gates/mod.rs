//! Gate library, circuit execution, Born-rule measurement and expectations.

mod circuit;
mod gate;
mod measure;

pub use circuit::{apply_gate, epr_circuit, epr_map, run_circuit, Circuit, Step};
pub use gate::{resolve_gate, rotation_gate, standard_gate, Gate, ROTATION_GATES, STANDARD_GATES};
pub use measure::{
    expectation, labeled_probabilities, measure_qubit, measure_register, probabilities,
    project_qubit, sample_counts, MeasurementOperator, MeasurementRecord, RandomSource,
};
