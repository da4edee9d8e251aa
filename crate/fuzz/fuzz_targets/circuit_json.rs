#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::formats::parse_circuit_json;
use qaffect::gates::run_circuit;
use qaffect::quantum::basis_state;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(circuit) = parse_circuit_json(text) {
        let input = basis_state(circuit.n_qubits(), 0).expect("qubit count was validated");
        let out = run_circuit(&circuit, &input).expect("validated circuits run");
        assert!((out.norm_sqr() - 1.0).abs() < 1e-8);
    }
});
