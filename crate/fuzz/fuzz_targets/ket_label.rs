#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::formats::parse_ket_label;
use qaffect::quantum::ket_label;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(state) = parse_ket_label(text) {
        let index = state.basis_index().expect("labels name basis states");
        let label = ket_label(state.n_qubits(), index);
        assert_eq!(parse_ket_label(&label).expect("canonical label"), state);
    }
});
