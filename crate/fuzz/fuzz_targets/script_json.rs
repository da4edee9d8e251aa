#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::session::parse_script_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(script) = parse_script_json(text) else {
        return;
    };
    // Coarse sampling keeps long scripts cheap.
    if let Ok(path) = script.predict(Some(0.5)) {
        for s in &path {
            assert!((s.point().length() - 1.0).abs() < 1e-9);
        }
    }
});
