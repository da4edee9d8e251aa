#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::session::{compare_trajectories, parse_trajectory_csv, write_trajectory_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(samples) = parse_trajectory_csv(text) else {
        return;
    };
    let again = parse_trajectory_csv(&write_trajectory_csv(&samples)).expect("written CSV parses");
    assert_eq!(again, samples);
    if let Ok(r) = compare_trajectories(&samples, &samples) {
        assert!(r.mean_dev <= r.max_dev && r.max_dev <= std::f64::consts::PI);
    }
});
