#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::network::{detect_danger, TransitionNetwork};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(net) = TransitionNetwork::from_json(text) else {
        return;
    };
    let json = net.to_json().expect("valid networks serialize");
    assert_eq!(
        TransitionNetwork::from_json(&json).expect("round trip"),
        net
    );
    for metric in net.nodes().iter().flat_map(|n| n.metrics.keys()) {
        let report = detect_danger(&net, metric, 0.5).expect("metric exists");
        for id in report.node_ids() {
            assert!(net.node(id).is_some());
        }
    }
});
