#![no_main]

use libfuzzer_sys::fuzz_target;
use qaffect::session::{SessionConfig, SessionHandler};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut handler = SessionHandler::new(SessionConfig::default(), None).expect("default config");
    for line in text.lines().take(64) {
        handler.handle_text(line);
        assert!((handler.session().register().norm_sqr() - 1.0).abs() < 1e-8);
    }
});
