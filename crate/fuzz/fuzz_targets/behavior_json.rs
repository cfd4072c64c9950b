#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(behavior) = qcorr::json::parse_behavior(text) {
            // projection either succeeds or reports a structured error
            let _ = qcorr::corsets::correlators_from_behavior(&behavior, 1e-9);
        }
    }
});
