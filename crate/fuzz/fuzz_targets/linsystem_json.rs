#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(system) = qcorr::json::parse_linsystem(text) {
            // canonicalization is idempotent on anything that parses
            let again = system.clone().canonical();
            assert_eq!(system, again);
        }
    }
});
