#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = qcorr::json::parse_rat(text) {
            // display form must parse back to the same value
            let display = qcorr::json::rat_to_string(&r);
            let back = qcorr::json::parse_rat(&display).expect("display form parses");
            assert_eq!(r, back);
        }
    }
});
