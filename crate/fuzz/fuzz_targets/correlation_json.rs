#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(corr) = qcorr::json::parse_correlation(text) {
            // valid correlations must survive the angle roundtrip
            let angles = qcorr::corsets::to_angles(&corr);
            let back = qcorr::corsets::from_angles(&angles);
            for x in 0..corr.n() {
                for y in 0..corr.m() {
                    assert!((back.get(x, y) - corr.get(x, y)).abs() < 1e-9);
                }
            }
        }
    }
});
