#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(partial) = qcorr::json::parse_partial_matrix(text) {
            if partial.dim() <= 8 {
                let _ = partial.is_partial_psd(1e-9);
            }
        }
    }
});
