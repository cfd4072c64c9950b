#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = qcorr::json::parse_graph(text) {
            if graph.vertex_count() <= 12 {
                let _ = graph.is_chordal();
            }
        }
    }
});
