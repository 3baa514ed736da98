#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = atcert::io::parse_graph(s) {
        let back = atcert::io::parse_graph(&atcert::io::graph_to_json(&g)).expect("round trip");
        assert_eq!(back, g);
        let _ = g.trace_faces();
        let _ = g.to_near_triangulation();
    }
});
