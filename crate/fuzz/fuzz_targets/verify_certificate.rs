#![no_main]

use libfuzzer_sys::fuzz_target;

// graph JSON and certificate JSON separated by a NUL byte
fuzz_target!(|data: &[u8]| {
    let Some(cut) = data.iter().position(|&b| b == 0) else { return };
    let (Ok(g), Ok(c)) = (std::str::from_utf8(&data[..cut]), std::str::from_utf8(&data[cut + 1..])) else {
        return;
    };
    let (Ok(g), Ok(c)) = (atcert::io::parse_graph(g), atcert::Certificate::parse_claims(c)) else {
        return;
    };
    if g.num_edges() <= 40 {
        let _ = atcert::verify::check_certificate(&c, &g);
    }
});
