#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = atcert::Certificate::from_json(s);
    let _ = atcert::Certificate::parse_claims(s);
});
