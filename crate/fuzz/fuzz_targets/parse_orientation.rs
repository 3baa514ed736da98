#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(o) = atcert::io::parse_arcs(s) {
        if o.num_arcs() <= 16 {
            let e = atcert::at_core::diff_enum(&o).expect("within cap");
            assert_eq!(Ok(e.diff), atcert::at_core::diff_coeff(&o).map_err(|_| ()));
        }
    }
});
