#![no_main]

use libfuzzer_sys::fuzz_target;
use orbikit::exactnum::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rational(s) {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
});
