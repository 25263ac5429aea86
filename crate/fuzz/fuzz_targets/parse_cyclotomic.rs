#![no_main]

use libfuzzer_sys::fuzz_target;
use orbikit::json::*;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = std::str::from_utf8(data).map_err(drop).and_then(|s| parse_str(s).map_err(drop)) else { return };
    if let Ok(x) = parse_cyclotomic(&v) {
        let again = parse_cyclotomic(&cyclotomic_to_json(&x)).map(|y| assert_eq!(x, y));
        assert!(again.is_ok(), "emitted value failed to re-parse");
    }
});
