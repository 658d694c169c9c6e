#![no_main]

use danielewski::parse::parse_scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_scalar(data) {
        assert_eq!(parse_scalar(&s.to_string()).expect("display output parses"), s);
    }
});
