#![no_main]

use danielewski::parse::parse_shape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_shape(data) {
        let text = format!("g={};a={};b={}", s.g, s.a, s.b);
        assert_eq!(parse_shape(&text).expect("display output parses"), s);
    }
});
