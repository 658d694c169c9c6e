#![no_main]

use danielewski::parse::parse_scalar_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(v) = parse_scalar_list(data) {
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(parse_scalar_list(&text.join(",")).expect("display output parses"), v);
    }
});
