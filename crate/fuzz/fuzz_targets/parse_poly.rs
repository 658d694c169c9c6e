#![no_main]

use danielewski::parse::{parse_bipoly, parse_poly, parse_unipoly};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_poly(data) {
        // Printing and reparsing must give back the same polynomial.
        let again = parse_poly(&p.to_string()).expect("display output parses");
        assert_eq!(again, p);
    }
    let _ = parse_bipoly(data);
    let _ = parse_unipoly(data);
});
