//! Replays the checked-in fuzz seeds through the fuzz targets' round-trip checks.

use std::fs;
use std::path::PathBuf;

use danielewski::parse::{parse_poly, parse_scalar, parse_scalar_list, parse_shape};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| fs::read_to_string(f.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn poly_seeds() {
    for s in seeds("parse_poly") {
        if let Ok(p) = parse_poly(&s) {
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s}");
        }
    }
}

#[test]
fn scalar_seeds() {
    for s in seeds("parse_scalar") {
        let v = parse_scalar(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(parse_scalar(&v.to_string()).unwrap(), v);
    }
}

#[test]
fn shape_seeds() {
    for s in seeds("parse_shape") {
        let v = parse_shape(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let text = format!("g={};a={};b={}", v.g, v.a, v.b);
        assert_eq!(parse_shape(&text).unwrap(), v);
    }
}

#[test]
fn scalar_list_seeds() {
    for s in seeds("parse_scalar_list") {
        let v = parse_scalar_list(&s).unwrap_or_else(|e| panic!("{s:?}: {e}"));
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(parse_scalar_list(&text.join(",")).unwrap(), v);
    }
}
