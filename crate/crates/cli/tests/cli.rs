use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_danielewski"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(report: &'a str, key: &str) -> Vec<&'a str> {
    let prefix = format!("{key}: ");
    report.lines().filter_map(|l| l.strip_prefix(prefix.as_str())).collect()
}

const WORKED: [&str; 6] = ["--c", "x^2", "--q", "y^2", "--shape", "g=x;a=3;b=x^2"];

#[test]
fn group_of_order_four() {
    let o = run(&["group", "--c", "x^2-1", "--q", "y^2+x"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("group: Z/4\n"), "{out}");
    assert_eq!(value(&out, "points"), ["4"]);
    assert_eq!(value(&out, "point").len(), 4);
    assert_eq!(value(&out, "invariants"), ["(1,4)"]);
}

#[test]
fn worked_isotropy_is_three_dimensional() {
    let o = run(&[&["isotropy"][..], &WORKED].concat());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(value(&out, "dim"), ["3"]);
    assert_eq!(value(&out, "kernel_dim"), ["1"]);
    assert_eq!(value(&out, "kernel_generator"), ["x"]);
    assert_eq!(value(&out, "m"), ["3"]);
    assert_eq!(value(&out, "theta_invariants"), ["(0,0)"]);
    assert!(value(&out, "section").contains(&"e=2, u=3, ell=-1"));
}

#[test]
fn standard_derivation_is_lnd() {
    let o = run(&["lnd", "--c", "x^2", "--q", "y^2", "--dx", "0", "--dy", "x^2", "--dz", "2*y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lnd: true\nell: 1\n");
}

#[test]
fn quiet_prints_the_headline() {
    let o = run(&[&["--quiet", "isotropy"][..], &WORKED].concat());
    assert_eq!(stdout(&o), "dim: 3\n");
}

#[test]
fn reports_are_reproducible() {
    let args = [&["oracle"][..], &WORKED, &["--torsion-bound", "4"]].concat();
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("agreement: true\n"));
}

#[test]
fn exit_codes() {
    let parse = run(&["group", "--c", "x^2+", "--q", "y^2"]);
    assert_eq!(parse.status.code(), Some(1));
    let unknown = run(&["group", "--c", "x^2", "--q", "y^2", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    let missing = run(&["group", "--c", "x^2"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let not_der = run(&["derivation-check", "--c", "x^2", "--q", "y^2", "--dx", "0", "--dy", "x^2", "--dz", "y"]);
    assert_eq!(not_der.status.code(), Some(2));
    assert_eq!(value(&stdout(&not_der), "error"), ["NotADerivation"]);

    let lnd = run(&["isotropy", "--c", "x^2", "--q", "y^2", "--dx", "0", "--dy", "x^2", "--dz", "2*y"]);
    assert_eq!(lnd.status.code(), Some(2));
    assert_eq!(value(&stdout(&lnd), "error"), ["IsLocallyNilpotent"]);

    let outside = run(&["member", "--c", "x^2-1", "--q", "y^2+x", "--dx", "0", "--dy", "x^2-1", "--dz", "2*y", "--e", "2", "--u", "1"]);
    assert_eq!(outside.status.code(), Some(2));
    assert_eq!(value(&stdout(&outside), "error"), ["NotInGroup"]);
}

#[test]
fn non_reduced_input_is_moved_and_echoed() {
    let o = run(&["reduce", "--c", "x^2+2*x", "--q", "y^2+x^3"]);
    let out = stdout(&o);
    assert_eq!(value(&out, "reduced"), ["(x^2-1)*z = y^2+4*x-4"]);
    assert_eq!(value(&out, "input_reduced"), ["false"]);

    let lnd = run(&["lnd", "--c", "x^2+2*x", "--q", "y^2+x^3", "--dx", "0", "--dy", "x^2+2*x", "--dz", "2*y"]);
    let out = stdout(&lnd);
    assert_eq!(value(&out, "lnd"), ["true"]);
    assert_eq!(value(&out, "map"), ["x -> x+(-1), y -> y+(0), z -> z+(x-3)"]);
    assert_eq!(value(&out, "ell"), ["1"]);
}

#[test]
fn automorphism_commands() {
    let f = run(&["factor", "--c", "x^2", "--q", "y^2", "--e", "2", "--u", "-3", "--ell", "x-1"]);
    assert_eq!(value(&stdout(&f), "recomposed"), ["true"]);
    let exp = run(&["factor", "--c", "x^2", "--q", "y^2", "--e", "1", "--u", "1", "--ell", "x-1"]);
    assert_eq!(value(&stdout(&exp), "exponential"), ["x-1"]);
    let a = run(&["autos", "--c", "x^2", "--q", "y^2", "--e", "-1", "--u", "1"]);
    let out = stdout(&a);
    assert_eq!(value(&out, "x"), ["-x"]);
    assert_eq!(value(&out, "y"), ["y"]);
}

#[test]
fn member_above_a_point() {
    let o = run(&[&["member"][..], &WORKED, &["--e", "2", "--u", "3"]].concat());
    let out = stdout(&o);
    assert_eq!(value(&out, "member"), ["true"]);
    assert_eq!(value(&out, "automorphism"), ["(e=2, u=3, ell=-1)"]);
    assert_eq!(value(&out, "commutes"), ["true"]);
}

#[test]
fn output_file_gets_the_full_report() {
    let path = std::env::temp_dir().join(format!("danielewski-cli-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&[&["--output", p, "clear-z"][..], &WORKED].concat());
    assert_eq!(stdout(&o), "k: 0\n");
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, "k: 0\nf1: x\nf2: 3*y+x^2\n");
}

#[test]
fn selftest_single_criterion() {
    let o = run(&["selftest", "--only", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("selftest: PASS (1/1)\n"), "{out}");
    assert!(value(&out, "criterion 1")[0].starts_with("PASS"));
    assert_eq!(run(&["selftest", "--only", "10"]).status.code(), Some(1));
}
