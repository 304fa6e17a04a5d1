//! End-to-end checks of the installed binary: byte-exact outputs, exit
//! codes, and environment handling.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_prop-hopf"));
    cmd.env_remove("PROP_HOPF_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is utf-8")
}

fn stderr(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("stderr is utf-8")
}

#[test]
fn golden_outputs_are_byte_exact() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["normalize", "--engine=rewrite", "mu . (id(1) x S) . delta"],
            "{m:1,n:1,p:[0],q:[0],e:[],sigma:[]}\n",
        ),
        (&["eval", "delta . mu"], "[x1 x2, x1 x2 | 2 -> 2]\n"),
        (&["equal", "mu . P(1,1)", "mu"], "true\n"),
    ];
    for (args, expected) in cases {
        let output = run(args);
        assert_eq!(output.status.code(), Some(0), "{args:?}");
        assert_eq!(output.stdout, expected.as_bytes(), "{args:?}");
        assert!(output.stderr.is_empty(), "{args:?}: {}", stderr(&output));
    }
}

#[test]
fn domain_errors_use_exit_code_one() {
    let output = run(&["eval", "mu . mu"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
    assert!(stderr(&output).starts_with("ERROR type:"), "{}", stderr(&output));

    let output = run(&["peel", "[1 | 1 -> 1]"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).starts_with("ERROR cannot-peel:"));

    let output = run(&["decode", "{m:1,n:1,p:[0],q:[0],e:[0],sigma:[1]}"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).starts_with("ERROR non-canonical:"));

    let output = run(&["suite", "frobnicate"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).starts_with("ERROR unknown-suite:"));
}

#[test]
fn malformed_input_uses_exit_code_two() {
    let output = run(&["parse", "mu . . delta"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).starts_with("ERROR syntax:"), "{}", stderr(&output));

    let output = run(&["equal", "mu"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).starts_with("ERROR usage:"));

    let output = run(&[]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).starts_with("ERROR usage:"));
}

#[test]
fn errors_are_single_lines() {
    for args in [
        &["eval", "mu . mu"][..],
        &["parse", "(("][..],
        &["encode", "[x9 | 1 -> 2]"][..],
        &["suite", "words", "--count", "many"][..],
    ] {
        let output = run(args);
        let err = stderr(&output);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("ERROR "), "{args:?}: {err}");
    }
}

#[test]
fn suite_seed_precedence_is_flag_env_default() {
    let flag_run = run(&["suite", "interchange", "--seed", "5", "--count", "4"]);
    assert_eq!(flag_run.status.code(), Some(0));

    let env_run = bin()
        .args(["suite", "interchange", "--count", "4"])
        .env("PROP_HOPF_SEED", "5")
        .output()
        .expect("binary runs");
    assert_eq!(env_run.stdout, flag_run.stdout);

    let flag_beats_env = bin()
        .args(["suite", "interchange", "--seed", "5", "--count", "4"])
        .env("PROP_HOPF_SEED", "99")
        .output()
        .expect("binary runs");
    assert_eq!(flag_beats_env.stdout, flag_run.stdout);

    let bad_env = bin()
        .args(["suite", "interchange", "--count", "4"])
        .env("PROP_HOPF_SEED", "five")
        .output()
        .expect("binary runs");
    assert_eq!(bad_env.status.code(), Some(2));
    assert!(stderr(&bad_env).starts_with("ERROR usage:"));
}

#[test]
fn suite_runs_twice_identically() {
    let first = run(&["suite", "triangle", "--seed", "11", "--count", "6"]);
    let second = run(&["suite", "triangle", "--seed", "11", "--count", "6"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let head = stdout(&first).lines().next().unwrap();
    assert!(head.starts_with("SUITE triangle CASES "), "{head}");
    assert!(head.ends_with("FAILURES 0"), "{head}");
}

#[test]
fn suite_list_names_every_suite() {
    let output = run(&["suite", "list"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for name in [
        "words",
        "category",
        "hopf-axioms",
        "delta-mu",
        "interchange",
        "triangle",
        "convolution",
        "normalizers",
        "peeling",
        "coproduct",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("{name}:"))),
            "{name} missing:\n{text}"
        );
    }
}

#[test]
fn peel_emits_generator_then_record() {
    let output = run(&["peel", "[x2 x1^-1 | 1 -> 2]"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        stdout(&output),
        "y(1,2,0,1,2)\n{m:1,n:2,p:[1],q:[1,0],e:[1],sigma:[1]}\n"
    );
}

#[test]
fn render_is_stable() {
    let first = run(&["render", "mu . (id(1) x S) . delta"]);
    let second = run(&["render", "mu . (id(1) x S) . delta"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("[S]"));
    for line in text.lines() {
        assert_eq!(line, line.trim_end());
    }
}

#[test]
fn parse_and_print_round_trip_through_the_binary() {
    for source in [
        "mu", "eta", "delta", "eps", "S", "id(4)", "P(2,3)",
        "mu . id(1) x S . delta",
        "conv(S, id(1))",
        "vee(mu, S)",
        "y(2,1,1,2,3)",
        "mui[2,0,3]",
        "deltai[1,2]",
        "perm[3,1,2]",
    ] {
        let once = run(&["parse", source]);
        assert_eq!(once.status.code(), Some(0), "{source}");
        let printed = stdout(&once).trim_end().to_string();
        let twice = run(&["parse", &printed]);
        assert_eq!(stdout(&twice).trim_end(), printed, "{source}");
    }
}
