//! Command line front end.
//!
//! Results go to stdout; every error becomes a single stderr line of the
//! shape `ERROR <kind>: <detail>`. Exit code 0 means success, 1 means the
//! input was well-formed but named an invalid object or a failing check,
//! and 2 means the command line itself was malformed.

use std::io::Write;

use crate::axioms::{run_suite, FuzzConfig, SUITES};
use crate::canonical::{decode, encode, equal, normalize_eval, normalize_rewrite, peel, CanonError};
use crate::fcat::CatError;
use crate::hterm::{conv, vee, TermError};
use crate::parse::{parse_bracket, parse_canonical, parse_term, ParseError};
use crate::render::render;
use crate::words::WordError;

const DOMAIN: u8 = 1;
const USAGE: u8 = 2;

fn word_kind(e: &WordError) -> &'static str {
    match e {
        WordError::IndexOutOfRange { .. } => "index",
        WordError::RankMismatch { .. } | WordError::SubstitutionArity { .. } => "rank",
    }
}

fn term_kind(e: &TermError) -> &'static str {
    match e {
        TermError::Boundary { .. } | TermError::ConvBoundary { .. } | TermError::Codomain { .. } => {
            "type"
        }
        TermError::Index { .. } => "index",
        TermError::Rank { .. } => "rank",
    }
}

fn cat_kind(e: &CatError) -> &'static str {
    match e {
        CatError::Arity { .. } | CatError::Rank { .. } => "rank",
        CatError::Boundary { .. } | CatError::ConvBoundary { .. } => "type",
        CatError::Word(w) => word_kind(w),
    }
}

fn canon_kind(e: &CanonError) -> &'static str {
    match e {
        CanonError::Invalid { .. } => "non-canonical",
        CanonError::CannotPeel => "cannot-peel",
        CanonError::Boundary { .. } => "type",
        CanonError::Term(t) => term_kind(t),
    }
}

fn parse_kind(e: &ParseError) -> &'static str {
    match e {
        _ if e.is_syntax() => "syntax",
        ParseError::Term(t) => term_kind(t),
        ParseError::Perm(_) => "index",
        ParseError::Word(w) => word_kind(w),
        ParseError::Cat(c) => cat_kind(c),
        ParseError::Canon(c) => canon_kind(c),
        _ => "syntax",
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn print(&mut self, text: impl std::fmt::Display) -> u8 {
        let _ = writeln!(self.out, "{text}");
        0
    }

    fn fail(&mut self, code: u8, kind: &str, detail: impl std::fmt::Display) -> u8 {
        let _ = writeln!(self.err, "ERROR {kind}: {detail}");
        code
    }

    fn usage(&mut self, detail: impl std::fmt::Display) -> u8 {
        self.fail(USAGE, "usage", detail)
    }

    fn parse_failed(&mut self, e: &ParseError) -> u8 {
        let code = if e.is_syntax() { USAGE } else { DOMAIN };
        self.fail(code, parse_kind(e), e)
    }
}

macro_rules! try_parse {
    ($io:expr, $parsed:expr) => {
        match $parsed {
            Ok(v) => v,
            Err(e) => return $io.parse_failed(&e),
        }
    };
}

fn positional<'a>(io: &mut Io<'_>, args: &'a [String], shape: &str) -> Result<&'a str, u8> {
    match args {
        [one] => Ok(one),
        _ => Err(io.usage(format_args!("expected {shape}"))),
    }
}

fn two_positionals<'a>(
    io: &mut Io<'_>,
    args: &'a [String],
    shape: &str,
) -> Result<(&'a str, &'a str), u8> {
    match args {
        [a, b] => Ok((a, b)),
        _ => Err(io.usage(format_args!("expected {shape}"))),
    }
}

fn flag_value(
    io: &mut Io<'_>,
    flag: &str,
    inline: Option<&str>,
    rest: &mut std::slice::Iter<'_, String>,
) -> Result<String, u8> {
    match inline {
        Some(v) => Ok(v.to_string()),
        None => match rest.next() {
            Some(v) => Ok(v.clone()),
            None => Err(io.usage(format_args!("{flag} needs a value"))),
        },
    }
}

fn number<T: std::str::FromStr>(io: &mut Io<'_>, flag: &str, value: &str) -> Result<T, u8> {
    value
        .parse()
        .map_err(|_| io.usage(format_args!("{flag} needs a non-negative integer, got `{value}`")))
}

fn default_seed(io: &mut Io<'_>) -> Result<u64, u8> {
    match std::env::var("PROP_HOPF_SEED") {
        Ok(text) => match text.trim().parse() {
            Ok(seed) => Ok(seed),
            Err(_) => Err(io.usage(format_args!(
                "PROP_HOPF_SEED needs a non-negative integer, got `{text}`"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(io.usage("PROP_HOPF_SEED needs a non-negative integer"))
        }
    }
}

fn cmd_normalize(io: &mut Io<'_>, args: &[String]) -> u8 {
    let mut engine = "rewrite".to_string();
    let mut terms = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) => (f, Some(v)),
            None => (arg.as_str(), None),
        };
        if flag == "--engine" {
            engine = match flag_value(io, flag, inline, &mut it) {
                Ok(v) => v,
                Err(code) => return code,
            };
        } else if flag.starts_with("--") {
            return io.usage(format_args!("unknown flag `{flag}`"));
        } else {
            terms.push(arg.clone());
        }
    }
    let term_text = match positional(io, &terms, "normalize [--engine=eval|rewrite] <term>") {
        Ok(t) => t.to_string(),
        Err(code) => return code,
    };
    let t = try_parse!(io, parse_term(&term_text));
    let normalized = match engine.as_str() {
        "rewrite" => normalize_rewrite(&t),
        "eval" => normalize_eval(&t),
        other => return io.usage(format_args!("--engine must be eval or rewrite, got `{other}`")),
    };
    match normalized {
        Ok(c) => io.print(c),
        Err(e) => io.fail(DOMAIN, term_kind(&e), e),
    }
}

fn cmd_suite(io: &mut Io<'_>, args: &[String]) -> u8 {
    let mut cfg = FuzzConfig {
        seed: match default_seed(io) {
            Ok(s) => s,
            Err(code) => return code,
        },
        ..FuzzConfig::default()
    };
    let mut names = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let (flag, inline) = match arg.split_once('=') {
            Some((f, v)) => (f, Some(v)),
            None => (arg.as_str(), None),
        };
        match flag {
            "--seed" | "--count" | "--max-nodes" => {
                let value = match flag_value(io, flag, inline, &mut it) {
                    Ok(v) => v,
                    Err(code) => return code,
                };
                match flag {
                    "--seed" => {
                        cfg.seed = match number(io, flag, &value) {
                            Ok(v) => v,
                            Err(code) => return code,
                        };
                    }
                    "--count" => {
                        cfg.count = match number(io, flag, &value) {
                            Ok(v) => v,
                            Err(code) => return code,
                        };
                    }
                    _ => {
                        cfg.max_nodes = match number(io, flag, &value) {
                            Ok(v) => v,
                            Err(code) => return code,
                        };
                    }
                }
            }
            _ if flag.starts_with("--") => {
                return io.usage(format_args!("unknown flag `{flag}`"));
            }
            _ => names.push(arg.clone()),
        }
    }
    if cfg.count == 0 {
        return io.usage("--count must be at least 1");
    }
    if cfg.max_nodes == 0 {
        return io.usage("--max-nodes must be at least 1");
    }
    let name = match positional(io, &names, "suite <name> [--seed N] [--count N] [--max-nodes N]")
    {
        Ok(n) => n.to_string(),
        Err(code) => return code,
    };
    if name == "list" {
        for (suite, about) in SUITES {
            let _ = writeln!(io.out, "{suite}: {about}");
        }
        return 0;
    }
    match run_suite(&name, &cfg) {
        Ok(report) => {
            let _ = writeln!(io.out, "{report}");
            if report.passed() {
                0
            } else {
                DOMAIN
            }
        }
        Err(e) => io.fail(DOMAIN, "unknown-suite", e),
    }
}

/// Run one command line. `args` excludes the program name.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let mut io = Io {
        out: stdout,
        err: stderr,
    };
    let io = &mut io;
    let Some((command, rest)) = args.split_first() else {
        return io.usage("expected a subcommand: parse, type, eval, normalize, encode, decode, equal, conv, vee, peel, suite, render");
    };
    match command.as_str() {
        "parse" => {
            let text = match positional(io, rest, "parse <term>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(text));
            io.print(t)
        }
        "type" => {
            let text = match positional(io, rest, "type <term>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(text));
            match t.infer_type() {
                Ok((m, n)) => io.print(format_args!("{m} -> {n}")),
                Err(e) => io.fail(DOMAIN, term_kind(&e), e),
            }
        }
        "eval" => {
            let text = match positional(io, rest, "eval <term>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(text));
            match t.eval() {
                Ok(f) => io.print(f),
                Err(e) => io.fail(DOMAIN, term_kind(&e), e),
            }
        }
        "normalize" => cmd_normalize(io, rest),
        "encode" => {
            let text = match positional(io, rest, "encode <bracket>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let f = try_parse!(io, parse_bracket(text));
            io.print(encode(&f))
        }
        "decode" => {
            let text = match positional(io, rest, "decode <canonical>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let c = try_parse!(io, parse_canonical(text));
            io.print(decode(&c))
        }
        "equal" => {
            let (a, b) = match two_positionals(io, rest, "equal <term> <term>") {
                Ok(p) => p,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(a));
            let u = try_parse!(io, parse_term(b));
            match equal(&t, &u) {
                Ok(answer) => io.print(answer),
                Err(e) => io.fail(DOMAIN, canon_kind(&e), e),
            }
        }
        "conv" | "vee" => {
            let shape = if command == "conv" {
                "conv <term> <term>"
            } else {
                "vee <term> <term>"
            };
            let (a, b) = match two_positionals(io, rest, shape) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(a));
            let u = try_parse!(io, parse_term(b));
            let built = if command == "conv" { conv(t, u) } else { vee(t, u) };
            match built {
                Ok(combined) => io.print(combined),
                Err(e) => io.fail(DOMAIN, term_kind(&e), e),
            }
        }
        "peel" => {
            let text = match positional(io, rest, "peel <bracket>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let f = try_parse!(io, parse_bracket(text));
            let c = encode(&f);
            match peel(&c) {
                Ok(((i, j, e), remainder)) => {
                    let _ = writeln!(io.out, "y({i},{j},{e},{},{})", c.m(), c.n());
                    io.print(remainder)
                }
                Err(e) => io.fail(DOMAIN, canon_kind(&e), e),
            }
        }
        "suite" => cmd_suite(io, rest),
        "render" => {
            let text = match positional(io, rest, "render <term>") {
                Ok(t) => t,
                Err(code) => return code,
            };
            let t = try_parse!(io, parse_term(text));
            match render(&t) {
                Ok(drawing) => io.print(drawing),
                Err(e) => io.fail(DOMAIN, term_kind(&e), e),
            }
        }
        other => io.usage(format_args!("unknown subcommand `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let code = run(&owned, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn golden_normalize() {
        let (code, out, err) = run_cli(&[
            "normalize",
            "--engine=rewrite",
            "mu . (id(1) x S) . delta",
        ]);
        assert_eq!((code, err.as_str()), (0, ""));
        assert_eq!(out, "{m:1,n:1,p:[0],q:[0],e:[],sigma:[]}\n");
    }

    #[test]
    fn golden_eval() {
        let (code, out, err) = run_cli(&["eval", "delta . mu"]);
        assert_eq!((code, err.as_str()), (0, ""));
        assert_eq!(out, "[x1 x2, x1 x2 | 2 -> 2]\n");
    }

    #[test]
    fn golden_equal() {
        let (code, out, err) = run_cli(&["equal", "mu . P(1,1)", "mu"]);
        assert_eq!((code, err.as_str()), (0, ""));
        assert_eq!(out, "true\n");
    }

    #[test]
    fn equal_reports_false_without_failing() {
        let (code, out, _) = run_cli(&["equal", "mu", "mu . (S x S)"]);
        assert_eq!(code, 0);
        assert_eq!(out, "false\n");
    }

    #[test]
    fn parse_echoes_canonical_spelling() {
        let (code, out, _) = run_cli(&["parse", "mu.(id(1)x S).delta"]);
        assert_eq!(code, 0);
        // minimal parentheses: `x` binds tighter, so none are needed here
        assert_eq!(out, "mu . id(1) x S . delta\n");
        let (_, reparsed, _) = run_cli(&["parse", out.trim()]);
        assert_eq!(reparsed, out);
    }

    #[test]
    fn type_prints_boundary() {
        let (code, out, _) = run_cli(&["type", "mu . (id(1) x S) . delta"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 -> 1\n");
    }

    #[test]
    fn normalize_engines_agree() {
        let (_, rewrite, _) = run_cli(&["normalize", "conv(S, id(1))"]);
        let (_, eval, _) = run_cli(&["normalize", "--engine", "eval", "conv(S, id(1))"]);
        assert_eq!(rewrite, eval);
    }

    #[test]
    fn encode_and_decode_round_trip() {
        let (code, out, _) = run_cli(&["encode", "[x2 x1^-1 | 1 -> 2]"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{m:1,n:2,p:[2],q:[1,1],e:[0,1],sigma:[2,1]}\n");
        let record = out.trim();
        let (code, term, _) = run_cli(&["decode", record]);
        assert_eq!(code, 0);
        let (code, evaled, _) = run_cli(&["eval", term.trim()]);
        assert_eq!(code, 0);
        assert_eq!(evaled, "[x2 x1^-1 | 1 -> 2]\n");
    }

    #[test]
    fn peel_prints_generator_then_remainder() {
        let (code, out, err) = run_cli(&["peel", "[x1 x2^-1 | 1 -> 2]"]);
        assert_eq!((code, err.as_str()), (0, ""));
        assert_eq!(out, "y(1,1,0,1,2)\n{m:1,n:2,p:[1],q:[0,1],e:[1],sigma:[1]}\n");
    }

    #[test]
    fn peel_refuses_the_unit() {
        let (code, _, err) = run_cli(&["peel", "[1 | 1 -> 1]"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("ERROR cannot-peel:"), "{err}");
    }

    #[test]
    fn conv_and_vee_build_terms() {
        let (code, out, _) = run_cli(&["conv", "S", "S"]);
        assert_eq!(code, 0);
        let built = out.trim().to_string();
        let (code, ty, _) = run_cli(&["type", &built]);
        assert_eq!(code, 0);
        assert_eq!(ty, "1 -> 1\n");
        let (code, out, _) = run_cli(&["vee", "mu", "S"]);
        assert_eq!(code, 0);
        let (_, ty, _) = run_cli(&["type", out.trim()]);
        assert_eq!(ty, "3 -> 1\n");
        // wedge needs equal codomains
        let (code, _, err) = run_cli(&["vee", "mu", "eps"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("ERROR type:"), "{err}");
    }

    #[test]
    fn domain_errors_exit_one_with_kind() {
        let cases = [
            (&["eval", "mu . mu"][..], "ERROR type:"),
            (&["conv", "mu", "eta"][..], "ERROR type:"),
            (&["parse", "y(9,1,0,2,2)"][..], "ERROR index:"),
            (&["encode", "[x5 | 1 -> 2]"][..], "ERROR index:"),
            (&["encode", "[x1 | 2 -> 1]"][..], "ERROR rank:"),
            (
                &["decode", "{m:1,n:1,p:[1],q:[0],e:[],sigma:[]}"][..],
                "ERROR non-canonical:",
            ),
            (&["suite", "nope"][..], "ERROR unknown-suite:"),
        ];
        for (args, prefix) in cases {
            let (code, out, err) = run_cli(args);
            assert_eq!(code, 1, "{args:?}: {err}");
            assert!(err.starts_with(prefix), "{args:?}: {err}");
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
            assert_eq!(out, "", "{args:?}");
        }
    }

    #[test]
    fn syntax_and_usage_errors_exit_two() {
        let cases = [
            (&[][..], "ERROR usage:"),
            (&["frobnicate"][..], "ERROR usage:"),
            (&["eval"][..], "ERROR usage:"),
            (&["equal", "mu"][..], "ERROR usage:"),
            (&["normalize", "--engine=fast", "mu"][..], "ERROR usage:"),
            (&["suite", "words", "--count", "zero"][..], "ERROR usage:"),
            (&["parse", "mu ."][..], "ERROR syntax:"),
            (&["parse", "qux"][..], "ERROR syntax:"),
            (&["encode", "[x1 | 1 -> "][..], "ERROR syntax:"),
            (&["decode", "{m:1}"][..], "ERROR syntax:"),
        ];
        for (args, prefix) in cases {
            let (code, _, err) = run_cli(args);
            assert_eq!(code, 2, "{args:?}: {err}");
            assert!(err.starts_with(prefix), "{args:?}: {err}");
        }
    }

    #[test]
    fn suite_lists_every_name() {
        let (code, out, _) = run_cli(&["suite", "list"]);
        assert_eq!(code, 0);
        for (name, _) in SUITES {
            assert!(
                out.lines().any(|l| l.starts_with(&format!("{name}:"))),
                "{name} missing from listing"
            );
        }
        assert_eq!(out.lines().count(), SUITES.len());
    }

    #[test]
    fn suite_runs_are_deterministic() {
        let args = ["suite", "words", "--seed", "5", "--count", "10"];
        let first = run_cli(&args);
        let second = run_cli(&args);
        assert_eq!(first, second);
        assert_eq!(first.0, 0);
        assert!(first.1.starts_with("SUITE words CASES 40 FAILURES 0"), "{}", first.1);
    }

    #[test]
    fn suite_accepts_equals_style_flags() {
        let (code, out, _) = run_cli(&["suite", "category", "--seed=9", "--count=5", "--max-nodes=12"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("SUITE category CASES 20 FAILURES 0"), "{out}");
    }

    #[test]
    fn render_draws_the_term() {
        let (code, out, _) = run_cli(&["render", "id(2)"]);
        assert_eq!(code, 0);
        assert_eq!(out, " | |\n | |\n");
    }
}
