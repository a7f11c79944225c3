mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use common::*;
use pnu::syntax::{parse_perm, parse_problem, parse_set, parse_term, print_decl, print_subst};
use pnu::Unknown;

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn pnu(args: &[&str]) -> Output {
    let dir = problems();
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.contains('.') && !a.starts_with('-') { dir.join(a).display().to_string() } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_pnu")).args(&args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["unify", "ex1.pnu"], 0),
        (&["unify", "ex2.pnu"], 0),
        (&["unify", "ex3.pnu"], 1),
        (&["--trace", "unify", "ex2.pnu"], 0),
        (&["support", "support.pnu"], 0),
        (&["alpha", "ex1.pnu"], 1),
        (&["from-nominal", "nominal.nom"], 0),
        (&["to-pattern", "pattern.pnu"], 0),
        (&["to-pattern", "pattern.pnu", "--subst", "pattern_subst.pnu"], 0),
        (&["check", "pattern.pnu", "pattern_subst.pnu"], 0),
        (&["check", "ex1.pnu", "pattern_subst.pnu"], 2),
        (&["unify", "missing.pnu"], 2),
    ];
    for (args, code) in cases {
        let o = pnu(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
        if *code == 2 {
            assert!(o.stdout.is_empty() && !o.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn unify_output_is_accepted_by_check() {
    for f in ["ex1.pnu", "ex2.pnu"] {
        let o = pnu(&["unify", f]);
        let tmp = std::env::temp_dir().join(format!("pnu-cli-{}-{f}", std::process::id()));
        std::fs::write(&tmp, &o.stdout).unwrap();
        let c = pnu(&["check", f, tmp.to_str().unwrap()]);
        std::fs::remove_file(&tmp).ok();
        assert_eq!(stdout(&c), "SOLVES\n", "{f}");
    }
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["--trace", "unify", "ex2.pnu"],
        &["--trace", "support", "support.pnu"],
        &["from-nominal", "nominal.nom"],
        &["to-pattern", "pattern.pnu", "--subst", "pattern_subst.pnu"],
    ];
    for args in runs {
        let first = pnu(args).stdout;
        for _ in 0..3 {
            assert_eq!(pnu(args).stdout, first, "{args:?}");
        }
    }
}

fn decls(sig: &Sig) -> BTreeMap<String, Unknown> {
    sig.unknowns.iter().map(|x| (x.name.clone(), x.clone())).collect()
}

#[test]
fn printed_terms_parse_back() {
    for seed in 0..500 {
        let r = &mut rng(seed);
        let sig = Sig::standard(r);
        let t = random_term(r, &sig, 4);
        let back = parse_term(&t.to_string(), &decls(&sig)).unwrap_or_else(|e| panic!("{t}: {e}"));
        assert_eq!(back, t, "{t}");
        let p = random_perm(r, &pool());
        assert_eq!(parse_perm(&p.to_string()).unwrap(), p);
        let s = random_set(r);
        assert_eq!(parse_set(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn printed_substitutions_parse_back() {
    for seed in 0..500 {
        let r = &mut rng(seed);
        let sig = Sig::standard(r);
        let th = random_subst(r, &sig.unknowns, &sig, 3);
        let mut text = String::new();
        for x in &sig.unknowns {
            text.push_str(&print_decl(x));
            text.push('\n');
        }
        for l in print_subst(&th) {
            text.push_str(&l);
            text.push('\n');
        }
        let file = parse_problem(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(file.substitution().unwrap(), th, "{text}");
    }
}
