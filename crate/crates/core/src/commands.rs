//! The `pnu` subcommands as pure functions from file contents to printed output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::lambda::DEFAULT_FUEL;
use crate::nominal::{interp_problem, interp_unknown, NGoal};
use crate::support::{inc_consistent, inc_fv, inc_nf_traced, inc_rho, solves_inc};
use crate::syntax::{parse_nominal, parse_problem, parse_problem_with, parse_vector, print_decl, print_label, print_subst, ParseError};
use crate::term::{alpha_eq, problem_fv, Unknown};
use crate::translate::{choose_d, choose_e, l_solves, translate_problem, translate_subst};
use crate::unify::{unify, Outcome, Witness};

/// Printed result and process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String, success: bool) -> Output {
        Output { text, code: if success { 0 } else { 1 } }
    }

    fn usage(msg: impl std::fmt::Display) -> Output {
        Output { text: format!("error: {msg}\n"), code: 2 }
    }
}

fn parse_err(which: &str, e: ParseError) -> Output {
    Output::usage(format!("{which}: {e}"))
}

pub fn cmd_unify(text: &str, trace: bool) -> Output {
    let file = match parse_problem(text) {
        Ok(f) => f,
        Err(e) => return parse_err("problem", e),
    };
    if !file.inclusions.is_empty() || !file.bindings.is_empty() {
        return Output::usage("unify expects only declarations and equalities");
    }
    let run = unify(&file.equalities);
    let mut out = String::new();
    if trace {
        for step in &run.trace {
            match &step.label {
                Some(l) => writeln!(out, "{} {}", step.rule, print_label(l)).unwrap(),
                None => writeln!(out, "{}", step.rule).unwrap(),
            }
        }
    }
    match &run.outcome {
        Outcome::Success(theta) => {
            out.push_str("SUCCESS\n");
            let mut fresh = BTreeSet::new();
            for (_, t) in theta.iter() {
                fresh.extend(t.fv().into_iter().filter(|x| !file.decls.contains_key(&x.name)));
            }
            for x in &fresh {
                writeln!(out, "{}", print_decl(x)).unwrap();
            }
            for l in print_subst(theta) {
                writeln!(out, "{l}").unwrap();
            }
            Output::ok(out, true)
        }
        Outcome::Failure(f) => {
            let w = match &f.witness {
                Witness::Equality(e) => e.to_string(),
                Witness::Inclusion(i) => i.to_string(),
            };
            writeln!(out, "FAIL: {} at {w}", f.reason).unwrap();
            Output::ok(out, false)
        }
    }
}

pub fn cmd_alpha(text: &str) -> Output {
    let file = match parse_problem(text) {
        Ok(f) => f,
        Err(e) => return parse_err("problem", e),
    };
    let mut out = String::new();
    let mut all = true;
    for e in &file.equalities {
        let eq = alpha_eq(&e.lhs, &e.rhs);
        all &= eq;
        writeln!(out, "{}: {e}", if eq { "EQUIVALENT" } else { "NOT EQUIVALENT" }).unwrap();
    }
    Output::ok(out, all)
}

/// Normal form, consistency, and the renaming `ρ` over the unknowns of the problem.
pub fn cmd_support(text: &str, trace: bool) -> Output {
    let file = match parse_problem(text) {
        Ok(f) => f,
        Err(e) => return parse_err("problem", e),
    };
    let (nf, rules) = inc_nf_traced(&file.inclusions);
    let mut out = String::new();
    if trace {
        for r in rules {
            writeln!(out, "{r}").unwrap();
        }
    }
    for i in &nf {
        writeln!(out, "{i}").unwrap();
    }
    if !inc_consistent(&file.inclusions) {
        out.push_str("INCONSISTENT\n");
        return Output::ok(out, false);
    }
    out.push_str("CONSISTENT\n");
    let v = inc_fv(&file.inclusions);
    let res = match inc_rho(&v, &file.inclusions) {
        Ok(res) => res,
        Err(e) => return Output { text: format!("{out}error: {e}\n"), code: 1 },
    };
    let mut fresh: Vec<&Unknown> = res.fresh_map.values().collect();
    fresh.sort_by(|a, b| a.name.cmp(&b.name));
    for x in fresh {
        writeln!(out, "{}", print_decl(x)).unwrap();
    }
    for l in print_subst(&res.rho) {
        writeln!(out, "{l}").unwrap();
    }
    Output::ok(out, true)
}

pub fn cmd_from_nominal(text: &str) -> Output {
    let file = match parse_nominal(text) {
        Ok(f) => f,
        Err(e) => return parse_err("nominal problem", e),
    };
    let (pr, choices) = interp_problem(&file.delta, &file.goals);
    let mut out = String::new();
    for x in &file.unknowns {
        writeln!(out, "{}", print_decl(&interp_unknown(&file.delta, x))).unwrap();
    }
    for e in &pr {
        writeln!(out, "{e}").unwrap();
    }
    let mut atoms = BTreeSet::new();
    for (a, _) in &file.delta {
        atoms.insert(*a);
    }
    for g in &file.goals {
        match g {
            NGoal::Fresh(a, t) => {
                atoms.insert(*a);
                collect_natoms(t, &mut atoms);
            }
            NGoal::Eq(r, s) => {
                collect_natoms(r, &mut atoms);
                collect_natoms(s, &mut atoms);
            }
        }
    }
    for a in atoms {
        writeln!(out, "iota {a} = {}", a.iota()).unwrap();
    }
    for c in choices {
        writeln!(out, "fresh {} for goal {}: {}", c.fresh, c.goal + 1, file.goals[c.goal]).unwrap();
    }
    Output::ok(out, true)
}

fn collect_natoms(t: &crate::nominal::NTerm, out: &mut BTreeSet<crate::nominal::NAtom>) {
    use crate::nominal::NTerm;
    match t {
        NTerm::Atom(a) => {
            out.insert(*a);
        }
        NTerm::Susp(p, _) => out.extend(p.nontriv()),
        NTerm::Abs(a, body) => {
            out.insert(*a);
            collect_natoms(body, out);
        }
        NTerm::App(_, args) => args.iter().for_each(|u| collect_natoms(u, out)),
    }
}

/// `D`, the translated problem, and with a substitution file its translation
/// under `E` (given, or `D` followed by the capturable atoms of the substitution).
pub fn cmd_to_pattern(text: &str, d: Option<&str>, e: Option<&str>, subst: Option<&str>) -> Output {
    let file = match parse_problem(text) {
        Ok(f) => f,
        Err(err) => return parse_err("problem", err),
    };
    let d = match d {
        Some(s) => match parse_vector(s) {
            Ok(v) => v,
            Err(err) => return parse_err("--d", err),
        },
        None => choose_d(&file.equalities),
    };
    let mut out = String::new();
    writeln!(out, "D = {d}").unwrap();
    let lpr = translate_problem(&file.equalities, &d);
    for (g, h) in &lpr {
        writeln!(out, "{g} ?= {h}").unwrap();
    }
    let Some(subst) = subst else {
        return Output::ok(out, true);
    };
    let sfile = match parse_problem_with(subst, &file.decls) {
        Ok(f) => f,
        Err(err) => return parse_err("substitution", err),
    };
    let theta = match sfile.substitution() {
        Ok(t) => t,
        Err(err) => return Output::usage(err),
    };
    let v = problem_fv(&file.equalities);
    let e = match e {
        Some(s) => match parse_vector(s) {
            Ok(v) => v,
            Err(err) => return parse_err("--e", err),
        },
        None => choose_e(&d, &theta, &v),
    };
    writeln!(out, "E = {e}").unwrap();
    let sigma = translate_subst(&theta, &d, &e, &v);
    let mut keys: Vec<_> = sigma.iter().collect();
    keys.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    for (x, t) in keys {
        writeln!(out, "{} := {t}", x.name).unwrap();
    }
    match l_solves(&sigma, &lpr, DEFAULT_FUEL) {
        Ok(true) => out.push_str("SOLVES\n"),
        Ok(false) => out.push_str("DOES NOT SOLVE\n"),
        Err(err) => return Output { text: format!("{out}error: {err}\n"), code: 1 },
    }
    Output::ok(out, true)
}

pub fn cmd_check(problem: &str, subst: &str) -> Output {
    let file = match parse_problem(problem) {
        Ok(f) => f,
        Err(e) => return parse_err("problem", e),
    };
    let sfile = match parse_problem_with(subst, &file.decls) {
        Ok(f) => f,
        Err(e) => return parse_err("substitution", e),
    };
    let theta = match sfile.substitution() {
        Ok(t) => t,
        Err(e) => return Output::usage(e),
    };
    let ok = theta.solves(&file.equalities) && solves_inc(&theta, &file.inclusions);
    Output::ok(format!("{}\n", if ok { "SOLVES" } else { "DOES NOT SOLVE" }), ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = "X : comb\nf([a0] X, [a0] a0) ?= f([b0] a1, [b0] b0)\n";

    #[test]
    fn unify_example_one() {
        let o = cmd_unify(EX1, true);
        assert_eq!(o.code, 0);
        assert_eq!(o.text, "?=f\n?=[b]\nI1 [X := a1]\n?=[b]\n?=a\nSUCCESS\nX := a1\n");
    }

    #[test]
    fn unify_output_checks() {
        let o = cmd_unify(EX1, false);
        assert_eq!(cmd_check(EX1, &o.text), Output { text: "SOLVES\n".into(), code: 0 });
        assert_eq!(cmd_check(EX1, "X := a2\n").code, 1);
        assert_eq!(cmd_check(EX1, "X := b0\n").code, 2);
    }

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(cmd_unify("X : comb\nY ?= a0\n", false).code, 2);
        assert_eq!(cmd_support("Z : {a0}\n", false).code, 2);
    }
}
