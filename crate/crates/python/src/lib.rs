//! Python bindings: terms, problems, substitutions and the command-line
//! operations, all driven by the same text syntax as the `pnu` tool.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::pnu::commands::{self, Output};
use ::pnu::support::{inc_consistent, inc_fv, inc_nf, inc_rho};
use ::pnu::syntax::{parse_perm, parse_problem, parse_problem_with, parse_term, parse_vector, print_decl, print_subst};
use ::pnu::translate::{choose_d, translate_problem, translate_term};
use ::pnu::unify::{unify as run_unify, Outcome};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn decls_of(text: &str) -> PyResult<BTreeMap<String, ::pnu::Unknown>> {
    Ok(parse_problem(text).map_err(value_err)?.decls)
}

/// A permissive nominal term.
#[pyclass(frozen, eq, str, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Term(::pnu::Term);

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Term {
    /// Parses `text`; unknowns must be declared in `decls` (e.g. "X : comb").
    #[staticmethod]
    #[pyo3(signature = (text, decls = ""))]
    fn parse(text: &str, decls: &str) -> PyResult<Term> {
        parse_term(text, &decls_of(decls)?).map(Term).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Term('{}')", self.0)
    }

    fn free_atoms(&self) -> String {
        self.0.fa().to_string()
    }

    fn unknowns(&self) -> Vec<String> {
        self.0.fv().into_iter().map(|x| print_decl(&x)).collect()
    }

    fn alpha_eq(&self, other: &Term) -> bool {
        ::pnu::alpha_eq(&self.0, &other.0)
    }

    /// Applies a permutation written as swappings, e.g. "(a0 b1)(a2 a3)".
    fn permute(&self, perm: &str) -> PyResult<Term> {
        Ok(Term(self.0.permute(&parse_perm(perm).map_err(value_err)?)))
    }

    /// The λ-pattern translation for the abstracted atoms `d`, e.g. "a0, b1".
    fn to_pattern(&self, d: &str) -> PyResult<String> {
        Ok(translate_term(&self.0, &parse_vector(d).map_err(value_err)?).to_string())
    }
}

/// A substitution; bindings always respect permission sets.
#[pyclass(frozen, eq, str, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Substitution(::pnu::Substitution);

impl std::fmt::Display for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_subst(&self.0).join("\n"))
    }
}

#[pymethods]
impl Substitution {
    /// Parses `X := t` lines, with declarations in the same text or in `decls`.
    #[staticmethod]
    #[pyo3(signature = (text, decls = ""))]
    fn parse(text: &str, decls: &str) -> PyResult<Substitution> {
        let file = parse_problem_with(text, &decls_of(decls)?).map_err(value_err)?;
        file.substitution().map(Substitution).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Substitution({:?})", print_subst(&self.0))
    }

    fn bindings(&self) -> Vec<(String, Term)> {
        self.0.iter().map(|(x, t)| (x.name.clone(), Term(t.clone()))).collect()
    }

    fn apply(&self, t: &Term) -> Term {
        Term(self.0.apply(&t.0))
    }

    /// `self` then `other`.
    fn compose(&self, other: &Substitution) -> Substitution {
        Substitution(self.0.compose(&other.0))
    }

    fn solves(&self, problem: &Problem) -> bool {
        self.0.solves(&problem.0.equalities) && ::pnu::support::solves_inc(&self.0, &problem.0.inclusions)
    }
}

/// Outcome of unification.
#[pyclass(frozen, get_all)]
struct UnifyResult {
    success: bool,
    substitution: Option<Substitution>,
    failure: Option<String>,
    trace: Vec<String>,
}

#[pymethods]
impl UnifyResult {
    fn __repr__(&self) -> String {
        match (&self.substitution, &self.failure) {
            (Some(s), _) => format!("UnifyResult(success, {})", s.__repr__()),
            (_, Some(f)) => format!("UnifyResult(failure: {f})"),
            _ => "UnifyResult()".into(),
        }
    }
}

/// The contents of a problem file.
#[pyclass(frozen)]
struct Problem(::pnu::syntax::ProblemFile);

#[pymethods]
impl Problem {
    #[new]
    fn new(text: &str) -> PyResult<Problem> {
        parse_problem(text).map(Problem).map_err(value_err)
    }

    fn equalities(&self) -> Vec<(Term, Term)> {
        self.0.equalities.iter().map(|e| (Term(e.lhs.clone()), Term(e.rhs.clone()))).collect()
    }

    fn declarations(&self) -> Vec<String> {
        self.0.decls.values().map(print_decl).collect()
    }

    fn unify(&self) -> UnifyResult {
        let run = run_unify(&self.0.equalities);
        let trace = run.trace.iter().map(|s| s.rule.to_string()).collect();
        match run.outcome {
            Outcome::Success(th) => {
                UnifyResult { success: true, substitution: Some(Substitution(th)), failure: None, trace }
            }
            Outcome::Failure(f) => UnifyResult {
                success: false,
                substitution: None,
                failure: Some(f.reason.to_string()),
                trace,
            },
        }
    }

    /// Normal form of the support inclusions, and the renaming they induce
    /// when consistent.
    fn support(&self) -> (Vec<String>, Option<Substitution>) {
        let inc = &self.0.inclusions;
        let nf = inc_nf(inc).iter().map(|i| i.to_string()).collect();
        let rho = inc_consistent(inc)
            .then(|| inc_rho(&inc_fv(inc), inc).ok())
            .flatten()
            .map(|r| Substitution(r.rho));
        (nf, rho)
    }

    /// Pairs of λ-terms; `d` defaults to the capturable atoms of the problem.
    #[pyo3(signature = (d = None))]
    fn to_pattern(&self, d: Option<&str>) -> PyResult<Vec<(String, String)>> {
        let d = match d {
            Some(s) => parse_vector(s).map_err(value_err)?,
            None => choose_d(&self.0.equalities),
        };
        Ok(translate_problem(&self.0.equalities, &d)
            .into_iter()
            .map(|(g, h)| (g.to_string(), h.to_string()))
            .collect())
    }
}

#[pyfunction]
fn alpha_eq(r: &Term, s: &Term) -> bool {
    ::pnu::alpha_eq(&r.0, &s.0)
}

/// Runs a `pnu` subcommand on file contents and returns (output, exit code).
#[pyfunction]
#[pyo3(signature = (command, text, trace = false, extra = None))]
fn run(command: &str, text: &str, trace: bool, extra: Option<&str>) -> PyResult<(String, i32)> {
    let Output { text, code } = match command {
        "unify" => commands::cmd_unify(text, trace),
        "alpha" => commands::cmd_alpha(text),
        "support" => commands::cmd_support(text, trace),
        "from-nominal" => commands::cmd_from_nominal(text),
        "to-pattern" => commands::cmd_to_pattern(text, None, None, extra),
        "check" => {
            let subst = extra.ok_or_else(|| value_err("check needs the substitution text as `extra`"))?;
            commands::cmd_check(text, subst)
        }
        other => return Err(value_err(format!("unknown command {other}"))),
    };
    Ok((text, code))
}

#[pymodule]
fn pnu(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Term>()?;
    m.add_class::<Substitution>()?;
    m.add_class::<Problem>()?;
    m.add_class::<UnifyResult>()?;
    m.add_function(wrap_pyfunction!(alpha_eq, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
