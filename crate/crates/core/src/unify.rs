//! Unification of permissive nominal terms.

use std::collections::BTreeSet;
use std::fmt;

use crate::subst::Substitution;
use crate::support::{inc_nf, inc_rho, Inclusion, IncProblem};
use crate::term::{problem_fv, Equality, Problem, Term, Unknown};

/// Generous bound on algorithm steps; only a defect could reach it.
const STEP_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Atom,
    Former,
    AbsSame,
    AbsDiff,
    Susp,
    I1,
    I2,
    I3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Atom => "?=a",
            Rule::Former => "?=f",
            Rule::AbsSame => "?=[a]",
            Rule::AbsDiff => "?=[b]",
            Rule::Susp => "?=X",
            Rule::I1 => "I1",
            Rule::I2 => "I2",
            Rule::I3 => "I3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    /// The instantiation emitted by I1, I2 and I3.
    pub label: Option<Substitution>,
    pub problem: Problem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgState {
    pub v: BTreeSet<Unknown>,
    pub problem: Problem,
    pub accumulated: Substitution,
    pub trace: Vec<Step>,
}

impl AlgState {
    pub fn initial(pr: &[Equality]) -> AlgState {
        AlgState {
            v: problem_fv(pr),
            problem: pr.to_vec(),
            accumulated: Substitution::id(),
            trace: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    FormerClash,
    ArityClash,
    AtomClash,
    AbstractionAtomClash,
    FormerAtomClash,
    FormerAbstractionClash,
    OccursCheck,
    Inconsistent,
    /// `π·X ?= π'·X` with `π ≠ π'`: no rule applies although a solution may exist.
    Stall,
}

impl FailureReason {
    pub fn is_clash(self) -> bool {
        !matches!(self, FailureReason::OccursCheck | FailureReason::Inconsistent | FailureReason::Stall)
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::FormerClash => "former clash",
            FailureReason::ArityClash => "arity clash",
            FailureReason::AtomClash => "atom clash",
            FailureReason::AbstractionAtomClash => "abstraction/atom clash",
            FailureReason::FormerAtomClash => "former/atom clash",
            FailureReason::FormerAbstractionClash => "former/abstraction clash",
            FailureReason::OccursCheck => "occurs check",
            FailureReason::Inconsistent => "inconsistent support",
            FailureReason::Stall => "stuck suspension",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Equality(Equality),
    Inclusion(Inclusion),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub reason: FailureReason,
    pub witness: Witness,
    pub problem: Problem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success(Substitution),
    Failure(Failure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub outcome: Outcome,
    pub trace: Vec<Step>,
    /// The unknowns of the input problem.
    pub initial_v: BTreeSet<Unknown>,
    pub final_v: BTreeSet<Unknown>,
}

impl Run {
    pub fn success(&self) -> Option<&Substitution> {
        match &self.outcome {
            Outcome::Success(s) => Some(s),
            Outcome::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match &self.outcome {
            Outcome::Success(_) => None,
            Outcome::Failure(f) => Some(f),
        }
    }
}

/// `{r ⊑ fa(s), s ⊑ fa(r) | r ?= s ∈ Pr}`.
pub fn pr_subseteq(pr: &[Equality]) -> IncProblem {
    pr.iter()
        .flat_map(|e| {
            [
                Inclusion::new(e.lhs.clone(), e.rhs.fa()),
                Inclusion::new(e.rhs.clone(), e.lhs.fa()),
            ]
        })
        .collect()
}

/// (unknowns, formers, abstractions, equalities); strictly decreases on
/// every step other than I3.
pub fn problem_size(pr: &[Equality]) -> (usize, usize, usize, usize) {
    let mut m = (problem_fv(pr).len(), 0, 0, pr.len());
    for e in pr {
        m.1 += e.lhs.formers() + e.rhs.formers();
        m.2 += e.lhs.abstractions() + e.rhs.abstractions();
    }
    m
}

enum Rewrite {
    Replace(Rule, Vec<Equality>),
    Instantiate(Rule, Unknown, Term),
}

fn instantiate(susp: &Term, other: &Term) -> Option<(Unknown, Term)> {
    let Term::Susp(pi, x) = susp else { return None };
    if other.contains_unknown(x) || !other.fa().is_subset(&x.sort.image(pi)) {
        return None;
    }
    Some((x.clone(), other.permute(&pi.inverse())))
}

fn rewrite_equality(e: &Equality) -> Option<Rewrite> {
    match (&e.lhs, &e.rhs) {
        (Term::Atom(a), Term::Atom(b)) if a == b => return Some(Rewrite::Replace(Rule::Atom, vec![])),
        (Term::App(f, rs), Term::App(g, ss)) if f == g && rs.len() == ss.len() => {
            let parts = rs.iter().zip(ss).map(|(r, s)| Equality::new(r.clone(), s.clone())).collect();
            return Some(Rewrite::Replace(Rule::Former, parts));
        }
        (Term::Abs(a, r), Term::Abs(b, s)) if a == b => {
            return Some(Rewrite::Replace(Rule::AbsSame, vec![Equality::new((**r).clone(), (**s).clone())]));
        }
        (Term::Abs(a, r), Term::Abs(b, s)) if !r.has_free(*b) => {
            return Some(Rewrite::Replace(Rule::AbsDiff, vec![Equality::new(r.swap(*b, *a), (**s).clone())]));
        }
        // mirror image: rename the right binder instead
        (Term::Abs(a, r), Term::Abs(b, s)) if !s.has_free(*a) => {
            return Some(Rewrite::Replace(Rule::AbsDiff, vec![Equality::new((**r).clone(), s.swap(*a, *b))]));
        }
        (Term::Susp(p, x), Term::Susp(q, y)) if p == q && x == y => {
            return Some(Rewrite::Replace(Rule::Susp, vec![]));
        }
        _ => {}
    }
    if let Some((x, t)) = instantiate(&e.lhs, &e.rhs) {
        return Some(Rewrite::Instantiate(Rule::I1, x, t));
    }
    if let Some((x, t)) = instantiate(&e.rhs, &e.lhs) {
        return Some(Rewrite::Instantiate(Rule::I2, x, t));
    }
    None
}

/// One step of the algorithm.  Equalities are scanned in order and the first
/// one admitting any of the per-equality rules is rewritten; I3 is tried only
/// when no equality can be rewritten.
pub fn unify_step(st: &AlgState) -> Option<AlgState> {
    for (k, e) in st.problem.iter().enumerate() {
        let Some(rw) = rewrite_equality(e) else { continue };
        let mut next = st.clone();
        let (rule, label) = match rw {
            Rewrite::Replace(rule, parts) => {
                next.problem.splice(k..k + 1, parts);
                (rule, None)
            }
            Rewrite::Instantiate(rule, x, t) => {
                let chi = Substitution::single(&x, t).expect("instantiation respects the permission set");
                next.problem.remove(k);
                next.problem = chi.apply_problem(&next.problem);
                next.accumulated = next.accumulated.compose(&chi);
                (rule, Some(chi))
            }
        };
        assert!(
            problem_size(&next.problem) < problem_size(&st.problem),
            "unification measure must decrease on {rule}"
        );
        next.trace.push(Step { rule, label, problem: next.problem.clone() });
        return Some(next);
    }
    let nf = inc_nf(&pr_subseteq(&st.problem));
    if nf.is_empty() || nf.iter().any(|i| matches!(i.term, Term::Atom(_))) {
        return None;
    }
    // fails only if some residual target is not a permission set
    let res = inc_rho(&st.v, &pr_subseteq(&st.problem)).ok()?;
    let mut next = st.clone();
    next.problem = res.rho.apply_problem(&st.problem);
    next.accumulated = next.accumulated.compose(&res.rho);
    next.v = res.extended_v;
    next.trace.push(Step { rule: Rule::I3, label: Some(res.rho), problem: next.problem.clone() });
    Some(next)
}

fn clash(e: &Equality) -> Option<FailureReason> {
    use FailureReason::*;
    Some(match (&e.lhs, &e.rhs) {
        (Term::Atom(a), Term::Atom(b)) if a != b => AtomClash,
        (Term::App(f, _), Term::App(g, _)) if f != g => FormerClash,
        (Term::App(_, rs), Term::App(_, ss)) if rs.len() != ss.len() => ArityClash,
        (Term::App(..), Term::Atom(_)) | (Term::Atom(_), Term::App(..)) => FormerAtomClash,
        (Term::App(..), Term::Abs(..)) | (Term::Abs(..), Term::App(..)) => FormerAbstractionClash,
        (Term::Abs(..), Term::Atom(_)) | (Term::Atom(_), Term::Abs(..)) => AbstractionAtomClash,
        _ => return None,
    })
}

fn occurs(e: &Equality) -> Option<FailureReason> {
    let check = |s: &Term, t: &Term| -> Option<FailureReason> {
        let Term::Susp(_, x) = s else { return None };
        match t {
            Term::Susp(_, y) if y == x => Some(FailureReason::Stall),
            _ if t.contains_unknown(x) => Some(FailureReason::OccursCheck),
            _ => None,
        }
    };
    check(&e.lhs, &e.rhs).or_else(|| check(&e.rhs, &e.lhs))
}

/// Explains why no rule applies to a non-empty problem.
pub fn classify_stuck(pr: &[Equality]) -> Failure {
    let fail = |reason, witness| Failure { reason, witness, problem: pr.to_vec() };
    if let Some(e) = pr.iter().find(|e| clash(e).is_some()) {
        return fail(clash(e).unwrap(), Witness::Equality(e.clone()));
    }
    if let Some(e) = pr.iter().find(|e| occurs(e) == Some(FailureReason::OccursCheck)) {
        return fail(FailureReason::OccursCheck, Witness::Equality(e.clone()));
    }
    if let Some(i) = inc_nf(&pr_subseteq(pr)).into_iter().find(|i| matches!(i.term, Term::Atom(_))) {
        return fail(FailureReason::Inconsistent, Witness::Inclusion(i));
    }
    let e = pr
        .iter()
        .find(|e| occurs(e) == Some(FailureReason::Stall))
        .unwrap_or(&pr[0]);
    fail(FailureReason::Stall, Witness::Equality(e.clone()))
}

/// Runs the algorithm from `fV(Pr); Pr` until the problem is empty or stuck.
pub fn unify(pr: &[Equality]) -> Run {
    let mut st = AlgState::initial(pr);
    let initial_v = st.v.clone();
    for _ in 0..STEP_LIMIT {
        if st.problem.is_empty() {
            return Run {
                outcome: Outcome::Success(st.accumulated.restrict(&initial_v)),
                trace: st.trace,
                initial_v,
                final_v: st.v,
            };
        }
        match unify_step(&st) {
            Some(next) => st = next,
            None => {
                return Run {
                    outcome: Outcome::Failure(classify_stuck(&st.problem)),
                    trace: st.trace,
                    initial_v,
                    final_v: st.v,
                }
            }
        }
    }
    panic!("unification did not terminate within {STEP_LIMIT} steps");
}
