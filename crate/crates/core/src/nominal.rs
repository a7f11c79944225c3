//! Classical nominal terms with freshness contexts, and their interpretation
//! as permissive terms.
//!
//! Nominal atom `i` is interpreted as the comb atom `a_i`, so a nominal
//! permutation is stored directly as the permutation it denotes on `A<`.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{fresh_atom, Atom, AtomSet, Permutation};
use crate::error::Error;
use crate::subst::Substitution;
use crate::term::{Equality, Problem, Term, Unknown};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NAtom(pub u32);

impl NAtom {
    /// The comb atom this nominal atom is interpreted as.
    pub fn iota(self) -> Atom {
        Atom::lt(self.0)
    }
}

/// A finite permutation of nominal atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NPerm(Permutation);

impl NPerm {
    pub fn id() -> Self {
        NPerm(Permutation::id())
    }

    pub fn swap(a: NAtom, b: NAtom) -> Self {
        NPerm(Permutation::swap(a.iota(), b.iota()))
    }

    pub fn apply(&self, a: NAtom) -> NAtom {
        NAtom(self.0.apply(a.iota()).index)
    }

    pub fn compose(&self, o: &NPerm) -> NPerm {
        NPerm(self.0.compose(&o.0))
    }

    pub fn inverse(&self) -> NPerm {
        NPerm(self.0.inverse())
    }

    pub fn nontriv(&self) -> impl Iterator<Item = NAtom> + '_ {
        self.0.nontriv().map(|a| NAtom(a.index))
    }

    /// The interpretation: acts on `A<` like `self`, fixes `A>`.
    pub fn interp(&self) -> Permutation {
        self.0.clone()
    }

    pub fn to_swaps(&self) -> Vec<(NAtom, NAtom)> {
        self.0.to_swaps().into_iter().map(|(a, b)| (NAtom(a.index), NAtom(b.index))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NTerm {
    Atom(NAtom),
    Susp(NPerm, String),
    Abs(NAtom, Box<NTerm>),
    App(String, Vec<NTerm>),
}

impl NTerm {
    pub fn abs(a: NAtom, body: NTerm) -> NTerm {
        NTerm::Abs(a, Box::new(body))
    }

    pub fn var(x: &str) -> NTerm {
        NTerm::Susp(NPerm::id(), x.to_string())
    }

    pub fn permute(&self, pi: &NPerm) -> NTerm {
        match self {
            NTerm::Atom(a) => NTerm::Atom(pi.apply(*a)),
            NTerm::Susp(p, x) => NTerm::Susp(pi.compose(p), x.clone()),
            NTerm::Abs(a, body) => NTerm::abs(pi.apply(*a), body.permute(pi)),
            NTerm::App(f, args) => NTerm::App(f.clone(), args.iter().map(|t| t.permute(pi)).collect()),
        }
    }

    pub fn unknowns(&self, out: &mut BTreeSet<String>) {
        match self {
            NTerm::Atom(_) => {}
            NTerm::Susp(_, x) => {
                out.insert(x.clone());
            }
            NTerm::Abs(_, body) => body.unknowns(out),
            NTerm::App(_, args) => args.iter().for_each(|t| t.unknowns(out)),
        }
    }
}

/// Primitive freshness constraints `a # X`.
pub type FreshnessContext = BTreeSet<(NAtom, String)>;

pub type NSubst = BTreeMap<String, NTerm>;

pub fn n_subst_apply(t: &NTerm, th: &NSubst) -> NTerm {
    match t {
        NTerm::Atom(_) => t.clone(),
        NTerm::Susp(p, x) => match th.get(x) {
            Some(u) => u.permute(p),
            None => t.clone(),
        },
        NTerm::Abs(a, body) => NTerm::abs(*a, n_subst_apply(body, th)),
        NTerm::App(f, args) => NTerm::App(f.clone(), args.iter().map(|u| n_subst_apply(u, th)).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NGoal {
    Fresh(NAtom, NTerm),
    Eq(NTerm, NTerm),
}

pub type NProblem = Vec<NGoal>;

pub fn n_freshness_derivable(delta: &FreshnessContext, a: NAtom, r: &NTerm) -> bool {
    match r {
        NTerm::Atom(b) => a != *b,
        NTerm::App(_, args) => args.iter().all(|t| n_freshness_derivable(delta, a, t)),
        NTerm::Abs(b, body) => a == *b || n_freshness_derivable(delta, a, body),
        NTerm::Susp(p, x) => delta.contains(&(p.inverse().apply(a), x.clone())),
    }
}

pub fn n_equality_derivable(delta: &FreshnessContext, r: &NTerm, s: &NTerm) -> bool {
    match (r, s) {
        (NTerm::Atom(a), NTerm::Atom(b)) => a == b,
        (NTerm::App(f, rs), NTerm::App(g, ss)) => {
            f == g && rs.len() == ss.len() && rs.iter().zip(ss).all(|(x, y)| n_equality_derivable(delta, x, y))
        }
        (NTerm::Abs(a, r1), NTerm::Abs(b, s1)) => {
            if a == b {
                n_equality_derivable(delta, r1, s1)
            } else {
                n_equality_derivable(delta, &r1.permute(&NPerm::swap(*b, *a)), s1)
                    && n_freshness_derivable(delta, *b, r1)
            }
        }
        (NTerm::Susp(p, x), NTerm::Susp(q, y)) => {
            x == y
                && p.nontriv()
                    .chain(q.nontriv())
                    .all(|a| p.apply(a) == q.apply(a) || delta.contains(&(a, x.clone())))
        }
        _ => false,
    }
}

pub fn n_solves(delta: &FreshnessContext, th: &NSubst, pr: &[NGoal]) -> bool {
    pr.iter().all(|g| match g {
        NGoal::Fresh(a, r) => n_freshness_derivable(delta, *a, &n_subst_apply(r, th)),
        NGoal::Eq(r, s) => n_equality_derivable(delta, &n_subst_apply(r, th), &n_subst_apply(s, th)),
    })
}

/// The permissive unknown standing for nominal unknown `x` under `delta`.
pub fn interp_unknown(delta: &FreshnessContext, x: &str) -> Unknown {
    let mut sort = AtomSet::comb();
    for (a, y) in delta {
        if y == x {
            sort.remove(a.iota());
        }
    }
    Unknown::new(x, sort).expect("comb minus finitely many atoms")
}

pub fn interp_term(delta: &FreshnessContext, r: &NTerm) -> Term {
    match r {
        NTerm::Atom(a) => Term::Atom(a.iota()),
        NTerm::Susp(p, x) => Term::Susp(p.interp(), interp_unknown(delta, x)),
        NTerm::Abs(a, body) => Term::abs(a.iota(), interp_term(delta, body)),
        NTerm::App(f, args) => Term::App(f.clone(), args.iter().map(|t| interp_term(delta, t)).collect()),
    }
}

/// A fresh atom chosen while translating a freshness goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreshChoice {
    /// Position of the goal in the nominal problem.
    pub goal: usize,
    pub atom: NAtom,
    pub fresh: Atom,
}

pub fn interp_problem(delta: &FreshnessContext, pr: &[NGoal]) -> (Problem, Vec<FreshChoice>) {
    let mut out: Problem = Vec::new();
    let mut used = BTreeSet::new();
    let mut choices = Vec::new();
    for (k, g) in pr.iter().enumerate() {
        let e = match g {
            NGoal::Eq(r, s) => Equality::new(interp_term(delta, r), interp_term(delta, s)),
            NGoal::Fresh(a, r) => {
                let t = interp_term(delta, r);
                let avoid = AtomSet::comb().union(&AtomSet::from_atoms(used.iter().copied()));
                let b = fresh_atom(&avoid).expect("A> is never exhausted");
                choices.push(FreshChoice { goal: k, atom: *a, fresh: b });
                Equality::new(t.swap(b, a.iota()), t)
            }
        };
        e.lhs.collect_atoms(&mut used);
        e.rhs.collect_atoms(&mut used);
        out.push(e);
    }
    (out, choices)
}

/// The permissive substitution corresponding to `(delta, th)`.  Fails when a
/// binding mentions an atom that `delta` declares fresh for its unknown.
pub fn interp_solution(delta: &FreshnessContext, th: &NSubst) -> Result<Substitution, Error> {
    let mut out = Substitution::id();
    for (x, t) in th {
        out.insert(interp_unknown(delta, x), interp_term(delta, t))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::alpha_eq;

    fn n(i: u32) -> NAtom {
        NAtom(i)
    }

    fn ctx(pairs: &[(u32, &str)]) -> FreshnessContext {
        pairs.iter().map(|&(i, x)| (NAtom(i), x.to_string())).collect()
    }

    #[test]
    fn freshness_examples() {
        assert!(n_freshness_derivable(&ctx(&[(0, "X")]), n(0), &NTerm::var("X")));
        assert!(n_freshness_derivable(&ctx(&[]), n(0), &NTerm::abs(n(0), NTerm::Atom(n(0)))));
        assert!(!n_freshness_derivable(&ctx(&[]), n(0), &NTerm::Atom(n(0))));
    }

    #[test]
    fn equality_examples() {
        let e = ctx(&[]);
        assert!(n_equality_derivable(
            &e,
            &NTerm::abs(n(0), NTerm::Atom(n(0))),
            &NTerm::abs(n(1), NTerm::Atom(n(1)))
        ));
        let d = ctx(&[(1, "X")]);
        let l = NTerm::App("lam".into(), vec![NTerm::abs(n(0), NTerm::var("X"))]);
        let r = NTerm::App(
            "lam".into(),
            vec![NTerm::abs(n(1), NTerm::Susp(NPerm::swap(n(1), n(0)), "X".into()))],
        );
        assert!(n_equality_derivable(&d, &l, &r));
        assert!(!n_equality_derivable(&e, &NTerm::var("X"), &NTerm::Susp(NPerm::swap(n(0), n(1)), "X".into())));
    }

    #[test]
    fn interpretation_examples() {
        assert_eq!(interp_term(&ctx(&[]), &NTerm::Atom(n(0))), Term::Atom(Atom::lt(0)));
        let x = interp_unknown(&ctx(&[(1, "X")]), "X");
        assert_eq!(x.sort, AtomSet::comb().without(Atom::lt(1)));
        let t = interp_term(&ctx(&[]), &NTerm::abs(n(0), NTerm::var("X")));
        let xc = Unknown::new("X", AtomSet::comb()).unwrap();
        assert_eq!(t, Term::abs(Atom::lt(0), Term::var(&xc)));
    }

    #[test]
    fn problem_translation() {
        let (pr, ch) = interp_problem(&ctx(&[]), &[NGoal::Fresh(n(0), NTerm::var("X"))]);
        let xc = Unknown::new("X", AtomSet::comb()).unwrap();
        assert_eq!(
            pr,
            vec![Equality::new(Term::susp(Permutation::swap(Atom::gt(0), Atom::lt(0)), &xc), Term::var(&xc))]
        );
        assert_eq!(ch[0].fresh, Atom::gt(0));
        let (pr, ch) = interp_problem(
            &ctx(&[]),
            &[NGoal::Fresh(n(0), NTerm::var("X")), NGoal::Fresh(n(1), NTerm::var("Y"))],
        );
        assert_eq!(ch[1].fresh, Atom::gt(1));
        assert_eq!(pr.len(), 2);
        assert!(interp_problem(&ctx(&[]), &[]).0.is_empty());
    }

    #[test]
    fn solution_translation() {
        let th: NSubst = [("X".to_string(), NTerm::Atom(n(0)))].into_iter().collect();
        let s = interp_solution(&ctx(&[]), &th).unwrap();
        let xc = Unknown::new("X", AtomSet::comb()).unwrap();
        assert_eq!(s.get(&xc), Term::Atom(Atom::lt(0)));
        let th: NSubst = [("X".to_string(), NTerm::Atom(n(1)))].into_iter().collect();
        assert!(interp_solution(&ctx(&[(1, "X")]), &th).is_err());
        assert!(interp_solution(&ctx(&[]), &NSubst::new()).unwrap().is_id());
    }

    #[test]
    fn fresh_goal_translation_is_equivalent() {
        let d = ctx(&[(0, "X")]);
        let (pr, _) = interp_problem(&d, &[NGoal::Fresh(n(0), NTerm::var("X"))]);
        assert!(alpha_eq(&pr[0].lhs, &pr[0].rhs));
    }
}
