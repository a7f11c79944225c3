//! Support inclusion problems `r ⊑ T` and their simplification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::AtomSet;
use crate::error::Error;
use crate::subst::Substitution;
use crate::term::{Term, Unknown};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inclusion {
    pub term: Term,
    pub target: AtomSet,
}

impl Inclusion {
    pub fn new(term: Term, target: AtomSet) -> Self {
        Inclusion { term, target }
    }
}

pub type IncProblem = Vec<Inclusion>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IncRule {
    Atom,
    Former,
    Abs,
    Susp,
    SuspDone,
}

impl fmt::Display for IncRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IncRule::Atom => "⊑a",
            IncRule::Former => "⊑f",
            IncRule::Abs => "⊑[]",
            IncRule::Susp => "⊑X",
            IncRule::SuspDone => "⊑X'",
        })
    }
}

/// (formers, abstractions, non-identity permutations, inclusions).
pub fn inc_size(inc: &[Inclusion]) -> (usize, usize, usize, usize) {
    let mut m = (0, 0, 0, inc.len());
    for i in inc {
        m.0 += i.term.formers();
        m.1 += i.term.abstractions();
        m.2 += i.term.nontrivial_perms();
    }
    m
}

fn rewrite_one(i: &Inclusion) -> Option<(IncRule, Vec<Inclusion>)> {
    match &i.term {
        Term::Atom(a) => i.target.contains(*a).then(|| (IncRule::Atom, vec![])),
        Term::App(_, args) => Some((
            IncRule::Former,
            args.iter().map(|r| Inclusion::new(r.clone(), i.target.clone())).collect(),
        )),
        Term::Abs(a, body) => Some((IncRule::Abs, vec![Inclusion::new((**body).clone(), i.target.with(*a))])),
        Term::Susp(pi, x) => {
            let pulled = i.target.image(&pi.inverse());
            if x.sort.is_subset(&pulled) {
                Some((IncRule::SuspDone, vec![]))
            } else if !pi.is_id() {
                Some((IncRule::Susp, vec![Inclusion::new(Term::var(x), pulled)]))
            } else {
                None
            }
        }
    }
}

/// Rewrites the earliest inclusion that some rule applies to.
pub fn inc_step(inc: &[Inclusion]) -> Option<(IncRule, IncProblem)> {
    for (k, i) in inc.iter().enumerate() {
        if let Some((rule, replacement)) = rewrite_one(i) {
            let mut out = Vec::with_capacity(inc.len() + replacement.len());
            out.extend_from_slice(&inc[..k]);
            out.extend(replacement);
            out.extend_from_slice(&inc[k + 1..]);
            assert!(inc_size(&out) < inc_size(inc), "support inclusion measure must decrease");
            return Some((rule, out));
        }
    }
    None
}

/// Normal form together with the rules applied on the way.
pub fn inc_nf_traced(inc: &[Inclusion]) -> (IncProblem, Vec<IncRule>) {
    let mut cur = inc.to_vec();
    let mut trace = Vec::new();
    while let Some((rule, next)) = inc_step(&cur) {
        trace.push(rule);
        cur = next;
    }
    (cur, trace)
}

pub fn inc_nf(inc: &[Inclusion]) -> IncProblem {
    inc_nf_traced(inc).0
}

fn nf_consistent(nf: &[Inclusion]) -> bool {
    nf.iter().all(|i| !matches!(i.term, Term::Atom(_)))
}

pub fn inc_consistent(inc: &[Inclusion]) -> bool {
    nf_consistent(&inc_nf(inc))
}

pub fn inc_fv(inc: &[Inclusion]) -> BTreeSet<Unknown> {
    let mut out = BTreeSet::new();
    for i in inc {
        i.term.collect_fv(&mut out);
    }
    out
}

pub fn solves_inc(theta: &Substitution, inc: &[Inclusion]) -> bool {
    inc.iter().all(|i| theta.apply(&i.term).fa().is_subset(&i.target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoResult {
    pub rho: Substitution,
    /// Each `X^S ∈ V` paired with its replacement `X'^{S'}`.
    pub fresh_map: BTreeMap<Unknown, Unknown>,
    pub extended_v: BTreeSet<Unknown>,
}

/// The first `base.k` (k = 1, 2, …) not in `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    (1..)
        .map(|k| format!("{base}.{k}"))
        .find(|n| !used.contains(n))
        .expect("unbounded search")
}

/// The most general solution of a consistent problem, renaming each unknown
/// of `v` to a fresh one whose sort meets all of its residual constraints.
pub fn inc_rho(v: &BTreeSet<Unknown>, inc: &[Inclusion]) -> Result<RhoResult, Error> {
    let nf = inc_nf(inc);
    if !nf_consistent(&nf) {
        return Err(Error::InconsistentProblem);
    }
    let mut used: BTreeSet<String> = v.iter().map(|x| x.name.clone()).collect();
    used.extend(inc_fv(inc).into_iter().map(|x| x.name));
    let mut rho = Substitution::id();
    let mut fresh_map = BTreeMap::new();
    let mut extended_v = v.clone();
    for x in v {
        let mut sort = x.sort.clone();
        for i in &nf {
            if let Term::Susp(_, y) = &i.term {
                if y == x {
                    sort = sort.intersect(&i.target);
                }
            }
        }
        let name = fresh_name(&x.name, &used);
        used.insert(name.clone());
        let fresh = Unknown::new(name, sort)?;
        rho.insert(x.clone(), Term::var(&fresh))?;
        extended_v.insert(fresh.clone());
        fresh_map.insert(x.clone(), fresh);
    }
    Ok(RhoResult { rho, fresh_map, extended_v })
}

/// `θ−ρ`: moves each binding of `θ` on `V` over to the matching fresh unknown.
pub fn theta_minus_rho(theta: &Substitution, res: &RhoResult, v: &BTreeSet<Unknown>) -> Result<Substitution, Error> {
    let mut out = Substitution::id();
    for (x, fresh) in &res.fresh_map {
        out.insert(fresh.clone(), theta.get(x))
            .map_err(|_| Error::NotASolution(x.name.clone()))?;
    }
    for (x, t) in theta.iter() {
        if !v.contains(x) {
            out.insert(x.clone(), t.clone())?;
        }
    }
    Ok(out)
}
