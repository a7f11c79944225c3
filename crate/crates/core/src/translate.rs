//! Translation of permissive terms, problems and substitutions into
//! λ-pattern syntax, and back.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{Atom, AtomSet, Permutation, Vector};
use crate::error::Error;
use crate::lambda::{abeq, is_pattern, l_subst, ArityMap, LSubst, LTerm};
use crate::subst::Substitution;
use crate::support::fresh_name;
use crate::term::{problem_atoms, problem_fv, Equality, Term, Unknown};

/// Atoms of `r` that an instantiation could capture, with `extra` treated as
/// already bound.
pub fn capt_with(r: &Term, extra: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    match r {
        Term::Atom(_) => BTreeSet::new(),
        Term::App(_, args) => args.iter().flat_map(|t| capt_with(t, extra)).collect(),
        Term::Abs(a, body) => {
            let mut inner = extra.clone();
            inner.insert(*a);
            capt_with(body, &inner)
        }
        Term::Susp(pi, x) => pi
            .nontriv()
            .chain(extra.iter().copied())
            .filter(|&a| x.sort.contains(a))
            .collect(),
    }
}

pub fn capt(r: &Term) -> BTreeSet<Atom> {
    capt_with(r, &BTreeSet::new())
}

pub fn capt_problem(pr: &[Equality]) -> BTreeSet<Atom> {
    pr.iter().flat_map(|e| capt(&e.lhs).into_iter().chain(capt(&e.rhs))).collect()
}

pub fn uncapt(r: &Term) -> AtomSet {
    match r {
        Term::Atom(_) => AtomSet::empty(),
        Term::App(_, args) => args.iter().fold(AtomSet::empty(), |acc, t| acc.union(&uncapt(t))),
        Term::Abs(a, body) => uncapt(body).without(*a),
        Term::Susp(pi, x) => x.sort.minus(&pi.nontriv_set()),
    }
}

pub fn translate_term(r: &Term, d: &Vector) -> LTerm {
    match r {
        Term::Atom(a) => LTerm::Atom(*a),
        Term::App(f, args) => {
            LTerm::apply_all(LTerm::Former(f.clone()), args.iter().map(|t| translate_term(t, d)))
        }
        Term::Abs(a, body) => LTerm::lam(*a, translate_term(body, d)),
        Term::Susp(pi, x) => LTerm::apply_all(
            LTerm::Unknown(x.clone()),
            d.filter(&x.sort).into_iter().map(|a| LTerm::Atom(pi.apply(a))),
        ),
    }
}

pub type LProblem = Vec<(LTerm, LTerm)>;

pub fn translate_problem(pr: &[Equality], d: &Vector) -> LProblem {
    let wrap = |t: &Term| LTerm::lams(d.atoms().iter().copied(), translate_term(t, d));
    pr.iter().map(|e| (wrap(&e.lhs), wrap(&e.rhs))).collect()
}

/// The capturable atoms of the problem, in ascending order.
pub fn choose_d(pr: &[Equality]) -> Vector {
    Vector::new(capt_problem(pr).into_iter().collect()).expect("set elements are distinct")
}

/// `X ↦ λ(D∩S).⟦θ(X)⟧^E` for every `X` in `domain` or bound by `theta`.
pub fn translate_subst(theta: &Substitution, d: &Vector, e: &Vector, domain: &BTreeSet<Unknown>) -> LSubst {
    let mut keys = theta.domain();
    keys.extend(domain.iter().cloned());
    keys.into_iter()
        .map(|x| {
            let body = translate_term(&theta.get(&x), e);
            let t = LTerm::lams(d.filter(&x.sort), body);
            (x, t)
        })
        .collect()
}

/// `D` followed by the remaining capturable atoms of `θ` on `V`, ascending.
pub fn choose_e(d: &Vector, theta: &Substitution, v: &BTreeSet<Unknown>) -> Vector {
    let mut extra = BTreeSet::new();
    for x in v {
        extra.extend(capt(&theta.get(x)));
    }
    let mut atoms = d.atoms().to_vec();
    atoms.extend(extra.into_iter().filter(|a| !d.contains(*a)));
    Vector::new(atoms).expect("distinct by construction")
}

pub fn l_solves(sigma: &LSubst, pr: &LProblem, fuel: usize) -> Result<bool, Error> {
    for (g, h) in pr {
        if !abeq(&l_subst(g, sigma), &l_subst(h, sigma), fuel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reads a pattern back as a permissive term.  Each occurrence
/// `X b1 … bn` becomes `π·X` where `π` permutes the atoms of `E` and sends
/// the i-th atom of `E ∩ S` to `bi`.
pub fn qinv(q: &LTerm, phi: &ArityMap, e: &Vector) -> Result<Term, Error> {
    if let LTerm::Lam(a, body) = q {
        return Ok(Term::abs(*a, qinv(body, phi, e)?));
    }
    let (head, rest) = q.spine();
    match head {
        LTerm::Atom(a) if rest.is_empty() => Ok(Term::Atom(*a)),
        LTerm::Former(f) => Ok(Term::App(f.clone(), rest.iter().map(|t| qinv(t, phi, e)).collect::<Result<_, _>>()?)),
        LTerm::Unknown(x) => {
            if phi.get(x) != Some(&rest.len()) {
                return Err(Error::NotAPattern(format!("{} has the wrong number of arguments", x.name)));
            }
            let mut targets = Vec::new();
            for t in rest {
                match t {
                    LTerm::Atom(b) => targets.push(*b),
                    _ => return Err(Error::NotAPattern(format!("{} applied to a non-atom", x.name))),
                }
            }
            Ok(Term::Susp(arg_permutation(&x.name, &x.sort, &targets, e)?, x.clone()))
        }
        _ => Err(Error::NotAPattern("unexpected head".into())),
    }
}

fn arg_permutation(name: &str, sort: &AtomSet, targets: &[Atom], e: &Vector) -> Result<Permutation, Error> {
    let sources = e.filter(sort);
    if sources.len() != targets.len() {
        return Err(Error::NotInvertible(format!(
            "{name} takes {} arguments but its permission set meets E in {} atoms",
            targets.len(),
            sources.len()
        )));
    }
    let distinct: BTreeSet<Atom> = targets.iter().copied().collect();
    if distinct.len() != targets.len() {
        return Err(Error::NotInvertible(format!("repeated argument to {name}")));
    }
    if let Some(b) = targets.iter().find(|b| !e.contains(**b)) {
        return Err(Error::NotInvertible(format!("argument {b} of {name} is not in E")));
    }
    let mut map: BTreeMap<Atom, Atom> = sources.iter().copied().zip(targets.iter().copied()).collect();
    let mut free_targets: Vec<Atom> = e.atoms().iter().copied().filter(|a| !distinct.contains(a)).collect();
    free_targets.sort();
    let free_sources: Vec<Atom> = e.atoms().iter().copied().filter(|a| !map.contains_key(a)).collect();
    for (s, t) in free_sources.into_iter().zip(free_targets) {
        map.insert(s, t);
    }
    Permutation::from_map(map).map_err(|_| Error::NotInvertible(name.to_string()))
}

fn leading_lambdas(mut g: &LTerm) -> usize {
    let mut n = 0;
    while let LTerm::Lam(_, body) = g {
        n += 1;
        g = body;
    }
    n
}

fn image(sigma: &LSubst, x: &Unknown) -> LTerm {
    sigma.get(x).cloned().unwrap_or_else(|| LTerm::Unknown(x.clone()))
}

pub fn d_consistent(sigma: &LSubst, d: &Vector, v: &BTreeSet<Unknown>, strict: bool) -> bool {
    v.iter().all(|x| {
        let g = image(sigma, x);
        leading_lambdas(&g) >= d.filter(&x.sort).len() && (!strict || !g.fa().iter().any(|a| d.contains(*a)))
    })
}

/// A permissive solution recovered from a λ-side one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    /// Renames atoms of `D` that occur free in the λ solution; identity when it is strict.
    pub perm: Permutation,
    /// Fresh unknowns standing for the unknowns introduced by the λ solution.
    pub renaming: BTreeMap<Unknown, Unknown>,
    pub theta: Substitution,
    pub e: Vector,
}

/// Builds `θ` with `π·(σ∘ρ)(X) =α ⟦θ⟧_D^E(X)` on `fV(Pr)`.
pub fn lift_solution(sigma: &LSubst, pr: &[Equality], d: &Vector, phi: &ArityMap) -> Result<Lifted, Error> {
    let v = problem_fv(pr);
    if let Some(x) = v.iter().find(|x| !d_consistent(sigma, d, &[(*x).clone()].into_iter().collect(), false)) {
        return Err(Error::NotDConsistent(x.name.clone()));
    }

    // Atoms that the renaming must avoid.
    let mut seen: BTreeSet<Atom> = problem_atoms(pr);
    seen.extend(d.atoms().iter().copied());
    for x in &v {
        image(sigma, x).collect_atoms(&mut seen);
    }

    let mut perm = Permutation::id();
    if !d_consistent(sigma, d, &v, true) {
        let common = v.iter().fold(AtomSet::comb(), |acc, x| acc.intersect(&x.sort));
        let mut avoid = AtomSet::from(&seen);
        for &di in d.atoms() {
            let fresh = common.minus(&avoid).lt.least().map(Atom::lt).expect("cofinite on A<");
            avoid.insert(fresh);
            perm = perm.compose(&Permutation::swap(fresh, di));
        }
    }
    let sigma1: BTreeMap<Unknown, LTerm> = v.iter().map(|x| (x.clone(), image(sigma, x).permute(&perm))).collect();

    for (x, g) in &sigma1 {
        if g.fa().iter().any(|a| !x.sort.contains(*a)) {
            return Err(Error::PermissionViolation { unknown: x.name.clone() });
        }
    }

    let mut e_atoms = d.atoms().to_vec();
    let mut rest = BTreeSet::new();
    for g in sigma1.values() {
        g.collect_atoms(&mut rest);
    }
    e_atoms.extend(rest.into_iter().filter(|a| !d.contains(*a)));
    let e = Vector::new(e_atoms).expect("distinct by construction");
    let e_set = e.to_set();

    // One fresh unknown per unknown introduced by σ, meeting E in exactly
    // φ(Y) atoms and otherwise inside every permission set it is used under.
    let mut users: BTreeMap<Unknown, AtomSet> = BTreeMap::new();
    for (x, g) in &sigma1 {
        for y in g.fv() {
            let s = users.entry(y).or_insert_with(AtomSet::comb);
            *s = s.intersect(&x.sort);
        }
    }
    let mut used: BTreeSet<String> = v.iter().chain(users.keys()).map(|x| x.name.clone()).collect();
    let mut renaming = BTreeMap::new();
    let mut new_phi = ArityMap::new();
    for (y, common) in &users {
        let k = *phi
            .get(y)
            .ok_or_else(|| Error::NotAPattern(format!("no arity for {}", y.name)))?;
        if k > e.len() {
            return Err(Error::NotInvertible(format!("{} needs {k} arguments but E has {}", y.name, e.len())));
        }
        let sort = common.minus(&e_set).union(&AtomSet::from_atoms(e.atoms()[..k].iter().copied()));
        let name = fresh_name(&y.name, &used);
        used.insert(name.clone());
        let fresh = Unknown::new(name, sort)?;
        new_phi.insert(fresh.clone(), k);
        renaming.insert(y.clone(), fresh);
    }
    let rho: LSubst = renaming.iter().map(|(y, z)| (y.clone(), LTerm::Unknown(z.clone()))).collect();

    let mut theta = Substitution::id();
    for (x, g) in &sigma1 {
        let ds = d.filter(&x.sort);
        let mut body = g.clone();
        for &di in &ds {
            let LTerm::Lam(c, inner) = body else { unreachable!("checked D-consistency") };
            body = if c == di { *inner } else { inner.swap(di, c) };
        }
        if !is_pattern(&body, phi) {
            return Err(Error::NotAPattern(x.name.clone()));
        }
        let q = l_subst(&body, &rho);
        theta.insert(x.clone(), qinv(&q, &new_phi, &e)?)?;
    }
    Ok(Lifted { perm, renaming, theta, e })
}

/// For `a ∈ capt(r) \ D`, a term `s` with `r ≠α s` but `⟦r⟧^D =α ⟦s⟧^D`.
pub fn minimality_witness(r: &Term, d: &Vector) -> Option<Term> {
    let a = capt(r).into_iter().find(|a| !d.contains(*a))?;
    let x = r.fv().into_iter().find(|x| x.sort.contains(a))?;
    let mut avoid = d.to_set().with(a);
    for b in r.atoms_of() {
        avoid.insert(b);
    }
    let c = x.sort.minus(&avoid).lt.least().map(Atom::lt)?;
    let th = Substitution::single(&x, Term::susp(Permutation::swap(c, a), &x)).ok()?;
    Some(th.apply(r))
}
