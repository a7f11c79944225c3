//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use pnu::lambda::{ArityMap, LTerm};
use pnu::nominal::{FreshnessContext, NAtom, NGoal, NPerm, NSubst, NTerm};
use pnu::term::problem_fv;
use pnu::{Atom, AtomSet, Equality, Permutation, Substitution, Term, Unknown, Vector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type R = ChaCha8Rng;

pub fn rng(seed: u64) -> R {
    ChaCha8Rng::seed_from_u64(seed)
}

/// a0..a3 and b0..b2.
pub fn pool() -> Vec<Atom> {
    (0..4).map(Atom::lt).chain((0..3).map(Atom::gt)).collect()
}

/// Never in any generated permission set.
pub const OUTSIDE: [Atom; 2] = [Atom::gt(7), Atom::gt(8)];

pub fn random_set(r: &mut R) -> AtomSet {
    let mut s = AtomSet::comb();
    for i in 0..4 {
        if r.gen_bool(0.25) {
            s.remove(Atom::lt(i));
        }
    }
    for i in 0..3 {
        if r.gen_bool(0.35) {
            s.insert(Atom::gt(i));
        }
    }
    s
}

pub fn random_unknowns(r: &mut R, names: &[&str]) -> Vec<Unknown> {
    names.iter().map(|n| Unknown::new(*n, random_set(r)).unwrap()).collect()
}

pub fn random_perm(r: &mut R, atoms: &[Atom]) -> Permutation {
    let mut p = Permutation::id();
    for _ in 0..r.gen_range(0..=2) {
        let a = *atoms.choose(r).unwrap();
        let b = *atoms.choose(r).unwrap();
        if a != b {
            p = p.compose(&Permutation::swap(a, b));
        }
    }
    p
}

#[derive(Clone, Debug)]
pub struct Sig {
    pub atoms: Vec<Atom>,
    pub formers: Vec<(String, usize)>,
    pub unknowns: Vec<Unknown>,
}

impl Sig {
    pub fn standard(r: &mut R) -> Sig {
        Sig {
            atoms: pool(),
            formers: vec![("f".into(), 2), ("g".into(), 1), ("c".into(), 0)],
            unknowns: random_unknowns(r, &["X", "Y", "Z"]),
        }
    }
}

pub fn random_term(r: &mut R, sig: &Sig, depth: usize) -> Term {
    if depth == 0 || r.gen_bool(0.3) {
        let k = r.gen_range(0..3);
        if k == 0 && !sig.unknowns.is_empty() {
            let x = sig.unknowns.choose(r).unwrap();
            return Term::susp(random_perm(r, &sig.atoms), x);
        }
        if k == 1 {
            if let Some((f, _)) = sig.formers.iter().find(|(_, n)| *n == 0) {
                if r.gen_bool(0.3) {
                    return Term::app(f.clone(), vec![]);
                }
            }
        }
        return Term::Atom(*sig.atoms.choose(r).unwrap());
    }
    if r.gen_bool(0.4) {
        let a = *sig.atoms.choose(r).unwrap();
        Term::abs(a, random_term(r, sig, depth - 1))
    } else {
        let (f, n) = sig.formers.choose(r).unwrap().clone();
        Term::app(f, (0..n).map(|_| random_term(r, sig, depth - 1)).collect())
    }
}

/// A term with free atoms inside `s`, when one turns up within a few tries.
pub fn random_term_within(r: &mut R, sig: &Sig, depth: usize, s: &AtomSet) -> Option<Term> {
    (0..30).map(|_| random_term(r, sig, depth)).find(|t| t.fa().is_subset(s))
}

pub fn random_subst(r: &mut R, dom: &[Unknown], sig: &Sig, depth: usize) -> Substitution {
    let mut th = Substitution::id();
    for x in dom {
        if r.gen_bool(0.7) {
            if let Some(t) = random_term_within(r, sig, depth, &x.sort) {
                th.insert(x.clone(), t).unwrap();
            }
        }
    }
    th
}

/// An α-equivalent copy of `t`: renames some binders and pads some
/// suspensions with swappings outside their permission sets.
pub fn alpha_variant(r: &mut R, t: &Term) -> Term {
    match t {
        Term::Atom(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|u| alpha_variant(r, u)).collect()),
        Term::Abs(a, body) => {
            let body = alpha_variant(r, body);
            if r.gen_bool(0.5) {
                let fa = body.fa();
                let mut cands: Vec<Atom> = pool().into_iter().filter(|b| !fa.contains(*b)).collect();
                cands.push(Atom::gt(5));
                let b = *cands.choose(r).unwrap();
                Term::abs(b, body.swap(b, *a))
            } else {
                Term::abs(*a, body)
            }
        }
        Term::Susp(pi, x) => {
            if r.gen_bool(0.5) {
                Term::Susp(pi.compose(&Permutation::swap(OUTSIDE[0], OUTSIDE[1])), x.clone())
            } else {
                t.clone()
            }
        }
    }
}

/// `t ?= tθ` with `θ` mapping into fresh unknowns; the right side is sometimes α-renamed.
pub fn solvable_problem(r: &mut R, depth: usize) -> (Vec<Equality>, Substitution) {
    let mut sig = Sig::standard(r);
    let n = r.gen_range(1..=3);
    sig.unknowns.truncate(n);
    let range_sig = Sig { unknowns: random_unknowns(r, &["U", "V"]), ..sig.clone() };
    let mut pr = Vec::new();
    let mut theta = Substitution::id();
    let t = random_term(r, &sig, depth);
    let dom: Vec<Unknown> = t.fv().into_iter().collect();
    for x in &dom {
        if r.gen_bool(0.7) {
            if let Some(u) = random_term_within(r, &range_sig, 2, &x.sort) {
                theta.insert(x.clone(), u).unwrap();
            }
        }
    }
    let mut rhs = theta.apply(&t);
    if r.gen_bool(0.5) {
        rhs = alpha_variant(r, &rhs);
    }
    if r.gen_bool(0.5) {
        pr.push(Equality::new(t, rhs));
    } else {
        pr.push(Equality::new(rhs, t));
    }
    (pr, theta)
}

/// A random substitution over the unknowns of `pr` and those it may introduce.
pub fn random_instance(r: &mut R, pr: &[Equality], extra: &BTreeSet<Unknown>) -> Substitution {
    let mut dom: Vec<Unknown> = problem_fv(pr).into_iter().collect();
    dom.extend(extra.iter().cloned());
    let sig = Sig { unknowns: vec![], ..Sig::standard(r) };
    random_subst(r, &dom, &sig, 2)
}

pub fn random_vector(r: &mut R, must: &BTreeSet<Atom>, extra_max: usize) -> Vector {
    let mut atoms: Vec<Atom> = must.iter().copied().collect();
    let rest: Vec<Atom> = pool().into_iter().filter(|a| !must.contains(a)).collect();
    let k = r.gen_range(0..=extra_max.min(rest.len()));
    atoms.extend(rest.choose_multiple(r, k).copied());
    atoms.shuffle(r);
    Vector::new(atoms).unwrap()
}

pub fn nominal_perm(r: &mut R) -> NPerm {
    let mut p = NPerm::id();
    for _ in 0..r.gen_range(0..=2) {
        let a = NAtom(r.gen_range(0..4));
        let b = NAtom(r.gen_range(0..4));
        if a != b {
            p = p.compose(&NPerm::swap(a, b));
        }
    }
    p
}

pub fn nominal_term(r: &mut R, unknowns: &[&str], depth: usize) -> NTerm {
    if depth == 0 || r.gen_bool(0.3) {
        if !unknowns.is_empty() && r.gen_bool(0.4) {
            return NTerm::Susp(nominal_perm(r), unknowns.choose(r).unwrap().to_string());
        }
        return NTerm::Atom(NAtom(r.gen_range(0..4)));
    }
    match r.gen_range(0..3) {
        0 => NTerm::abs(NAtom(r.gen_range(0..4)), nominal_term(r, unknowns, depth - 1)),
        1 => NTerm::App("g".into(), vec![nominal_term(r, unknowns, depth - 1)]),
        _ => NTerm::App(
            "f".into(),
            vec![nominal_term(r, unknowns, depth - 1), nominal_term(r, unknowns, depth - 1)],
        ),
    }
}

pub fn nominal_context(r: &mut R, unknowns: &[&str]) -> FreshnessContext {
    let mut d = FreshnessContext::new();
    for x in unknowns {
        for i in 0..4 {
            if r.gen_bool(0.3) {
                d.insert((NAtom(i), x.to_string()));
            }
        }
    }
    d
}

/// An α-equivalent (under `delta`) copy, used to make equalities hold often.
pub fn nominal_variant(r: &mut R, delta: &FreshnessContext, t: &NTerm) -> NTerm {
    match t {
        NTerm::Atom(_) => t.clone(),
        NTerm::App(f, args) => NTerm::App(f.clone(), args.iter().map(|u| nominal_variant(r, delta, u)).collect()),
        NTerm::Abs(a, body) => {
            let body = nominal_variant(r, delta, body);
            let b = NAtom(r.gen_range(0..6));
            if pnu::nominal::n_freshness_derivable(delta, b, &body) && r.gen_bool(0.6) {
                NTerm::abs(b, body.permute(&NPerm::swap(b, *a)))
            } else {
                NTerm::abs(*a, body)
            }
        }
        NTerm::Susp(p, x) => {
            let fresh: Vec<NAtom> =
                (0..4).map(NAtom).filter(|a| delta.contains(&(*a, x.clone()))).collect();
            if fresh.len() >= 2 && r.gen_bool(0.6) {
                NTerm::Susp(p.compose(&NPerm::swap(fresh[0], fresh[1])), x.clone())
            } else {
                t.clone()
            }
        }
    }
}

pub fn nominal_subst(r: &mut R, unknowns: &[&str], inner: &[&str]) -> NSubst {
    let mut th = BTreeMap::new();
    for x in unknowns {
        if r.gen_bool(0.7) {
            th.insert(x.to_string(), nominal_term(r, inner, 2));
        }
    }
    th
}

pub fn nominal_problem(r: &mut R, delta: &FreshnessContext, unknowns: &[&str]) -> Vec<NGoal> {
    (0..r.gen_range(1..=2))
        .map(|_| {
            let t = nominal_term(r, unknowns, 2);
            if r.gen_bool(0.3) {
                NGoal::Fresh(NAtom(r.gen_range(0..4)), t)
            } else {
                let s = if r.gen_bool(0.5) { nominal_variant(r, delta, &t) } else { nominal_term(r, unknowns, 2) };
                NGoal::Eq(t, s)
            }
        })
        .collect()
}

/// A φ-pattern whose unknown arguments come from `e`.
pub fn random_pattern(r: &mut R, unknowns: &[Unknown], phi: &ArityMap, e: &Vector, depth: usize) -> LTerm {
    let atoms = pool();
    if depth == 0 || r.gen_bool(0.3) {
        if r.gen_bool(0.5) && !unknowns.is_empty() {
            let y = unknowns.choose(r).unwrap();
            let args: Vec<LTerm> =
                e.atoms().choose_multiple(r, phi[y]).map(|a| LTerm::Atom(*a)).collect();
            return LTerm::apply_all(LTerm::Unknown(y.clone()), args);
        }
        return LTerm::Atom(*atoms.choose(r).unwrap());
    }
    match r.gen_range(0..3) {
        0 => LTerm::lam(*atoms.choose(r).unwrap(), random_pattern(r, unknowns, phi, e, depth - 1)),
        1 => LTerm::app(LTerm::Former("g".into()), random_pattern(r, unknowns, phi, e, depth - 1)),
        _ => LTerm::apply_all(
            LTerm::Former("f".into()),
            [random_pattern(r, unknowns, phi, e, depth - 1), random_pattern(r, unknowns, phi, e, depth - 1)],
        ),
    }
}
