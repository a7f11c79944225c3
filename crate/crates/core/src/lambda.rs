//! Untyped λ-terms over the same atoms and unknowns as permissive terms.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{fresh_atom, Atom, AtomSet, Permutation};
use crate::error::Error;
use crate::term::Unknown;

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LTerm {
    Atom(Atom),
    Unknown(Unknown),
    Former(String),
    Lam(Atom, Box<LTerm>),
    App(Box<LTerm>, Box<LTerm>),
}

impl LTerm {
    pub fn lam(a: Atom, body: LTerm) -> LTerm {
        LTerm::Lam(a, Box::new(body))
    }

    pub fn app(f: LTerm, x: LTerm) -> LTerm {
        LTerm::App(Box::new(f), Box::new(x))
    }

    /// `head a1 … an`.
    pub fn apply_all<I: IntoIterator<Item = LTerm>>(head: LTerm, args: I) -> LTerm {
        args.into_iter().fold(head, LTerm::app)
    }

    pub fn lams<I>(binders: I, body: LTerm) -> LTerm
    where
        I: IntoIterator<Item = Atom>,
        I::IntoIter: DoubleEndedIterator,
    {
        binders.into_iter().rev().fold(body, |acc, a| LTerm::lam(a, acc))
    }

    pub fn permute(&self, pi: &Permutation) -> LTerm {
        if pi.is_id() {
            return self.clone();
        }
        match self {
            LTerm::Atom(a) => LTerm::Atom(pi.apply(*a)),
            LTerm::Unknown(_) | LTerm::Former(_) => self.clone(),
            LTerm::Lam(a, body) => LTerm::lam(pi.apply(*a), body.permute(pi)),
            LTerm::App(f, x) => LTerm::app(f.permute(pi), x.permute(pi)),
        }
    }

    pub fn swap(&self, a: Atom, b: Atom) -> LTerm {
        self.permute(&Permutation::swap(a, b))
    }

    pub fn fa(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_fa(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_fa(&self, bound: &mut BTreeSet<Atom>, out: &mut BTreeSet<Atom>) {
        match self {
            LTerm::Atom(a) => {
                if !bound.contains(a) {
                    out.insert(*a);
                }
            }
            LTerm::Unknown(_) | LTerm::Former(_) => {}
            LTerm::Lam(a, body) => {
                let fresh = bound.insert(*a);
                body.collect_fa(bound, out);
                if fresh {
                    bound.remove(a);
                }
            }
            LTerm::App(f, x) => {
                f.collect_fa(bound, out);
                x.collect_fa(bound, out);
            }
        }
    }

    pub fn has_free(&self, a: Atom) -> bool {
        match self {
            LTerm::Atom(b) => *b == a,
            LTerm::Unknown(_) | LTerm::Former(_) => false,
            LTerm::Lam(b, body) => *b != a && body.has_free(a),
            LTerm::App(f, x) => f.has_free(a) || x.has_free(a),
        }
    }

    pub fn fv(&self) -> BTreeSet<Unknown> {
        let mut out = BTreeSet::new();
        self.collect_fv(&mut out);
        out
    }

    pub fn collect_fv(&self, out: &mut BTreeSet<Unknown>) {
        match self {
            LTerm::Unknown(x) => {
                out.insert(x.clone());
            }
            LTerm::Atom(_) | LTerm::Former(_) => {}
            LTerm::Lam(_, body) => body.collect_fv(out),
            LTerm::App(f, x) => {
                f.collect_fv(out);
                x.collect_fv(out);
            }
        }
    }

    /// Every atom occurring anywhere, binders included.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            LTerm::Atom(a) => {
                out.insert(*a);
            }
            LTerm::Unknown(_) | LTerm::Former(_) => {}
            LTerm::Lam(a, body) => {
                out.insert(*a);
                body.collect_atoms(out);
            }
            LTerm::App(f, x) => {
                f.collect_atoms(out);
                x.collect_atoms(out);
            }
        }
    }

    /// Splits `h g1 … gn` into `h` and `[g1, …, gn]`.
    pub fn spine(&self) -> (&LTerm, Vec<&LTerm>) {
        let mut head = self;
        let mut args = Vec::new();
        while let LTerm::App(f, x) = head {
            args.push(&**x);
            head = f;
        }
        args.reverse();
        (head, args)
    }
}

pub fn l_alpha_eq(g: &LTerm, h: &LTerm) -> bool {
    match (g, h) {
        (LTerm::Atom(a), LTerm::Atom(b)) => a == b,
        (LTerm::Unknown(x), LTerm::Unknown(y)) => x == y,
        (LTerm::Former(f), LTerm::Former(k)) => f == k,
        (LTerm::Lam(a, g1), LTerm::Lam(b, h1)) => {
            if a == b {
                l_alpha_eq(g1, h1)
            } else {
                !g1.has_free(*b) && l_alpha_eq(&g1.swap(*b, *a), h1)
            }
        }
        (LTerm::App(f, x), LTerm::App(k, y)) => l_alpha_eq(f, k) && l_alpha_eq(x, y),
        _ => false,
    }
}

/// A λ-calculus substitution; unknowns outside the map are left alone.
pub type LSubst = BTreeMap<Unknown, LTerm>;

pub fn l_subst(g: &LTerm, sigma: &LSubst) -> LTerm {
    match g {
        LTerm::Atom(_) | LTerm::Former(_) => g.clone(),
        LTerm::Unknown(x) => sigma.get(x).cloned().unwrap_or_else(|| g.clone()),
        LTerm::App(f, x) => LTerm::app(l_subst(f, sigma), l_subst(x, sigma)),
        LTerm::Lam(a, body) => {
            let mut incoming = BTreeSet::new();
            for x in body.fv() {
                if let Some(t) = sigma.get(&x) {
                    incoming.extend(t.fa());
                }
            }
            if !incoming.contains(a) {
                return LTerm::lam(*a, l_subst(body, sigma));
            }
            let mut avoid = incoming;
            avoid.extend(body.fa());
            let b = fresh_atom(&AtomSet::from(&avoid)).expect("finite avoid set");
            LTerm::lam(b, l_subst(&body.swap(b, *a), sigma))
        }
    }
}

/// `g[h/a]`, capture-avoiding.
pub fn l_subst_atom(g: &LTerm, h: &LTerm, a: Atom) -> LTerm {
    match g {
        LTerm::Atom(b) if *b == a => h.clone(),
        LTerm::Atom(_) | LTerm::Unknown(_) | LTerm::Former(_) => g.clone(),
        LTerm::App(f, x) => LTerm::app(l_subst_atom(f, h, a), l_subst_atom(x, h, a)),
        LTerm::Lam(c, _) if *c == a => g.clone(),
        LTerm::Lam(c, body) => {
            if !body.has_free(a) {
                return g.clone();
            }
            if !h.has_free(*c) {
                return LTerm::lam(*c, l_subst_atom(body, h, a));
            }
            let mut avoid = h.fa();
            avoid.extend(body.fa());
            avoid.insert(a);
            let b = fresh_atom(&AtomSet::from(&avoid)).expect("finite avoid set");
            LTerm::lam(b, l_subst_atom(&body.swap(b, *c), h, a))
        }
    }
}

/// Contracts the leftmost-outermost redex, if any.
pub fn beta_step(g: &LTerm) -> Option<LTerm> {
    match g {
        LTerm::App(f, x) => {
            if let LTerm::Lam(a, body) = &**f {
                return Some(l_subst_atom(body, x, *a));
            }
            if let Some(f1) = beta_step(f) {
                return Some(LTerm::App(Box::new(f1), x.clone()));
            }
            beta_step(x).map(|x1| LTerm::App(f.clone(), Box::new(x1)))
        }
        LTerm::Lam(a, body) => beta_step(body).map(|b| LTerm::lam(*a, b)),
        _ => None,
    }
}

pub fn beta_normalize(g: &LTerm, fuel: usize) -> Result<LTerm, Error> {
    let mut cur = g.clone();
    for _ in 0..fuel {
        match beta_step(&cur) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if beta_step(&cur).is_none() {
        Ok(cur)
    } else {
        Err(Error::FuelExhausted)
    }
}

pub fn abeq(g: &LTerm, h: &LTerm, fuel: usize) -> Result<bool, Error> {
    Ok(l_alpha_eq(&beta_normalize(g, fuel)?, &beta_normalize(h, fuel)?))
}

/// `(σ∘σ')(X) = σ(X)σ'`.
pub fn l_compose(s1: &LSubst, s2: &LSubst) -> LSubst {
    let mut out: LSubst = s1.iter().map(|(x, t)| (x.clone(), l_subst(t, s2))).collect();
    for (x, t) in s2 {
        out.entry(x.clone()).or_insert_with(|| t.clone());
    }
    out
}

/// Arities of unknowns.
pub type ArityMap = BTreeMap<Unknown, usize>;

pub fn is_pattern(g: &LTerm, phi: &ArityMap) -> bool {
    if let LTerm::Lam(_, body) = g {
        return is_pattern(body, phi);
    }
    let (head, args) = g.spine();
    match head {
        LTerm::Atom(_) => args.is_empty(),
        LTerm::Unknown(x) => {
            phi.get(x) == Some(&args.len()) && args.iter().all(|t| matches!(t, LTerm::Atom(_)))
        }
        LTerm::Former(_) => args.iter().all(|t| is_pattern(t, phi)),
        LTerm::Lam(..) | LTerm::App(..) => false,
    }
}

/// Atoms passed as arguments to unknowns.
pub fn args(q: &LTerm) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    collect_args(q, &mut out);
    out
}

fn collect_args(q: &LTerm, out: &mut BTreeSet<Atom>) {
    if let LTerm::Lam(_, body) = q {
        return collect_args(body, out);
    }
    let (head, rest) = q.spine();
    match head {
        LTerm::Unknown(_) => {
            for t in rest {
                if let LTerm::Atom(a) = t {
                    out.insert(*a);
                }
            }
        }
        _ => rest.into_iter().for_each(|t| collect_args(t, out)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> Atom {
        Atom::lt(i)
    }
    fn b(i: u32) -> Atom {
        Atom::gt(i)
    }
    fn at(x: Atom) -> LTerm {
        LTerm::Atom(x)
    }
    fn xu() -> Unknown {
        Unknown::new("X", AtomSet::comb()).unwrap()
    }

    #[test]
    fn permutation_and_free_atoms() {
        let g = LTerm::app(LTerm::Unknown(xu()), at(a(0)));
        assert_eq!(g.swap(a(0), a(1)), LTerm::app(LTerm::Unknown(xu()), at(a(1))));
        let l = LTerm::lam(a(0), LTerm::apply_all(LTerm::Unknown(xu()), [at(a(0)), at(b(0))]));
        assert_eq!(l.fa(), [b(0)].into_iter().collect());
        assert!(l_alpha_eq(&LTerm::lam(a(0), at(a(0))), &LTerm::lam(a(1), at(a(1)))));
        assert!(!l_alpha_eq(&LTerm::lam(a(0), at(a(1))), &LTerm::lam(a(1), at(a(1)))));
    }

    #[test]
    fn substitution_avoids_capture() {
        let s: LSubst = [(xu(), at(a(0)))].into_iter().collect();
        let got = l_subst(&LTerm::lam(a(0), LTerm::Unknown(xu())), &s);
        assert!(l_alpha_eq(&got, &LTerm::lam(b(0), at(a(0)))));
        assert_eq!(l_subst_atom(&at(a(0)), &at(b(3)), a(0)), at(b(3)));
        assert_eq!(l_subst_atom(&LTerm::Unknown(xu()), &at(b(3)), a(0)), LTerm::Unknown(xu()));
        let g = LTerm::lam(a(1), LTerm::app(at(a(0)), at(a(1))));
        let got = l_subst_atom(&g, &at(a(1)), a(0));
        assert!(l_alpha_eq(&got, &LTerm::lam(a(2), LTerm::app(at(a(1)), at(a(2))))));
    }

    #[test]
    fn beta() {
        let redex = LTerm::app(LTerm::lam(a(0), at(a(0))), at(b(0)));
        assert!(abeq(&redex, &at(b(0)), DEFAULT_FUEL).unwrap());
        let w = LTerm::lam(a(0), LTerm::app(at(a(0)), at(a(0))));
        let omega = LTerm::app(w.clone(), w);
        assert_eq!(abeq(&omega, &omega, 50), Err(Error::FuelExhausted));
    }

    #[test]
    fn abstraction_applied_to_permuted_binders() {
        let y = Unknown::new("Y", AtomSet::comb()).unwrap();
        let g = LTerm::apply_all(LTerm::Former("f".into()), [at(a(1)), LTerm::app(LTerm::Unknown(y), at(a(1)))]);
        let pi = Permutation::swap(a(1), a(5));
        let redex = LTerm::app(LTerm::lam(a(1), g.clone()), at(a(5)));
        assert!(abeq(&redex, &g.permute(&pi), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn patterns() {
        let phi: ArityMap = [(xu(), 2)].into_iter().collect();
        let q = LTerm::apply_all(LTerm::Unknown(xu()), [at(a(0)), at(a(1))]);
        assert!(is_pattern(&q, &phi));
        assert_eq!(args(&q), [a(0), a(1)].into_iter().collect());
        let bad = LTerm::app(LTerm::Unknown(xu()), LTerm::app(LTerm::Former("f".into()), at(a(0))));
        assert!(!is_pattern(&bad, &phi));
        assert!(is_pattern(&LTerm::lam(a(3), q), &phi));
    }
}
