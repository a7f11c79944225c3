//! Permissive nominal terms.

use std::collections::BTreeSet;

use crate::atoms::{fresh_atom, Atom, AtomSet, Permutation};
use crate::error::Error;

/// An unknown `X^S`.  Two unknowns are the same only if both name and sort match.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub name: String,
    pub sort: AtomSet,
}

impl Unknown {
    pub fn new(name: impl Into<String>, sort: AtomSet) -> Result<Unknown, Error> {
        let name = name.into();
        if !sort.is_permission_set() {
            return Err(Error::NotAPermissionSet(name));
        }
        Ok(Unknown { name, sort })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Atom(Atom),
    App(String, Vec<Term>),
    Abs(Atom, Box<Term>),
    Susp(Permutation, Unknown),
}

impl Term {
    pub fn app(f: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn abs(a: Atom, body: Term) -> Term {
        Term::Abs(a, Box::new(body))
    }

    /// `id·X`.
    pub fn var(x: &Unknown) -> Term {
        Term::Susp(Permutation::id(), x.clone())
    }

    pub fn susp(pi: Permutation, x: &Unknown) -> Term {
        Term::Susp(pi, x.clone())
    }

    pub fn permute(&self, pi: &Permutation) -> Term {
        if pi.is_id() {
            return self.clone();
        }
        match self {
            Term::Atom(a) => Term::Atom(pi.apply(*a)),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|t| t.permute(pi)).collect()),
            Term::Abs(a, body) => Term::abs(pi.apply(*a), body.permute(pi)),
            Term::Susp(p, x) => Term::Susp(pi.compose(p), x.clone()),
        }
    }

    pub fn swap(&self, a: Atom, b: Atom) -> Term {
        self.permute(&Permutation::swap(a, b))
    }

    pub fn fa(&self) -> AtomSet {
        match self {
            Term::Atom(a) => AtomSet::from_atoms([*a]),
            Term::App(_, args) => args.iter().fold(AtomSet::empty(), |acc, t| acc.union(&t.fa())),
            Term::Abs(a, body) => body.fa().without(*a),
            Term::Susp(pi, x) => x.sort.image(pi),
        }
    }

    /// `a ∈ fa(self)`, without building the set.
    pub fn has_free(&self, a: Atom) -> bool {
        match self {
            Term::Atom(b) => *b == a,
            Term::App(_, args) => args.iter().any(|t| t.has_free(a)),
            Term::Abs(b, body) => *b != a && body.has_free(a),
            Term::Susp(pi, x) => x.sort.contains(pi.inverse().apply(a)),
        }
    }

    pub fn fv(&self) -> BTreeSet<Unknown> {
        let mut out = BTreeSet::new();
        self.collect_fv(&mut out);
        out
    }

    pub fn collect_fv(&self, out: &mut BTreeSet<Unknown>) {
        match self {
            Term::Atom(_) => {}
            Term::App(_, args) => args.iter().for_each(|t| t.collect_fv(out)),
            Term::Abs(_, body) => body.collect_fv(out),
            Term::Susp(_, x) => {
                out.insert(x.clone());
            }
        }
    }

    pub fn contains_unknown(&self, x: &Unknown) -> bool {
        match self {
            Term::Atom(_) => false,
            Term::App(_, args) => args.iter().any(|t| t.contains_unknown(x)),
            Term::Abs(_, body) => body.contains_unknown(x),
            Term::Susp(_, y) => y == x,
        }
    }

    pub fn atoms_of(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Term::Atom(a) => {
                out.insert(*a);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_atoms(out)),
            Term::Abs(a, body) => {
                out.insert(*a);
                body.collect_atoms(out);
            }
            Term::Susp(pi, _) => out.extend(pi.nontriv()),
        }
    }

    /// Number of abstractions along the structure; atoms and suspensions count 0.
    pub fn size(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 0,
            Term::App(_, args) => args.iter().map(Term::size).sum(),
            Term::Abs(_, body) => 1 + body.size(),
        }
    }

    pub fn formers(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::formers).sum::<usize>(),
            Term::Abs(_, body) => body.formers(),
        }
    }

    pub fn abstractions(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 0,
            Term::App(_, args) => args.iter().map(Term::abstractions).sum(),
            Term::Abs(_, body) => 1 + body.abstractions(),
        }
    }

    pub fn nontrivial_perms(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::Susp(pi, _) => usize::from(!pi.is_id()),
            Term::App(_, args) => args.iter().map(Term::nontrivial_perms).sum(),
            Term::Abs(_, body) => body.nontrivial_perms(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Atom(_) | Term::Susp(..) => 0,
            Term::App(_, args) => args.iter().map(|t| 1 + t.depth()).max().unwrap_or(0),
            Term::Abs(_, body) => 1 + body.depth(),
        }
    }
}

pub fn alpha_eq(r: &Term, s: &Term) -> bool {
    match (r, s) {
        (Term::Atom(a), Term::Atom(b)) => a == b,
        (Term::App(f, rs), Term::App(g, ss)) => {
            f == g && rs.len() == ss.len() && rs.iter().zip(ss).all(|(x, y)| alpha_eq(x, y))
        }
        (Term::Abs(a, r1), Term::Abs(b, s1)) => {
            if a == b {
                alpha_eq(r1, s1)
            } else {
                !r1.has_free(*b) && alpha_eq(&r1.swap(*b, *a), s1)
            }
        }
        (Term::Susp(p, x), Term::Susp(q, y)) => x == y && p.agree_on(q, &x.sort),
        _ => false,
    }
}

pub fn fa_all<'a, I: IntoIterator<Item = &'a Term>>(ts: I) -> AtomSet {
    ts.into_iter().fold(AtomSet::empty(), |acc, t| acc.union(&t.fa()))
}

/// An atom free in none of `ts`.
pub fn fresh_for(ts: &[Term]) -> Atom {
    fresh_atom(&fa_all(ts)).expect("free atoms of a term never cover every atom")
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equality {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equality {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equality { lhs, rhs }
    }
}

/// A multiset of equalities, kept in insertion order.
pub type Problem = Vec<Equality>;

pub fn problem_fv(pr: &[Equality]) -> BTreeSet<Unknown> {
    let mut out = BTreeSet::new();
    for e in pr {
        e.lhs.collect_fv(&mut out);
        e.rhs.collect_fv(&mut out);
    }
    out
}

pub fn problem_atoms(pr: &[Equality]) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for e in pr {
        e.lhs.collect_atoms(&mut out);
        e.rhs.collect_atoms(&mut out);
    }
    out
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
    fn x_comb() -> Unknown {
        Unknown::new("X", AtomSet::comb()).unwrap()
    }

    #[test]
    fn permutation_action() {
        let t = Term::abs(a(0), Term::Atom(a(0)));
        assert_eq!(t.swap(a(0), a(1)), Term::abs(a(1), Term::Atom(a(1))));
        let inner = Term::susp(Permutation::swap(a(0), a(1)), &x_comb());
        let got = inner.swap(b(0), a(0));
        let want = Term::susp(
            Permutation::swap(b(0), a(0)).compose(&Permutation::swap(a(0), a(1))),
            &x_comb(),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn free_atoms() {
        assert!(Term::abs(a(0), Term::Atom(a(0))).fa().is_empty());
        let s = Term::susp(Permutation::swap(a(0), b(0)), &x_comb()).fa();
        assert_eq!(s, AtomSet::comb().without(a(0)).with(b(0)));
        let t = Term::app("f", vec![Term::Atom(a(0)), Term::abs(a(1), Term::Atom(a(2)))]);
        assert_eq!(t.fa(), AtomSet::from_atoms([a(0), a(2)]));
    }

    #[test]
    fn atoms_and_unknowns() {
        let t = Term::abs(a(0), Term::susp(Permutation::swap(a(1), b(0)), &x_comb()));
        assert_eq!(t.atoms_of(), [a(0), a(1), b(0)].into_iter().collect());
        assert_eq!(t.fv(), [x_comb()].into_iter().collect());
        assert!(Term::app("f", vec![]).atoms_of().is_empty());
    }

    #[test]
    fn alpha_examples() {
        let x = x_comb();
        let l = Term::app("lam", vec![Term::abs(a(0), Term::var(&x))]);
        let r = Term::app("lam", vec![Term::abs(b(0), Term::susp(Permutation::swap(b(0), a(0)), &x))]);
        assert!(alpha_eq(&l, &r));
        assert!(alpha_eq(&Term::abs(a(0), Term::Atom(a(0))), &Term::abs(a(1), Term::Atom(a(1)))));
        assert!(!alpha_eq(&Term::var(&x), &Term::susp(Permutation::swap(a(0), a(1)), &x)));
        assert!(!alpha_eq(&Term::abs(a(0), Term::Atom(a(1))), &Term::abs(a(1), Term::Atom(a(1)))));
    }

    #[test]
    fn fresh_examples() {
        assert_eq!(fresh_for(&[Term::Atom(a(0))]), b(0));
        assert_eq!(fresh_for(&[Term::var(&x_comb())]), b(0));
        assert_eq!(fresh_for(&[Term::Atom(b(0)), Term::var(&x_comb())]), b(1));
    }

    #[test]
    fn non_permission_sort_rejected() {
        assert!(Unknown::new("X", AtomSet::upper()).is_err());
        assert!(Unknown::new("X", AtomSet::from_atoms([a(0)])).is_err());
    }
}
