//! Substitutions of terms for unknowns.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::term::{alpha_eq, Equality, Problem, Term, Unknown};

/// A finite map from unknowns to terms with `fa(θ(X^S)) ⊆ S` for every binding.
/// Bindings of the form `X := id·X` are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<Unknown, Term>,
}

fn is_identity_binding(x: &Unknown, t: &Term) -> bool {
    matches!(t, Term::Susp(p, y) if p.is_id() && y == x)
}

impl Substitution {
    pub fn id() -> Self {
        Substitution::default()
    }

    pub fn single(x: &Unknown, t: Term) -> Result<Self, Error> {
        let mut s = Substitution::id();
        s.insert(x.clone(), t)?;
        Ok(s)
    }

    pub fn from_bindings<I: IntoIterator<Item = (Unknown, Term)>>(it: I) -> Result<Self, Error> {
        let mut s = Substitution::id();
        for (x, t) in it {
            s.insert(x, t)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, x: Unknown, t: Term) -> Result<(), Error> {
        if !t.fa().is_subset(&x.sort) {
            return Err(Error::PermissionViolation { unknown: x.name });
        }
        if is_identity_binding(&x, &t) {
            self.bindings.remove(&x);
        } else {
            self.bindings.insert(x, t);
        }
        Ok(())
    }

    /// Stores a binding already known to be valid.
    fn insert_trusted(&mut self, x: Unknown, t: Term) {
        debug_assert!(t.fa().is_subset(&x.sort));
        if !is_identity_binding(&x, &t) {
            self.bindings.insert(x, t);
        }
    }

    pub fn get(&self, x: &Unknown) -> Term {
        self.bindings.get(x).cloned().unwrap_or_else(|| Term::var(x))
    }

    pub fn bound(&self, x: &Unknown) -> Option<&Term> {
        self.bindings.get(x)
    }

    pub fn domain(&self) -> BTreeSet<Unknown> {
        self.bindings.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Unknown, &Term)> {
        self.bindings.iter()
    }

    pub fn is_id(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.is_id() {
            return t.clone();
        }
        match t {
            Term::Atom(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|u| self.apply(u)).collect()),
            Term::Abs(a, body) => Term::abs(*a, self.apply(body)),
            Term::Susp(pi, x) => match self.bindings.get(x) {
                Some(u) => u.permute(pi),
                None => t.clone(),
            },
        }
    }

    /// `self ∘ other`: `X ↦ (self(X))other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::id();
        for (x, t) in &self.bindings {
            out.insert_trusted(x.clone(), other.apply(t));
        }
        for (x, t) in &other.bindings {
            if !self.bindings.contains_key(x) {
                out.insert_trusted(x.clone(), t.clone());
            }
        }
        out
    }

    pub fn restrict(&self, v: &BTreeSet<Unknown>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(x, _)| v.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }

    pub fn minus(&self, x: &Unknown) -> Substitution {
        let mut out = self.clone();
        out.bindings.remove(x);
        out
    }

    pub fn apply_problem(&self, pr: &[Equality]) -> Problem {
        pr.iter()
            .map(|e| Equality::new(self.apply(&e.lhs), self.apply(&e.rhs)))
            .collect()
    }

    pub fn solves(&self, pr: &[Equality]) -> bool {
        pr.iter().all(|e| alpha_eq(&self.apply(&e.lhs), &self.apply(&e.rhs)))
    }
}

/// The witness that `theta <= theta.compose(other)` in the instantiation order.
pub fn instantiation_leq_witness(theta: &Substitution, other: &Substitution) -> Substitution {
    theta.compose(other)
}
