//! Atoms, finite-or-cofinite atom sets and finite permutations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;

/// Which half of the atom universe an atom lives in.
///
/// `Lt` atoms are the comb `A<` that permission sets are built around;
/// `Gt` atoms are the half that fresh atoms are drawn from first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Lt,
    Gt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub half: Half,
    pub index: u32,
}

impl Atom {
    pub const fn lt(index: u32) -> Atom {
        Atom { half: Half::Lt, index }
    }

    pub const fn gt(index: u32) -> Atom {
        Atom { half: Half::Gt, index }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half {
            Half::Lt => write!(f, "a{}", self.index),
            Half::Gt => write!(f, "b{}", self.index),
        }
    }
}

/// One half of an atom set: either a finite set of indices, or everything
/// except a finite set of indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSet {
    pub cofinite: bool,
    pub finite: BTreeSet<u32>,
}

impl HalfSet {
    pub fn empty() -> Self {
        HalfSet { cofinite: false, finite: BTreeSet::new() }
    }

    pub fn full() -> Self {
        HalfSet { cofinite: true, finite: BTreeSet::new() }
    }

    pub fn contains(&self, i: u32) -> bool {
        self.finite.contains(&i) != self.cofinite
    }

    pub fn complement(&self) -> Self {
        HalfSet { cofinite: !self.cofinite, finite: self.finite.clone() }
    }

    pub fn union(&self, o: &Self) -> Self {
        match (self.cofinite, o.cofinite) {
            (false, false) => HalfSet { cofinite: false, finite: &self.finite | &o.finite },
            (true, true) => HalfSet { cofinite: true, finite: &self.finite & &o.finite },
            (true, false) => HalfSet { cofinite: true, finite: &self.finite - &o.finite },
            (false, true) => HalfSet { cofinite: true, finite: &o.finite - &self.finite },
        }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        self.complement().union(&o.complement()).complement()
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.intersect(&o.complement())
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        match (self.cofinite, o.cofinite) {
            (false, _) => self.finite.iter().all(|&i| o.contains(i)),
            (true, false) => false,
            (true, true) => o.finite.is_subset(&self.finite),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.finite.is_empty()
    }

    /// Least index in the set; `None` when empty.
    pub fn least(&self) -> Option<u32> {
        if self.cofinite {
            (0..).find(|i| !self.finite.contains(i))
        } else {
            self.finite.iter().next().copied()
        }
    }
}

/// A set of atoms, finite or cofinite independently on each half.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    pub lt: HalfSet,
    pub gt: HalfSet,
}

impl AtomSet {
    pub fn empty() -> Self {
        AtomSet { lt: HalfSet::empty(), gt: HalfSet::empty() }
    }

    /// `A<`, the comb.
    pub fn comb() -> Self {
        AtomSet { lt: HalfSet::full(), gt: HalfSet::empty() }
    }

    /// `A>`.
    pub fn upper() -> Self {
        AtomSet { lt: HalfSet::empty(), gt: HalfSet::full() }
    }

    pub fn all() -> Self {
        AtomSet { lt: HalfSet::full(), gt: HalfSet::full() }
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut s = AtomSet::empty();
        for a in atoms {
            s.insert(a);
        }
        s
    }

    fn half(&self, h: Half) -> &HalfSet {
        match h {
            Half::Lt => &self.lt,
            Half::Gt => &self.gt,
        }
    }

    fn half_mut(&mut self, h: Half) -> &mut HalfSet {
        match h {
            Half::Lt => &mut self.lt,
            Half::Gt => &mut self.gt,
        }
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.half(a.half).contains(a.index)
    }

    pub fn insert(&mut self, a: Atom) {
        let h = self.half_mut(a.half);
        if h.cofinite {
            h.finite.remove(&a.index);
        } else {
            h.finite.insert(a.index);
        }
    }

    pub fn remove(&mut self, a: Atom) {
        let h = self.half_mut(a.half);
        if h.cofinite {
            h.finite.insert(a.index);
        } else {
            h.finite.remove(&a.index);
        }
    }

    pub fn with(&self, a: Atom) -> Self {
        let mut s = self.clone();
        s.insert(a);
        s
    }

    pub fn without(&self, a: Atom) -> Self {
        let mut s = self.clone();
        s.remove(a);
        s
    }

    pub fn union(&self, o: &Self) -> Self {
        AtomSet { lt: self.lt.union(&o.lt), gt: self.gt.union(&o.gt) }
    }

    pub fn intersect(&self, o: &Self) -> Self {
        AtomSet { lt: self.lt.intersect(&o.lt), gt: self.gt.intersect(&o.gt) }
    }

    pub fn minus(&self, o: &Self) -> Self {
        AtomSet { lt: self.lt.minus(&o.lt), gt: self.gt.minus(&o.gt) }
    }

    pub fn complement(&self) -> Self {
        AtomSet { lt: self.lt.complement(), gt: self.gt.complement() }
    }

    pub fn symmetric_difference(&self, o: &Self) -> Self {
        self.minus(o).union(&o.minus(self))
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.lt.is_subset(&o.lt) && self.gt.is_subset(&o.gt)
    }

    pub fn is_empty(&self) -> bool {
        self.lt.is_empty() && self.gt.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        !self.lt.cofinite && !self.gt.cofinite
    }

    pub fn is_permission_set(&self) -> bool {
        self.lt.cofinite && !self.gt.cofinite
    }

    /// The atoms of a finite set in ascending order.  Panics on a cofinite set.
    pub fn finite_atoms(&self) -> Vec<Atom> {
        assert!(self.is_finite(), "finite_atoms on an infinite set");
        self.lt
            .finite
            .iter()
            .map(|&i| Atom::lt(i))
            .chain(self.gt.finite.iter().map(|&i| Atom::gt(i)))
            .collect()
    }

    /// π·S, computed by adjusting S only on nontriv(π).
    pub fn image(&self, pi: &Permutation) -> Self {
        let mut out = self.clone();
        for a in pi.nontriv() {
            out.remove(a);
        }
        for a in pi.nontriv() {
            if self.contains(a) {
                out.insert(pi.apply(a));
            }
        }
        out
    }
}

impl From<&BTreeSet<Atom>> for AtomSet {
    fn from(s: &BTreeSet<Atom>) -> Self {
        AtomSet::from_atoms(s.iter().copied())
    }
}

/// The least atom not in `avoid`, preferring the upper half.
pub fn fresh_atom(avoid: &AtomSet) -> Result<Atom, Error> {
    if let Some(i) = avoid.gt.complement().least() {
        return Ok(Atom::gt(i));
    }
    if let Some(i) = avoid.lt.complement().least() {
        return Ok(Atom::lt(i));
    }
    Err(Error::ImpossibleAvoid)
}

/// A finite permutation of atoms.  Only non-fixed points are stored, so
/// structural equality is equality of functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    forward: BTreeMap<Atom, Atom>,
}

impl Permutation {
    pub fn id() -> Self {
        Permutation::default()
    }

    pub fn swap(a: Atom, b: Atom) -> Self {
        let mut forward = BTreeMap::new();
        if a != b {
            forward.insert(a, b);
            forward.insert(b, a);
        }
        Permutation { forward }
    }

    /// Builds a permutation from a mapping, rejecting anything that is not a
    /// bijection of its domain onto itself.
    pub fn from_map(map: BTreeMap<Atom, Atom>) -> Result<Self, Error> {
        let dom: BTreeSet<Atom> = map.keys().copied().collect();
        let img: BTreeSet<Atom> = map.values().copied().collect();
        if dom != img || img.len() != map.len() {
            return Err(Error::NotABijection);
        }
        let forward = map.into_iter().filter(|(a, b)| a != b).collect();
        Ok(Permutation { forward })
    }

    pub fn is_id(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.forward.get(&a).copied().unwrap_or(a)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut forward = BTreeMap::new();
        for a in self.nontriv().chain(other.nontriv()) {
            let b = self.apply(other.apply(a));
            if a != b {
                forward.insert(a, b);
            }
        }
        Permutation { forward }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation { forward: self.forward.iter().map(|(&a, &b)| (b, a)).collect() }
    }

    pub fn nontriv(&self) -> impl Iterator<Item = Atom> + '_ {
        self.forward.keys().copied()
    }

    pub fn nontriv_set(&self) -> AtomSet {
        AtomSet::from_atoms(self.nontriv())
    }

    /// Whether the two permutations coincide on every atom of `s`.
    pub fn agree_on(&self, other: &Permutation, s: &AtomSet) -> bool {
        self.nontriv()
            .chain(other.nontriv())
            .all(|a| !s.contains(a) || self.apply(a) == other.apply(a))
    }

    /// Cycles of length at least two, each starting at its least atom,
    /// ordered by that atom.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for a in self.nontriv() {
            if seen.contains(&a) {
                continue;
            }
            let mut cycle = vec![a];
            seen.insert(a);
            let mut b = self.apply(a);
            while b != a {
                seen.insert(b);
                cycle.push(b);
                b = self.apply(b);
            }
            out.push(cycle);
        }
        out
    }

    /// A shortest list of swaps whose left-to-right composition is `self`.
    pub fn to_swaps(&self) -> Vec<(Atom, Atom)> {
        let mut out = Vec::new();
        for c in self.cycles() {
            for k in (1..c.len()).rev() {
                out.push((c[0], c[k]));
            }
        }
        out
    }

    pub fn from_swaps(swaps: &[(Atom, Atom)]) -> Permutation {
        swaps
            .iter()
            .fold(Permutation::id(), |acc, &(a, b)| acc.compose(&Permutation::swap(a, b)))
    }
}

/// A list of pairwise distinct atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Atom>);

impl Vector {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, Error> {
        let distinct: BTreeSet<Atom> = atoms.iter().copied().collect();
        if distinct.len() != atoms.len() {
            return Err(Error::RepeatedAtom);
        }
        Ok(Vector(atoms))
    }

    pub fn empty() -> Self {
        Vector(Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.0.contains(&a)
    }

    /// `D ∩ S`, keeping the order of `D`.
    pub fn filter(&self, s: &AtomSet) -> Vec<Atom> {
        self.0.iter().copied().filter(|&a| s.contains(a)).collect()
    }

    pub fn to_set(&self) -> AtomSet {
        AtomSet::from_atoms(self.0.iter().copied())
    }
}
