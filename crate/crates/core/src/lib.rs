//! Permissive nominal terms and their unification.
//!
//! Atoms come in two halves, `A<` and `A>`.  Unknowns carry a permission set,
//! which bounds the free atoms of anything substituted for them.  The crate
//! decides alpha-equivalence, simplifies support inclusion problems, unifies,
//! and translates to and from classical nominal terms and lambda patterns.

pub mod atoms;
pub mod commands;
pub mod lambda;
pub mod nominal;
pub mod error;
pub mod subst;
pub mod support;
pub mod syntax;
pub mod term;
pub mod translate;
pub mod unify;

pub use atoms::{fresh_atom, Atom, AtomSet, Half, Permutation, Vector};
pub use error::Error;
pub use subst::Substitution;
pub use term::{alpha_eq, Equality, Problem, Term, Unknown};
