use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("every atom is excluded; no fresh atom exists")]
    ImpossibleAvoid,
    #[error("not a bijection on its domain")]
    NotABijection,
    #[error("vector contains a repeated atom")]
    RepeatedAtom,
    #[error("sort of {0} is not a permission set")]
    NotAPermissionSet(String),
    #[error("binding for {unknown} has free atoms outside its permission set")]
    PermissionViolation { unknown: String },
    #[error("support inclusion problem is inconsistent")]
    InconsistentProblem,
    #[error("substitution does not solve the inclusion problem at {0}")]
    NotASolution(String),
    #[error("beta normalisation ran out of fuel")]
    FuelExhausted,
    #[error("not a pattern: {0}")]
    NotAPattern(String),
    #[error("pattern cannot be inverted: {0}")]
    NotInvertible(String),
    #[error("substitution is not consistent with the abstraction vector at {0}")]
    NotDConsistent(String),
    #[error("unification exceeded {0} steps")]
    StepLimit(usize),
}
