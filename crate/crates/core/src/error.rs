use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("presentation is not local: {0}")]
    NotLocal(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    MixedRings,
    #[error("element {0} is not a unit")]
    NonUnit(String),
    #[error("derivative at the seed is not a unit")]
    NonUnitDerivative,
    #[error("Newton iteration did not converge")]
    NoConvergence,
    #[error("residue fields differ: {0}")]
    ResidueMismatch(String),
    #[error("parameter {0} must be a unit")]
    NonUnitParameter(String),
    #[error("bad matrix indices: {0}")]
    BadIndices(String),
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("matrix is not congruent to I modulo the squared ideal: {0}")]
    NotInCongruenceSubgroup(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("generator {0} has a non-invertible image")]
    NonInvertibleImage(String),
    #[error("multiplication table is not available for this group")]
    TableMissing,
    #[error("search space too large: fiber sizes {fibers:?}")]
    SearchTooLarge { fibers: Vec<u128> },
    #[error("kernel group too large: {0} elements")]
    KernelTooLarge(u128),
    #[error("not a ring homomorphism ({axiom}): {witness}")]
    NotAHomomorphism { axiom: String, witness: String },
    #[error("subgroup order {order} is divisible by p = {p}")]
    OrderNotCoprime { order: usize, p: u64 },
    #[error("ratio at element {0} is not a scalar matrix")]
    NonScalarRatio(String),
    #[error("lift is not congruent to an induced lift: {0}")]
    NotCongruentToInduced(String),
    #[error("claim {claim} violated: {witness}")]
    ClaimViolated { claim: u8, witness: String },
    #[error("certificate error: {0}")]
    Certificate(String),
}
