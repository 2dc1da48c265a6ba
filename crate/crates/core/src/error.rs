use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("monoid has {0} elements; tables above {1} require the trusted constructor")]
    UntrustedSize(usize, usize),
    #[error("monoid is not regular left duo")]
    NotRegularLeftDuo,
    #[error("monoid is not right semicentral")]
    NotRightSemicentral,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("no lattice node with index {0}")]
    NoSuchNode(usize),
    #[error("ordered set partitions live on ground sets of size {0} and {1}")]
    GroundSetMismatch(usize, usize),
    #[error("requested instance exceeds the size limit: {0}")]
    SizeLimit(String),
    #[error("invalid group description: {0}")]
    InvalidGroup(String),
    #[error("no suitable prime found below {0}")]
    SearchExhausted(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} does not contain the roots of unity of order {exponent}")]
    BadPrime { p: u32, exponent: u64 },
    #[error("characteristic {p} divides the order {order} of a maximal subgroup")]
    BadCharacteristic { p: u32, order: usize },
    #[error("maximal subgroup at idempotent {0} is not abelian")]
    NonAbelianFiber(usize),
    #[error("apex of the idempotent is not above the requested lattice node")]
    ApexMismatch,
    #[error("rank-2 interval [{0}, {1}] has {2} intermediate elements, expected 2")]
    DiamondViolation(usize, usize, usize),
    #[error("no consistent incidence signs exist (conflict at cell {0})")]
    NoConsistentSigns(usize),
    #[error("poset is not a CW poset")]
    NotCw,
    #[error("poset is not graded")]
    NotGraded,
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("algebra is not split basic over the chosen field")]
    NonSplitBasic,
    #[error("resolution did not terminate within {0} steps")]
    LengthExceeded(usize),
    #[error("minimality violated: {0}")]
    MinimalityViolation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
