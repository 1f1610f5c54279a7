use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotBijective(String),
    #[error("malformed cycle notation at column {column}: {reason}")]
    CycleSyntax { column: usize, reason: String },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("group order exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("lattice budget exceeded: |G| = {order} > {budget}; use interval mode (--above)")]
    BudgetExceeded { order: usize, budget: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("unsupported field size {0}")]
    UnsupportedField(u32),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not in the lattice scope")]
    NotInScope,
    #[error("subgroup must be proper")]
    NotProper,
    #[error("subgroup is not 2-maximal")]
    NotTwoMaximal,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
