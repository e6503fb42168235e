use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curve is singular (discriminant 0)")]
    Singular,
    #[error("conductor prime {prime} does not divide the discriminant")]
    ConductorMismatch { prime: u64 },
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the supported point-counting range")]
    PrimeTooLarge(u64),
    #[error("invalid Weil polynomial: {0}")]
    InvalidWeilPolynomial(String),
    #[error("inputs are defined over different finite fields")]
    MismatchedField,
    #[error("polynomial is not square-free (repeated Frobenius eigenvalue)")]
    RepeatedRoot,
    #[error("no admissible prime up to {p_max}")]
    EmptySweep { p_max: u64 },
    #[error("missing a_p for p = {0}")]
    MissingPrime(u64),
    #[error("coefficient overflow at n = {0}")]
    CoefficientOverflow(u64),
    #[error("{0} must be an odd prime")]
    EvenPrime(u64),
    #[error("series precisions differ ({0} vs {1})")]
    PrecisionMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis rows are linearly dependent")]
    LinearlyDependent,
    #[error("precision {precision} is below the Sturm bound {sturm}")]
    PrecisionBelowSturm { precision: usize, sturm: usize },
    #[error("form {0:?} not found")]
    MissingForm(String),
    #[error("no finite congruence modulus (vector lies in the lattice)")]
    NoConstraint,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("form {label:?}: expected {expected} coefficients, found {found}")]
    LengthMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Singular => "singular",
            Error::ConductorMismatch { .. } => "conductor_mismatch",
            Error::BadReduction(_) => "bad_reduction",
            Error::NotPrime(_) => "not_prime",
            Error::PrimeTooLarge(_) => "prime_too_large",
            Error::InvalidWeilPolynomial(_) => "invalid_weil_polynomial",
            Error::MismatchedField => "mismatched_field",
            Error::RepeatedRoot => "repeated_root",
            Error::EmptySweep { .. } => "empty_sweep",
            Error::MissingPrime(_) => "missing_prime",
            Error::CoefficientOverflow(_) => "coefficient_overflow",
            Error::EvenPrime(_) => "even_prime",
            Error::PrecisionMismatch(..) => "precision_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::LinearlyDependent => "linearly_dependent",
            Error::PrecisionBelowSturm { .. } => "precision_below_sturm",
            Error::MissingForm(_) => "missing_form",
            Error::NoConstraint => "no_constraint",
            Error::Parse { .. } => "parse_error",
            Error::Schema(_) => "schema_error",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
