use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the consistency checks of a claimed minimal-prime list failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentCheck {
    /// The defining ideal is not contained in a claimed component.
    Containment,
    /// The intersection of the claimed components is not inside the radical.
    Radical,
    /// One claimed component contains another.
    Minimality,
}

impl std::fmt::Display for ComponentCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ComponentCheck::Containment => "containment",
            ComponentCheck::Radical => "radical",
            ComponentCheck::Minimality => "minimality",
        })
    }
}

/// Coarse classification used for stable error codes and exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Argument,
    Parse,
    Domain,
    Verification,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("monomial orders differ")]
    OrderMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds 2^31")]
    CharacteristicTooLarge(u64),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("variable name `{0}` uses the reserved '@' prefix")]
    ReservedName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("the defining ideal is the unit ideal")]
    UnitIdeal,
    #[error("ideal has a non-monomial generator `{0}`")]
    NotMonomial(String),
    #[error("minimal primes are required for a non-monomial ideal; supply components")]
    MissingComponents,
    #[error("component verification failed ({check}): {detail}")]
    Verification { check: ComponentCheck, detail: String },
    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u32 },
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("prime ideal does not contain the defining ideal")]
    PrimeDoesNotContainIdeal,
    #[error("multiplier `{0}` is a zero divisor candidate: it lies in a minimal prime of the ring")]
    MultiplierNotInRingCirc(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::Verification { .. } => ErrorKind::Verification,
            Error::RingMismatch
            | Error::OrderMismatch
            | Error::NotPrime(_)
            | Error::CharacteristicTooLarge(_)
            | Error::InvalidVariable(_)
            | Error::ReservedName(_)
            | Error::DuplicateVariable(_)
            | Error::TooManyVariables(_)
            | Error::InvalidArgument(_) => ErrorKind::Argument,
            _ => ErrorKind::Domain,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingMismatch => "E_RING_MISMATCH",
            Error::OrderMismatch => "E_ORDER_MISMATCH",
            Error::ExponentOverflow => "E_OVERFLOW",
            Error::ZeroPolynomial => "E_ZERO_POLY",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::CharacteristicTooLarge(_) => "E_CHAR_RANGE",
            Error::InvalidVariable(_) => "E_VAR_NAME",
            Error::ReservedName(_) => "E_RESERVED_NAME",
            Error::DuplicateVariable(_) => "E_DUP_VAR",
            Error::TooManyVariables(_) => "E_TOO_MANY_VARS",
            Error::Parse { .. } => "E_PARSE",
            Error::UnitIdeal => "E_UNIT_IDEAL",
            Error::NotMonomial(_) => "E_NOT_MONOMIAL",
            Error::MissingComponents => "E_MISSING_COMPONENTS",
            Error::Verification { .. } => "E_VERIFY",
            Error::NotPowerOfCharacteristic { .. } => "E_NOT_CHAR_POWER",
            Error::CharacteristicZero => "E_CHAR_ZERO",
            Error::PrimeDoesNotContainIdeal => "E_PRIME_CONTAINMENT",
            Error::MultiplierNotInRingCirc(_) => "E_MULTIPLIER",
            Error::InvalidArgument(_) => "E_ARG",
        }
    }
}
