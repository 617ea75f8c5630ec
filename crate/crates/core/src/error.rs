use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime admissible here")]
    InvalidPrime(u64),
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("modulus {ell}^{m} exceeds the machine-word cap")]
    ModulusTooLarge { ell: u64, m: u32 },
    #[error("residues modulo {left} and {right} cannot be combined")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: String, modulus: u64 },
    #[error("series are over different coefficient domains")]
    DomainMismatch,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("leading coefficient is not a unit")]
    NonUnitLeadingCoefficient,
    #[error(
        "coefficient {coefficient} at exponent {exponent} is not divisible by {ell}^{required}"
    )]
    DivisibilityViolation {
        exponent: i64,
        coefficient: String,
        ell: u64,
        required: u32,
    },
    #[error("enumeration oracle limited to n <= 30 and k <= 10 (got k = {k}, n = {n})")]
    OracleScaleExceeded { k: u64, n: u64 },
    #[error("hypothesis k = {k} = -4 (mod {ell}^{exponent}) does not hold")]
    HypothesisViolated { k: u64, ell: u64, exponent: u32 },
    #[error("no prior certificate establishes level {level}")]
    MissingPriors { level: u32 },
    #[error("shift s = {s} takes k = {k} below 1 (step {step})")]
    InvalidShift { k: u64, s: i64, step: u64 },
    #[error("certificate lacks evidence for level {level}")]
    IncompleteChain { level: u32 },
    #[error("argument {value} exceeds the cap {cap}")]
    CapExceeded { value: u64, cap: u64 },
    #[error("weight {0} is odd")]
    OddWeight(i64),
    #[error("weight {found} does not match the expected {expected}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("need precision {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },
    #[error("n = {n} is below the admissible threshold {min}")]
    RangeTooSmall { n: i64, min: i64 },
    #[error("certificate line could not be parsed: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidParameter(String),
}
