use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// One failed condition found while validating a code triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch { space: &'static str, expected: usize, actual: usize },
    InclusionViolated { inner: &'static str, outer: &'static str },
    NotSelfDual,
    BadParameters(String),
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::DimensionMismatch { .. } => "DimensionMismatch",
            Violation::InclusionViolated { .. } => "InclusionViolated",
            Violation::NotSelfDual => "NotSelfDual",
            Violation::BadParameters(_) => "BadParameters",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { space, expected, actual } => {
                write!(f, "dim {space} is {actual}, expected {expected}")
            }
            Violation::InclusionViolated { inner, outer } => write!(f, "{inner} is not contained in {outer}"),
            Violation::NotSelfDual => write!(f, "C_max is not symplectically self-dual"),
            Violation::BadParameters(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus is reducible or has the wrong degree")]
    ReducibleModulus,
    #[error("field {p}^{m} exceeds the supported order")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("element {value} is outside GF({order})")]
    InvalidElement { value: u32, order: u32 },
    #[error("symplectic vector has odd length {0}")]
    OddLengthVector(usize),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("{0}")]
    NotASubspace(&'static str),
    #[error("share index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("enumeration of {size_log2:.1} bits exceeds the limit of {limit_log2} bits")]
    EnumerationTooLarge { size_log2: f64, limit_log2: u32 },
    #[error("code is not symplectically self-orthogonal")]
    NotSelfOrthogonal,
    #[error("invalid code triple: {}", join(.0))]
    InvalidTriple(Vec<Violation>),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("no coset representative supported outside the advance set")]
    NoAdvanceRepresentative,
    #[error("evaluation points are not distinct")]
    DuplicatePoints,
    #[error("unknown variable index {0}")]
    VariableUnknown(usize),
    #[error("set is not advance-shareable: I(S; X_B) > 0")]
    NotAdvanceShareable,
    #[error("argument {0} outside the open unit interval")]
    DomainError(f64),
    #[error("C_max is not of CSS form")]
    NotCss,
    #[error("state of {amplitudes} amplitudes exceeds the simulator limit")]
    StateTooLarge { amplitudes: u64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("not a density operator: {0}")]
    NotADensity(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

fn join(v: &[Violation]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

impl Error {
    /// Stable identifier used in reports and CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::InvalidElement { .. } => "InvalidElement",
            Error::OddLengthVector(_) => "OddLengthVector",
            Error::NoSolution => "NoSolution",
            Error::AmbientMismatch(..) => "AmbientMismatch",
            Error::NotASubspace(_) => "NotASubspace",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::NotSelfOrthogonal => "NotSelfOrthogonal",
            Error::InvalidTriple(v) => v.first().map_or("InvalidTriple", Violation::name),
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NoAdvanceRepresentative => "NoAdvanceRepresentative",
            Error::DuplicatePoints => "DuplicatePoints",
            Error::VariableUnknown(_) => "VariableUnknown",
            Error::NotAdvanceShareable => "NotAdvanceShareable",
            Error::DomainError(_) => "DomainError",
            Error::NotCss => "NotCss",
            Error::StateTooLarge { .. } => "StateTooLarge",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::NotADensity(_) => "NotADensity",
            Error::InvalidParameters(_) => "InvalidParameters",
        }
    }
}
