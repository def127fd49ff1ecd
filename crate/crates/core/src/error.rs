use std::fmt;

/// Errors shared across the library.
///
/// Every fallible operation reports which precondition failed rather than
/// panicking, so callers (in particular the CLI) can turn violations into
/// exit codes and messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Hessenberg candidate has no entries.
    EmptySequence,
    /// `h(j) < h(j-1)` at the given 1-based position.
    NotWeaklyIncreasing { position: usize },
    /// `h(j) < j` at the given 1-based position.
    BelowDiagonal { position: usize },
    /// `h(j) > n` at the given 1-based position.
    OutOfRange { position: usize },
    /// A one-line word repeats a value, so it is not a permutation.
    NotABijection { value: usize },
    /// An index argument falls outside its documented range.
    IndexOutOfRange { index: usize, bound: usize },
    /// Two objects that must share an ambient size do not.
    SizeMismatch { left: usize, right: usize },
    /// A full symmetric-group enumeration was requested beyond the cap.
    CapExceeded { n: usize, cap: usize },
    /// A subset argument has a cardinality outside the admissible set.
    InvalidCardinality { cardinality: usize },
    /// The operation is only defined when h(j) >= j+1 for all j < n.
    NotConnected,
    /// A stated hypothesis of the operation does not hold for this input.
    PreconditionUnmet { hypothesis: String },
    /// The projected linear-algebra problem exceeds the entry budget.
    BudgetExceeded { required: u128, budget: u128 },
    /// An exact linear solve produced a non-integer multiplicity.
    NonIntegralSolution,
    /// Text input could not be parsed.
    Parse { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySequence => write!(f, "sequence is empty"),
            Error::NotWeaklyIncreasing { position } => {
                write!(f, "not weakly increasing at position {position}")
            }
            Error::BelowDiagonal { position } => {
                write!(f, "h({position}) < {position} violates h(j) >= j")
            }
            Error::OutOfRange { position } => {
                write!(f, "h({position}) exceeds n")
            }
            Error::NotABijection { value } => {
                write!(f, "value {value} repeats; not a permutation")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} outside 1..={bound}")
            }
            Error::SizeMismatch { left, right } => {
                write!(f, "ambient sizes differ: {left} vs {right}")
            }
            Error::CapExceeded { n, cap } => {
                write!(f, "n = {n} exceeds the enumeration cap {cap}")
            }
            Error::InvalidCardinality { cardinality } => {
                write!(f, "subset cardinality {cardinality} not admissible here")
            }
            Error::NotConnected => {
                write!(f, "requires h(j) >= j+1 for all j in [n-1]")
            }
            Error::PreconditionUnmet { hypothesis } => {
                write!(f, "hypothesis not satisfied: {hypothesis}")
            }
            Error::BudgetExceeded { required, budget } => {
                write!(
                    f,
                    "projected matrix size {required} exceeds budget {budget} entries"
                )
            }
            Error::NonIntegralSolution => {
                write!(f, "exact solve produced non-integer multiplicities")
            }
            Error::Parse { message } => write!(f, "parse error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
