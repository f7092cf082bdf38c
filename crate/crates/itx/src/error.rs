//! Error type shared by all modules.

use std::fmt;

#[derive(Clone, Debug)]
pub enum Error {
    /// Operands belong to different rings (variable count or coefficient field).
    MixedRings,
    /// Exponentiation with a negative exponent.
    NegativePow,
    /// `substitute` was given no image for a variable that occurs.
    MissingImage(String),
    /// Text did not parse under the polynomial grammar.
    Syntax { line: usize, col: usize, msg: String },
    /// Identifier not declared in the problem file.
    Undeclared { line: usize, name: String },
    /// `field prime p` with a composite modulus.
    NonPrimeModulus(u64),
    /// Every generator of the saturating ideal reduces to 0 mod J.
    ZeroSaturatingIdeal,
    /// Element is not a member of the subalgebra; carries the printed normal form.
    NotInSubalgebra { element: String, normal_form: String },
    /// Localization at an element that is 0 in the presented ring.
    LocalizeAtZero,
    /// The subcommand requires an assertion flag that the problem file lacks.
    MissingAssertion(&'static str),
    /// A required problem-file block is absent.
    MissingBlock(&'static str),
    /// The van den Essen slice needs char = 0 or char not dividing deg_t mu(f).
    SliceUnavailable { char_p: u64 },
    /// Resultant characteristic polynomial needs a monic mu(f).
    NonMonicResultant,
    /// No nonzero invariant found in the searched span (unipotent step 6).
    InvariantSearchFailed(String),
    /// Group data fails an axiom or the chain is not in filtered coordinates.
    GroupData(String),
    /// An internal invariant that the algorithms guarantee was violated.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MixedRings => write!(f, "operands belong to different rings"),
            Error::NegativePow => write!(f, "pow with negative exponent"),
            Error::MissingImage(v) => write!(f, "no substitution image for variable `{v}`"),
            Error::Syntax { line, col, msg } => write!(f, "syntax error at {line}:{col}: {msg}"),
            Error::Undeclared { line, name } => {
                write!(f, "undeclared identifier `{name}` at line {line}")
            }
            Error::NonPrimeModulus(p) => write!(f, "modulus {p} is not prime"),
            Error::ZeroSaturatingIdeal => {
                write!(f, "zero saturating ideal: every generator reduces to 0 mod J")
            }
            Error::NotInSubalgebra { element, normal_form } => {
                write!(f, "`{element}` is not in the subalgebra (normal form `{normal_form}`)")
            }
            Error::LocalizeAtZero => write!(f, "cannot localize at an element that is 0"),
            Error::MissingAssertion(a) => write!(f, "problem file must `assert {a}`"),
            Error::MissingBlock(b) => write!(f, "problem file is missing the `{b}` block"),
            Error::SliceUnavailable { char_p } => write!(
                f,
                "van den Essen slice unavailable: characteristic {char_p} divides deg_t mu(f) \
                 for every moving variable (use the resultant path)"
            ),
            Error::NonMonicResultant => {
                write!(f, "resultant characteristic polynomial requires monic mu(f)")
            }
            Error::InvariantSearchFailed(m) => write!(f, "invariant search failed: {m}"),
            Error::GroupData(m) => write!(f, "invalid group data: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
