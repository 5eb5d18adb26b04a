use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by the algorithms in this crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A vertex tuple contained a repeated vertex or was empty.
    MalformedSimplex(Vec<usize>),
    /// A simplex was looked up that is not a member of the complex.
    NotInComplex(Vec<usize>),
    /// Requested level is outside `0..=dim`.
    LevelOutOfRange { level: usize, dim: usize },
    /// A weight was zero or negative.
    NonPositiveWeight(Vec<usize>),
    /// Matrix is not self-adjoint with respect to the supplied inner product.
    NotSelfAdjoint { deviation: f64 },
    /// A vertex (or simplex) of degree zero where a positive degree is required.
    ZeroDegree(usize),
    /// Exhaustive search would exceed the configured budget; no heuristic fallback.
    BudgetExceeded { what: &'static str, size: usize, budget: usize },
    /// The quantity has no admissible candidate.
    Undefined(&'static str),
    /// `t * max|f|` too large for the exponential weights of the Witten deformation.
    WittenOverflow { exponent: f64 },
    /// A documented precondition of the operation does not hold.
    Precondition(String),
    /// Discrete Morse rule violation between two simplices.
    MorseViolation { simplex: Vec<usize>, other: Vec<usize>, rule: &'static str },
    /// Gradient paths revisit a simplex.
    GradientCycle(Vec<usize>),
    /// Connection between two Floer objects of the same index.
    SameIndexConnection { from: String, to: String },
    /// A connection kind not covered by the orbit boundary formulas.
    UnsupportedConnection { from: String, to: String },
    /// The boundary operator does not square to zero.
    BoundaryNotNilpotent { degree: usize },
    /// An object name was not found.
    UnknownObject(String),
    /// A requested cancellation pair is not connected by exactly one flow line.
    NotUniquelyConnected { upper: String, lower: String },
    /// Iterative solver ran out of restarts.
    NoConvergence(&'static str),
    /// Graph is disconnected.
    Disconnected { components: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedSimplex(v) => write!(f, "malformed simplex {v:?}"),
            Error::NotInComplex(v) => write!(f, "simplex {v:?} is not in the complex"),
            Error::LevelOutOfRange { level, dim } => {
                write!(f, "level {level} out of range for complex of dimension {dim}")
            }
            Error::NonPositiveWeight(v) => write!(f, "non-positive weight on {v:?}"),
            Error::NotSelfAdjoint { deviation } => {
                write!(f, "operator not self-adjoint (relative deviation {deviation:e})")
            }
            Error::ZeroDegree(v) => write!(f, "element {v} has degree zero"),
            Error::BudgetExceeded { what, size, budget } => {
                write!(f, "{what}: size {size} exceeds budget {budget}")
            }
            Error::Undefined(what) => write!(f, "{what} is undefined"),
            Error::WittenOverflow { exponent } => {
                write!(f, "t*max|f| = {exponent} exceeds 300; rescale f or t")
            }
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::MorseViolation { simplex, other, rule } => {
                write!(f, "not a Morse function at {simplex:?} / {other:?}: {rule}")
            }
            Error::GradientCycle(v) => write!(f, "gradient path revisits {v:?}"),
            Error::SameIndexConnection { from, to } => {
                write!(f, "connection {from} -> {to} joins objects of the same index")
            }
            Error::UnsupportedConnection { from, to } => {
                write!(f, "connection {from} -> {to} is not an admissible boundary term")
            }
            Error::BoundaryNotNilpotent { degree } => {
                write!(f, "boundary does not square to zero in degree {degree}")
            }
            Error::UnknownObject(name) => write!(f, "unknown object {name}"),
            Error::NotUniquelyConnected { upper, lower } => {
                write!(f, "{upper} and {lower} are not joined by a unique flow line")
            }
            Error::NoConvergence(what) => write!(f, "{what} did not converge"),
            Error::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
