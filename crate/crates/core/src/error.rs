use thiserror::Error;

/// Errors raised by the word, code, automaton and group routines.
///
/// Window errors are never swallowed: callers either grow the factor-set
/// depth (see [`crate::factors::with_growing_depth`]) or surface them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty word not allowed here")]
    EmptyWord,
    #[error("window too small: need depth {needed}, factor set has depth {depth}")]
    WindowTooSmall { needed: usize, depth: usize },
    #[error("factor set did not stabilize below prefix length {cap}")]
    NotStabilized { cap: usize },
    #[error("window exhausted at depth {depth}: {reason}")]
    WindowExhausted { depth: usize, reason: String },
    #[error("word {0} is not in the factor set")]
    NotInFactorSet(String),
    #[error("not a prefix code")]
    NotPrefixCode,
    #[error("not a bifix code")]
    NotBifixCode,
    #[error("code is not F-maximal: {0}")]
    NotMaximal(String),
    #[error("degree {0} is too small for this operation")]
    DegreeTooSmall(usize),
    #[error("inadmissible kernel: {0}")]
    InadmissibleKernel(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("distribution sums to {0} on the code, expected 1")]
    NotProbabilityOne(String),
    #[error("automaton is not trim")]
    NotTrim,
    #[error("transition conflict on state class {class} letter {letter}")]
    TransitionConflict { class: usize, letter: char },
    #[error("graph is not folded")]
    Unfolded,
    #[error("element count exceeds cap {0}")]
    CapExceeded(usize),
    #[error("rank-{rank} elements of phi(F) lie in {classes} distinct D-classes")]
    MultipleDClasses { rank: usize, classes: usize },
    #[error("word {0} does not act as a permutation on the image")]
    NotPermutation(String),
    #[error("permutation group is not transitive")]
    NotTransitive,
    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("search cap exceeded: {0}")]
    SearchCap(String),
}

impl Error {
    /// Short machine-friendly name used on the CLI's stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::InvalidAlphabet(_) => "InvalidAlphabet",
            Error::InvalidGenerator(_) => "InvalidGenerator",
            Error::Parse(_) => "Parse",
            Error::EmptyWord => "EmptyWord",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::WindowExhausted { .. } => "WindowExhausted",
            Error::NotInFactorSet(_) => "NotInFactorSet",
            Error::NotPrefixCode => "NotPrefixCode",
            Error::NotBifixCode => "NotBifixCode",
            Error::NotMaximal(_) => "NotMaximal",
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::InadmissibleKernel(_) => "InadmissibleKernel",
            Error::Precondition(_) => "Precondition",
            Error::Verification(_) => "Verification",
            Error::NotPrimitive => "NotPrimitive",
            Error::NoConvergence(_) => "NoConvergence",
            Error::NotProbabilityOne(_) => "NotProbabilityOne",
            Error::NotTrim => "NotTrim",
            Error::TransitionConflict { .. } => "TransitionConflict",
            Error::Unfolded => "Unfolded",
            Error::CapExceeded(_) => "CapExceeded",
            Error::MultipleDClasses { .. } => "MultipleDClasses",
            Error::NotPermutation(_) => "NotPermutation",
            Error::NotTransitive => "NotTransitive",
            Error::GeneratorCount { .. } => "GeneratorCount",
            Error::SearchCap(_) => "SearchCap",
        }
    }

    /// True for errors that a larger factor-set depth may cure.
    pub fn is_window(&self) -> bool {
        matches!(
            self,
            Error::WindowTooSmall { .. } | Error::WindowExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
