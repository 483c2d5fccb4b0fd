//! Error type shared by every module in the crate.

/// Everything that can go wrong between reading a presentation and emitting
/// a report.  Variants carry just enough data for a caller to explain the
/// failure or pick an exit code; none of them are panics in disguise —
/// genuine internal invariant violations use `assert!`/`panic!` instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed presentation text.  `position` is a byte offset into the
    /// input, `expected` names what the parser was looking for there.
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    /// The same generator name appeared twice in the generator list.
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    /// A relator used a name that is not in the generator list.
    #[error("unknown generator `{0}` in relator")]
    UnknownGenerator(String),

    /// Coset enumeration needed more live cosets than the configured budget.
    /// This is *not* a proof that the group is infinite — a larger budget
    /// may still close the table.
    #[error("coset enumeration exceeded the budget of {0} live cosets; the group may be infinite or may need a larger budget")]
    BudgetExceeded(usize),

    /// The group is too large for the brute-force product-rule solver,
    /// whose system has order^3 equations in order^2 unknowns.
    #[error("group order {order} exceeds the solver cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    /// Attempted to compose two conjugation morphisms whose endpoints do
    /// not meet.
    #[error("morphisms are not composable: the first target differs from the second source")]
    NotComposable,

    /// A relator boundary walk failed to return to its base vertex.  The
    /// walk direction is chosen so that the accumulated conjugator equals
    /// the relator itself, which evaluates to the identity in any backend
    /// that satisfies its own relators — so this indicates a backend bug.
    #[error("boundary walk did not return to its base vertex")]
    WalkNotClosed,

    /// The two boundary matrices handed to the cohomology routine do not
    /// form a complex (dimension clash or nonzero composite).
    #[error("boundary matrices do not form a complex: {0}")]
    ComplexMismatch(String),

    /// A conjugacy class the requested operation cannot handle (reserved
    /// for backends whose classes may be infinite; the shipped backends
    /// only ever produce finite classes).
    #[error("unsupported conjugacy class: {0}")]
    UnsupportedClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;
