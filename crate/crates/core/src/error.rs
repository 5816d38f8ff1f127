use thiserror::Error;

/// Errors raised while constructing or operating on rings, algebras and modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("generator `{name}` has non-positive degree {degree}")]
    NonPositiveDegree { name: String, degree: i32 },
    #[error("relation `{0}` is not a monomial in the ring generators")]
    NonMonomialRelation(String),
    #[error("relation list contains the unit monomial; the ring would be zero")]
    UnitRelation,
    #[error("invalid ground field: {0}")]
    InvalidField(String),
    #[error("elements belong to different rings")]
    MixedRings,
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("d(d{var}) is nonzero: {residue}")]
    CycleViolation { var: String, residue: String },
    #[error("grading violation for `{var}`: {detail}")]
    GradingViolation { var: String, detail: String },
    #[error("d{var} refers to `{uses}`, which is not declared before it")]
    ForwardReference { var: String, uses: String },
    #[error("structure matrix entry b({row},{col}) is not strictly above the diagonal")]
    TriangularityViolation { row: String, col: String },
    #[error("degree mismatch at `{label}`: {detail}")]
    DegreeMismatch { label: String, detail: String },
    #[error("differential squares to a nonzero map: component ({nu},{lambda}) = {residue}")]
    DifferentialSquareNonzero {
        nu: String,
        lambda: String,
        residue: String,
    },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element does not lie in the diagonal ideal")]
    NotInDiagonalIdeal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of the two differential blocks is nonzero")]
    CompositionNonzero,
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: undeclared name `{name}`")]
    UndeclaredName { line: usize, name: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::UndeclaredName { .. } | Error::AtLine { .. }) => e,
            other => Error::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }

    /// True for errors that reject a well-formed but mathematically invalid input.
    pub fn is_mathematical(&self) -> bool {
        match self {
            Error::Syntax { .. } | Error::UndeclaredName { .. } | Error::Usage(_) => false,
            Error::AtLine { source, .. } => source.is_mathematical(),
            _ => true,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
