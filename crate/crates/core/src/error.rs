use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Every variant is a property of the *input* (a degenerate configuration, a
/// value outside the field, a missing root); none of them indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("{0} is not a square in the field")]
    NotASquare(String),
    #[error("cannot parse scalar literal `{0}`")]
    BadLiteral(String),
    #[error("[0 : 0] is not a point")]
    ZeroPoint,
    #[error("singular coefficient matrix")]
    Singular,
    #[error("three of the four points coincide")]
    DegenerateQuadruple,
    #[error("the three points are not pairwise distinct")]
    DegenerateTriple,
    #[error("point at infinity not allowed here")]
    InfinitePoint,
    #[error("points that must be distinct coincide")]
    CoincidentPoints,
    #[error("configuration is not an involution")]
    NotAnInvolution,
    #[error("pairing relation is singular (beta^2 = alpha*gamma)")]
    DegenerateInvolution,
    #[error("pairs do not determine a unique pairing relation")]
    Underdetermined,
    #[error("involution is elliptic: no fixed points in this field")]
    Elliptic,
    #[error("the two pairs are not harmonic")]
    NotHarmonic,
    #[error("configurations must share exactly two pairs (found {0})")]
    SharedPairs(usize),
    #[error("configuration does not satisfy the arbre rectangle condition")]
    NotAnArbre,
    #[error("operation requires an ordered field (Q)")]
    UnorderedField,
    #[error("conic matrix is singular or not symmetric")]
    DegenerateConic,
    #[error("line meets the conic in points that are not rational")]
    NonRationalIntersection,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(&'static str),
    #[error("parameter gives 1 + t^2 = 0")]
    DegenerateParameter,
    #[error("point does not lie on the line")]
    NotOnLine,
    #[error("projection center lies on one of the lines")]
    CenterOnLine,
    #[error("hypothesis fails: {0}")]
    PreconditionViolated(&'static str),
    #[error("rule not applicable: {0}")]
    RuleInapplicable(&'static str),
    #[error("not a proportion: a*d != b*c or zero consequent")]
    NotAProportion,
}

impl Error {
    /// Stable short name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NotASquare(_) => "NotASquare",
            Error::BadLiteral(_) => "BadLiteral",
            Error::ZeroPoint => "ZeroPoint",
            Error::Singular => "Singular",
            Error::DegenerateQuadruple => "DegenerateQuadruple",
            Error::DegenerateTriple => "DegenerateTriple",
            Error::InfinitePoint => "InfinitePoint",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::NotAnInvolution => "NotAnInvolution",
            Error::DegenerateInvolution => "DegenerateInvolution",
            Error::Underdetermined => "Underdetermined",
            Error::Elliptic => "Elliptic",
            Error::NotHarmonic => "NotHarmonic",
            Error::SharedPairs(_) => "SharedPairs",
            Error::NotAnArbre => "NotAnArbre",
            Error::UnorderedField => "UnorderedField",
            Error::DegenerateConic => "DegenerateConic",
            Error::NonRationalIntersection => "NonRationalIntersection",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::DegenerateParameter => "DegenerateParameter",
            Error::NotOnLine => "NotOnLine",
            Error::CenterOnLine => "CenterOnLine",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::RuleInapplicable(_) => "RuleInapplicable",
            Error::NotAProportion => "NotAProportion",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
