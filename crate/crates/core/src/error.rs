use thiserror::Error;

/// Errors surfaced by the symbolic engine and the module analyses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("elements over different Cartan data (ranks {0} and {1})")]
    MixedCartan(usize, usize),

    #[error("element is not homogeneous; roots found: {0:?}")]
    Inhomogeneous(Vec<Vec<i64>>),

    #[error("element is not in the centralizer U_0")]
    NotInU0,

    #[error("operation undefined on the zero element")]
    ZeroElement,

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("evaluation point is a pole of the rational function")]
    Pole,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("mixed scalar flavors (exact vs numeric)")]
    FlavorMismatch,

    #[error("exact solver requires lambda of the form ±q^a; got {0}")]
    NotRepresentable(String),

    #[error("module is reducible; equivalence testing is defined for irreducible modules only")]
    ReducibleInput,

    #[error("subset is not strongly orthogonal: indices {0} and {1} are adjacent")]
    NotStronglyOrthogonal(usize, usize),

    #[error("index {0} must {1} the subset S")]
    SubsetMembership(usize, &'static str),

    #[error("star structure incompatible: {0}")]
    StarStructure(String),

    #[error("module parameters are not degenerate (mu != 0)")]
    NotDegenerate,

    #[error("not classifiable: {0}")]
    Unclassifiable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
