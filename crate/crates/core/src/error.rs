use thiserror::Error;

use crate::element::ElementId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    /// A user-supplied multiplication table is malformed. `row`/`col` locate
    /// the offending entry when there is one.
    #[error("bad table file{}: {message}", position(*.row, *.col))]
    BadTableFile {
        message: String,
        row: Option<usize>,
        col: Option<usize>,
    },

    #[error("syntax error at byte {offset}: expected one of {}", .expected.join(", "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("semantic error at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },

    #[error("group is not abelian")]
    NotAbelian,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("element {0} is not an involution")]
    NotInvolution(ElementId),

    #[error("involution {involution} is a square ({root}^2), so no inverse-closed transversal exists")]
    IsSquare { involution: ElementId, root: ElementId },

    #[error("group has an element of order 4 ({0})")]
    HasOrder4Element(ElementId),

    #[error("connection set contains the identity")]
    ContainsIdentity,

    #[error("set is not inverse-closed: {element} is present but its inverse is not")]
    NotInverseClosed { element: ElementId },

    #[error("transversal does not contain the identity")]
    MissingIdentity,

    #[error("generalized quaternion parameter n = {0} must be at least 2")]
    InvalidN(usize),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("transversal search exceeded the node budget of {0}")]
    BudgetExceeded(u64),

    #[error("decision procedures disagree: {0}")]
    Disagreement(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn position(row: Option<usize>, col: Option<usize>) -> String {
    match (row, col) {
        (Some(r), Some(c)) => format!(" at row {r}, column {c}"),
        (Some(r), None) => format!(" at row {r}"),
        _ => String::new(),
    }
}

impl Error {
    /// Stable machine-readable name used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::OrderBoundExceeded { .. } => "OrderBoundExceeded",
            Error::BadTableFile { .. } => "BadTableFile",
            Error::Syntax { .. } => "SyntaxError",
            Error::Semantic { .. } => "SemanticError",
            Error::NotAbelian => "NotAbelian",
            Error::NotNormal => "NotNormal",
            Error::NotSubgroup(_) => "NotSubgroup",
            Error::NotInvolution(_) => "NotInvolution",
            Error::IsSquare { .. } => "IsSquare",
            Error::HasOrder4Element(_) => "HasOrder4Element",
            Error::ContainsIdentity => "ContainsIdentity",
            Error::NotInverseClosed { .. } => "NotInverseClosed",
            Error::MissingIdentity => "MissingIdentity",
            Error::InvalidN(_) => "InvalidN",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Disagreement(_) => "Disagreement",
            Error::Internal(_) => "Internal",
            Error::Io(_) => "Io",
        }
    }
}
