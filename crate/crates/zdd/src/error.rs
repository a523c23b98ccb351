use crate::node::Var;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZddError {
    #[error("variable {var} is outside the universe 1..={num_vars}")]
    VarOutOfRange { var: Var, num_vars: u32 },

    #[error("child variable {child} does not follow parent variable {var}")]
    OrderViolation { var: Var, child: Var },

    #[error("node handle {0} does not exist in this engine")]
    InvalidNodeRef(u32),

    #[error("family belongs to a different engine")]
    ForeignFamily,

    #[error("choose requires a family of singletons")]
    NotSingletons,

    #[error("variable {0} appears in more than one rename pair")]
    OverlappingPairs(Var),

    #[error("rename pair ({0}, {0}) is degenerate")]
    DegeneratePair(Var),

    #[error("variable permutation is not a bijection on 1..={0}")]
    InvalidPermutation(u32),
}

pub type Result<T> = std::result::Result<T, ZddError>;
