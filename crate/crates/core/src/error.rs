use thiserror::Error;

/// Errors raised while building or analysing a group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("group is not nilpotent (lower central series stops at order {stalled_at})")]
    NotNilpotent { stalled_at: usize },

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group is not a p-group")]
    NotPGroup,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("homomorphism oracle would visit {candidates} candidate maps (cap {cap})")]
    OracleCapExceeded { candidates: u128, cap: u128 },

    #[error("automorphism enumeration exceeded the cap of {cap} (found {attained} before stopping)")]
    EnumerationCapExceeded { cap: usize, attained: usize },

    #[error("time budget of {budget_ms} ms exhausted")]
    Timeout { budget_ms: u64 },
}

impl Error {
    /// Cap and timeout failures are resource limits, not bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. }
                | Error::OracleCapExceeded { .. }
                | Error::EnumerationCapExceeded { .. }
                | Error::Timeout { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
