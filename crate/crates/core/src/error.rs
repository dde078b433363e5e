use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),
    #[error("vector or polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("the module is zero")]
    ZeroModule,
    #[error("grade is infinite: the ideal annihilates nothing modulo itself (I*M = M)")]
    GradeInfinite,
    #[error("module is not relative Cohen-Macaulay with respect to {0}")]
    NotRelativeCm(Ideal),
    #[error("module is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no regular linear form found after {attempts} attempts")]
    SearchExhausted { attempts: usize },
    #[error("ideal generators must involve only the {0} variables")]
    MixedVariables(&'static str),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for rejections that follow from the mathematics of the input
    /// (as opposed to malformed input or engine failures).
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::ZeroModule
                | Error::GradeInfinite
                | Error::NotRelativeCm(_)
                | Error::NotCohenMacaulay
                | Error::Precondition(_)
                | Error::SearchExhausted { .. }
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

/// One of the two bigraded irrelevant ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    /// `P = (x_1, ..., x_m)`
    P,
    /// `Q = (y_1, ..., y_n)`
    Q,
}

impl core::fmt::Display for Ideal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Ideal::P => f.write_str("P"),
            Ideal::Q => f.write_str("Q"),
        }
    }
}
