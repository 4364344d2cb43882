//! Crate-wide error type.

use crate::halfexp::HalfExp;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A window with `hi < lo`, or an intersection that came out empty.
    #[error("empty series window: [{lo}, {hi}]")]
    EmptyWindow { lo: HalfExp, hi: HalfExp },

    /// A requested window cannot be served by the computed one.
    #[error("window [{want_lo}, {want_hi}] not covered by computed validity [{have_lo}, {have_hi}]")]
    WindowTooSmall {
        want_lo: HalfExp,
        want_hi: HalfExp,
        have_lo: HalfExp,
        have_hi: HalfExp,
    },

    /// Restricting a series would silently drop a nonzero coefficient.
    #[error("nonzero coefficient at {at} below requested lower bound {lo}")]
    NonzeroBelowWindow { at: HalfExp, lo: HalfExp },

    #[error("series is not invertible (zero within its window)")]
    NonInvertible,

    #[error("q-series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("q-exponent offsets differ: {0}/24 vs {1}/24")]
    ShiftMismatch(i64, i64),

    #[error("non-unit factor (1 - p^0 q^0) in Euler product")]
    NonUnitFactor,

    /// A factor whose expansion has unbounded negative p-exponents at q^0.
    #[error("factor (1 - p^{pexp} q^0)^{exponent} does not terminate within a window")]
    NonTerminatingFactor { pexp: HalfExp, exponent: i64 },

    #[error("energy cutoff {cutoff} too small (need at least {need})")]
    CutoffTooSmall { cutoff: i64, need: i64 },

    #[error("operation only defined on charge-zero states (charge {0})")]
    NonzeroCharge(i64),

    #[error("a-exponent {0} outside the fixed window [-{1}, {1}]")]
    AWindowExceeded(i64, i64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
