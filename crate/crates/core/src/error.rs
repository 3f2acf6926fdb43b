use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty diagram")]
    Empty,

    #[error("arc label {label} occurs {count} times (expected 2)")]
    ArcMultiplicity { label: i64, count: usize },

    #[error("diagram is not connected")]
    Disconnected,

    #[error("diagram is not planar: {faces} faces for {crossings} crossings")]
    NonPlanar { crossings: usize, faces: usize },

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("orientation: {0}")]
    Orientation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exponents of mixed parity: {0:?}")]
    MixedParity(Vec<i64>),

    #[error("negative power of a polynomial that is not a unit monomial")]
    NonUnitInverse,

    /// A cross-check that can only fail on an implementation bug.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
