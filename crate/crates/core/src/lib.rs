//! Exact arithmetic for the topological vertex.
//!
//! The crate computes the topological vertex `V_{λμν}(p)` two independent
//! ways — by direct enumeration of 3D partitions with asymptotic legs
//! ([`partitions`]) and by the skew-Schur-function formula ([`schur`]) —
//! simulates the charge-zero fermionic Fock space with vertex operators
//! ([`fock`]), and verifies the trace identities, Bloch–Okounkov
//! correlators, and Donaldson–Thomas series built from them
//! ([`identities`], [`dt`]).
//!
//! All arithmetic is exact. Series coefficients are arbitrary-precision
//! rationals; exponents of `p` live in half-integer units ([`HalfExp`]);
//! every truncated series carries an explicit validity window and every
//! operation derives the exact window of its result. Quantities that the
//! theory produces as rational functions (geometric tails, vertex-operator
//! eigenvalues) are held in rational form ([`RationalLaurent`]) and only
//! expanded — always in the ascending direction — at final comparisons.
//!
//! The series ring is generic over its coefficient scalar (see
//! [`scalar::Scalar`]); the aliases below fix the exact-rational
//! instantiation used by everything else in the crate.

pub mod dt;
pub mod error;
pub mod fock;
pub mod halfexp;
pub mod identities;
pub mod partitions;
pub mod report;
pub mod scalar;
pub mod schur;
pub mod series;

pub use error::Error;
pub use halfexp::HalfExp;
pub use series::Window;

/// Exact rational coefficient scalar used throughout the crate.
pub type Rat = num::BigRational;

/// Truncated Laurent series in `p^(1/2)` with exact rational coefficients.
pub type PSeries = series::PSeries<Rat>;

/// Power series in `q`, truncated at a fixed order, with [`PSeries`] coefficients.
pub type QSeries = series::QSeries<Rat>;

/// Laurent polynomial in `p^(1/2)` with exact rational coefficients.
pub type LaurentPoly = series::LaurentPoly<Rat>;

/// Laurent polynomial over a product of factors `(1 - p^i)`.
pub type RationalLaurent = series::RationalLaurent<Rat>;

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Build the exact rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(num::BigInt::from(n), num::BigInt::from(d))
}

/// Build the exact rational integer `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(num::BigInt::from(n))
}
