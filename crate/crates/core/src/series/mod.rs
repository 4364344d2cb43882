//! Exact truncated-series arithmetic.
//!
//! The ring lives in the variable `p` with exponents in `(1/2)Z`:
//!
//! * [`LaurentPoly`] — finite Laurent polynomials in `p^(1/2)`;
//! * [`PSeries`] — truncated Laurent series carrying an explicit validity
//!   window `[lo, hi]`: coefficients are exactly known for every exponent
//!   `<= hi`, and are declared zero below `lo`;
//! * [`RationalLaurent`] — exact quotients `numerator / prod (1 - p^i)`,
//!   compared by cross-multiplication and expanded only in the ascending
//!   direction;
//! * [`QSeries`] — power series in `q` truncated at a fixed order whose
//!   coefficients are [`PSeries`] (each with its own window);
//! * [`ShiftedQSeries`] — a [`QSeries`] together with a symbolic rational
//!   `q`-exponent offset in units of `1/24`, for the eta prefactor;
//! * [`ALaurent`] — a bounded Laurent window in a formal parameter `a`;
//! * [`products`] — the standard product builders (MacMahon, theta,
//!   Jacobi triple product) on top of the ring.

mod alaurent;
mod json;
mod laurent;
pub mod products;
mod pseries;
mod qseries;
mod rational;

pub use alaurent::ALaurent;
pub use json::{decode_qseries, encode_qseries, SeriesJson};
pub use laurent::LaurentPoly;
pub use pseries::{PSeries, Window};
pub use qseries::{QSeries, ShiftedQSeries};
pub use rational::RationalLaurent;
