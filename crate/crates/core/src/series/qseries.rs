//! Power series in `q` truncated at a fixed order, with `PSeries` coefficients.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::scalar::Scalar;
use crate::series::{PSeries, Window};
use std::fmt;

/// `sum_{d=0}^{order} c_d(p) q^d` with each `c_d` a windowed [`PSeries`].
///
/// Entries carry their own windows: products against factors with negative
/// `p`-powers deepen the valid range per `q`-order, and the window algebra
/// of [`PSeries`] tracks this exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<C: Scalar> {
    coeffs: Vec<PSeries<C>>,
}

impl<C: Scalar> QSeries<C> {
    pub fn new(coeffs: Vec<PSeries<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series has at least the q^0 entry");
        QSeries { coeffs }
    }

    pub fn zero(order: usize, window: Window) -> Self {
        QSeries {
            coeffs: vec![PSeries::zero(window); order + 1],
        }
    }

    pub fn one(order: usize, window: Window) -> Self {
        let mut s = Self::zero(order, window);
        s.coeffs[0] = PSeries::one(window);
        s
    }

    /// Build from a closed form for each `q`-coefficient.
    pub fn from_fn(
        order: usize,
        mut f: impl FnMut(usize) -> Result<PSeries<C>, Error>,
    ) -> Result<Self, Error> {
        let mut coeffs = Vec::with_capacity(order + 1);
        for d in 0..=order {
            coeffs.push(f(d)?);
        }
        Ok(QSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &PSeries<C> {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[PSeries<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Shared validity window: `[min lo_d, min hi_d]` over all entries.
    pub fn shared_window(&self) -> Window {
        let lo = self
            .coeffs
            .iter()
            .map(|c| c.lo())
            .min()
            .expect("nonempty");
        let hi = self
            .coeffs
            .iter()
            .map(|c| c.hi())
            .min()
            .expect("nonempty");
        Window::new(lo, hi.max(lo)).expect("shared window")
    }

    fn check_orders(&self, other: &Self) -> Result<(), Error> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_orders(other)?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_orders(other)?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Cauchy product at equal orders.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_orders(other)?;
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut acc: Option<PSeries<C>> = None;
            for i in 0..=d {
                let term = self.coeffs[i].mul(&other.coeffs[d - i]);
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            coeffs.push(acc.expect("d >= 0"));
        }
        Ok(QSeries { coeffs })
    }

    /// Newton inversion: requires the `q^0` coefficient to be invertible.
    pub fn invert(&self) -> Result<Self, Error> {
        let b0 = self.coeffs[0].invert()?;
        let n = self.order();
        let mut b = vec![b0.clone()];
        for d in 1..=n {
            let mut acc: Option<PSeries<C>> = None;
            for k in 1..=d {
                let term = self.coeffs[k].mul(&b[d - k]);
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            let s = acc.expect("d >= 1");
            b.push(b0.mul(&s).neg());
        }
        Ok(QSeries { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        self.mul(&other.invert()?)
    }

    /// Multiply every entry by a fixed `p`-series.
    pub fn scale_ps(&self, s: &PSeries<C>) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn scale_monomial(&self, e: HalfExp, c: &C) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul_monomial(e, c)).collect(),
        }
    }

    /// Multiply by `c * p^e * q^d` (shifts in `q`; entries beyond the order fall off).
    pub fn mul_q_monomial(&self, d: usize, e: HalfExp, c: &C) -> Self {
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for t in 0..=n {
            if t < d {
                // nothing known to sit below: the shifted series has zero there
                coeffs.push(PSeries::zero(self.coeffs[0].window().shift(e)));
            } else {
                coeffs.push(self.coeffs[t - d].mul_monomial(e, c));
            }
        }
        QSeries { coeffs }
    }

    /// The operator `p d/dp` applied per entry.
    pub fn p_ddp(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.p_ddp()).collect(),
        }
    }

    pub fn substitute_p_inverse(&self) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute_p_inverse())
                .collect(),
        }
    }

    /// Restrict every entry to the same window.
    pub fn restrict_all(&self, window: Window) -> Result<Self, Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.restrict(window))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs })
    }

    /// All coefficient disagreements up to `top` per `q`-power.
    pub fn mismatches_up_to(&self, other: &Self, top: HalfExp) -> Vec<(usize, HalfExp, C, C)> {
        let n = self.order().min(other.order());
        let mut out = Vec::new();
        for d in 0..=n {
            for (e, a, b) in self.coeffs[d].mismatches_up_to(&other.coeffs[d], top) {
                out.push((d, e, a, b));
            }
        }
        out
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "q^{d}: {c}")?;
        }
        Ok(())
    }
}

/// A [`QSeries`] with a symbolic prefactor `q^(shift/24)`.
///
/// The fractional exponent is never expanded; it only cancels against
/// other shifts (the eta function enters every identity in ratios where
/// the net shift returns to an integer, in fact to zero).
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedQSeries<C: Scalar> {
    pub shift24: i64,
    pub series: QSeries<C>,
}

impl<C: Scalar> ShiftedQSeries<C> {
    pub fn unshifted(series: QSeries<C>) -> Self {
        ShiftedQSeries { shift24: 0, series }
    }

    pub fn new(shift24: i64, series: QSeries<C>) -> Self {
        ShiftedQSeries { shift24, series }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        Ok(ShiftedQSeries {
            shift24: self.shift24 + other.shift24,
            series: self.series.mul(&other.series)?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(ShiftedQSeries {
            shift24: self.shift24 - other.shift24,
            series: self.series.div(&other.series)?,
        })
    }

    /// Equality requires the symbolic shifts to agree exactly.
    pub fn try_eq(&self, other: &Self) -> Result<bool, Error> {
        if self.shift24 != other.shift24 {
            return Err(Error::ShiftMismatch(self.shift24, other.shift24));
        }
        Ok(self.series == other.series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    type Q = QSeries<Rat>;

    fn w() -> Window {
        Window::ints(0, 4)
    }

    fn one_minus_q(order: usize) -> Q {
        let mut s = Q::one(order, w());
        s = s
            .sub(&Q::one(order, w()).mul_q_monomial(1, HalfExp::ZERO, &rat_int(1)))
            .unwrap();
        s
    }

    #[test]
    fn inverse_pair() {
        let a = one_minus_q(5);
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod, Q::one(5, w()));
        // 1/(1-q) = 1 + q + q^2 + ...
        for d in 0..=5 {
            assert_eq!(inv.coeff(d).coeff(HalfExp::ZERO), rat_int(1));
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = Q::one(3, w());
        let b = Q::one(4, w());
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(3, 4))));
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch(3, 4))));
    }

    #[test]
    fn shifted_cancellation() {
        let a = ShiftedQSeries::new(1, Q::one(2, w()));
        let b = ShiftedQSeries::new(1, Q::one(2, w()));
        let r = a.div(&b).unwrap();
        assert_eq!(r.shift24, 0);
        assert!(r.try_eq(&ShiftedQSeries::unshifted(Q::one(2, w()))).unwrap());
        let c = ShiftedQSeries::new(2, Q::one(2, w()));
        assert!(a.try_eq(&c).is_err());
    }
}
