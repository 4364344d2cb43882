//! Exact rational forms: Laurent polynomials over products of `(1 - p^i)`.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::scalar::Scalar;
use crate::series::{LaurentPoly, PSeries, Window};
use std::collections::BTreeMap;
use std::fmt;

/// `numerator / prod_i (1 - p^i)^{multiplicity(i)}` with `i >= 1`.
///
/// This is the carrier for everything the theory produces as a rational
/// function of `p`: geometric tails, principal specializations, operator
/// eigenvalues. Equality is decided by cross-multiplication, which is
/// exact and expansion-free; when a rational form is finally compared
/// against a truncated series it is expanded with the single canonical
/// convention `1/(1 - p^i) = sum_{k>=0} p^{ik}` (ascending).
#[derive(Debug, Clone)]
pub struct RationalLaurent<C: Scalar> {
    num: LaurentPoly<C>,
    den: BTreeMap<i64, u32>,
}

impl<C: Scalar> RationalLaurent<C> {
    pub fn zero() -> Self {
        RationalLaurent {
            num: LaurentPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly<C>) -> Self {
        RationalLaurent {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn monomial(e: HalfExp, c: C) -> Self {
        Self::from_poly(LaurentPoly::monomial(e, c))
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(HalfExp::ZERO, c)
    }

    /// `num / prod (1 - p^f)` for integer factors `f != 0`.
    ///
    /// Negative factors are normalized through
    /// `1/(1 - p^{-i}) = -p^i/(1 - p^i)`, keeping every stored factor
    /// positive.
    pub fn new(num: LaurentPoly<C>, factors: &[i64]) -> Self {
        let mut r = Self::from_poly(num);
        for &f in factors {
            r = r.div_factor(f);
        }
        r
    }

    /// Divide by `(1 - p^f)`, `f != 0` (negative `f` normalized).
    pub fn div_factor(&self, f: i64) -> Self {
        assert!(f != 0, "factor (1 - p^0) is zero");
        let mut r = self.clone();
        if f > 0 {
            *r.den.entry(f).or_insert(0) += 1;
        } else {
            let i = -f;
            r.num = r.num.mul_monomial(HalfExp::int(i), &(-C::one()));
            *r.den.entry(i).or_insert(0) += 1;
        }
        r.cancel();
        r
    }

    /// Multiply by `(1 - p^f)`, `f != 0`.
    pub fn mul_factor(&self, f: i64) -> Self {
        let mut r = self.clone();
        if f > 0 {
            match r.den.get_mut(&f) {
                Some(m) => {
                    *m -= 1;
                    if *m == 0 {
                        r.den.remove(&f);
                    }
                }
                None => r.num = r.num.mul(&LaurentPoly::one_minus_p_pow(f)),
            }
        } else {
            // (1 - p^{-i}) = -p^{-i} (1 - p^i)
            let i = -f;
            r.num = r.num.mul_monomial(HalfExp::int(-i), &(-C::one()));
            r = r.mul_factor(i);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.den.iter().map(|(&i, &m)| (i, m))
    }

    /// The denominator expanded to a Laurent polynomial.
    pub fn denominator_poly(&self) -> LaurentPoly<C> {
        let mut d = LaurentPoly::one();
        for (&i, &m) in &self.den {
            for _ in 0..m {
                d = d.mul(&LaurentPoly::one_minus_p_pow(i));
            }
        }
        d
    }

    /// Order of the ascending expansion (each `1/(1-p^i)` is a unit).
    pub fn ord(&self) -> Option<HalfExp> {
        self.num.ord()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<i64> = self.den.keys().copied().collect();
        for i in factors {
            while self.den.get(&i).copied().unwrap_or(0) > 0 {
                let f = LaurentPoly::one_minus_p_pow(i);
                match self.num.try_div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&i).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&i);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Numerator of `self` over the common denominator `max(den, other.den)`.
    fn num_over_common(&self, other: &Self) -> LaurentPoly<C> {
        let mut n = self.num.clone();
        for (&i, &m_other) in &other.den {
            let m_self = self.den.get(&i).copied().unwrap_or(0);
            if m_other > m_self {
                for _ in 0..(m_other - m_self) {
                    n = n.mul(&LaurentPoly::one_minus_p_pow(i));
                }
            }
        }
        n
    }

    pub fn add(&self, other: &Self) -> Self {
        let n1 = self.num_over_common(other);
        let n2 = other.num_over_common(self);
        let mut den = self.den.clone();
        for (&i, &m) in &other.den {
            let e = den.entry(i).or_insert(0);
            *e = (*e).max(m);
        }
        let mut r = RationalLaurent {
            num: n1.add(&n2),
            den,
        };
        r.cancel();
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalLaurent {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (&i, &m) in &other.den {
            *den.entry(i).or_insert(0) += m;
        }
        let mut r = RationalLaurent {
            num: self.num.mul(&other.num),
            den,
        };
        r.cancel();
        r
    }

    pub fn mul_monomial(&self, e: HalfExp, c: &C) -> Self {
        RationalLaurent {
            num: self.num.mul_monomial(e, c),
            den: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(HalfExp::ZERO, c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Exact equality by cross-multiplication.
    pub fn eq_cross(&self, other: &Self) -> bool {
        let lhs = self.num.mul(&other.denominator_poly());
        let rhs = other.num.mul(&self.denominator_poly());
        lhs == rhs
    }

    /// Ascending expansion onto a window.
    ///
    /// Errors if the expansion has a nonzero coefficient below the
    /// requested lower bound (nothing is silently dropped there).
    pub fn expand(&self, window: Window) -> Result<PSeries<C>, Error> {
        let Some(ord) = self.num.ord() else {
            return Ok(PSeries::zero(window));
        };
        if ord < window.lo() {
            return Err(Error::NonzeroBelowWindow {
                at: ord,
                lo: window.lo(),
            });
        }
        if ord > window.hi() {
            // entire expansion lies above the window top
            return Ok(PSeries::zero(window));
        }
        // Work on the tight window [ord, hi] so tops do not degrade, then
        // lower the bottom to the requested one (always sound).
        let base = Window::new(ord, window.hi())?;
        let mut s = PSeries::from_laurent(&self.num, base)?;
        let gwin = Window::new(HalfExp::ZERO, window.hi() - ord)?;
        for (&i, &m) in &self.den {
            let geo = PSeries::from_terms(
                (0..)
                    .map(|k| HalfExp::int(i * k))
                    .take_while(|&e| e <= gwin.hi())
                    .map(|e| (e, C::one())),
                gwin,
            )?;
            for _ in 0..m {
                s = s.mul(&geo);
            }
        }
        s.restrict(window)
    }

    /// Substitute `p -> p^{-1}` exactly:
    /// `1/(1 - p^{-i}) = -p^i/(1 - p^i)` keeps factors positive.
    pub fn substitute_p_inverse(&self) -> Self {
        let mut r = Self::from_poly(self.num.substitute_p_inverse());
        for (&i, &m) in &self.den {
            for _ in 0..m {
                r = r.div_factor(-i);
            }
        }
        r
    }
}

impl<C: Scalar> PartialEq for RationalLaurent<C> {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for RationalLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        for (&i, &m) in &self.den {
            if m == 1 {
                write!(f, "/(1-p^{i})")?;
            } else {
                write!(f, "/(1-p^{i})^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int, Rat};

    type R = RationalLaurent<Rat>;

    fn geom_half() -> R {
        // p^(1/2) / (1 - p)
        R::new(
            LaurentPoly::monomial(HalfExp::int_plus_half(0), rat_int(1)),
            &[1],
        )
    }

    #[test]
    fn expand_geometric_half() {
        let s = geom_half()
            .expand(Window::new(HalfExp::int(0), HalfExp::int(4)).unwrap())
            .unwrap();
        for k in 0..4 {
            assert_eq!(s.coeff(HalfExp::int_plus_half(k)), rat_int(1));
        }
        assert_eq!(s.coeff(HalfExp::int(2)), rat_int(0));
    }

    #[test]
    fn negative_factor_normalization() {
        // 1/((1-p)(1-p^{-1})) = -p/(1-p)^2
        let lhs = R::new(LaurentPoly::one(), &[1, -1]);
        let rhs = R::new(
            LaurentPoly::monomial(HalfExp::int(1), rat_int(-1)),
            &[1, 1],
        );
        assert!(lhs.eq_cross(&rhs));
    }

    #[test]
    fn factor_cancellation() {
        // (1 - p^2)/(1 - p) = 1 + p
        let a = R::new(LaurentPoly::one_minus_p_pow(2), &[1]);
        let b = R::from_poly(LaurentPoly::from_terms([
            (HalfExp::ZERO, rat_int(1)),
            (HalfExp::int(1), rat_int(1)),
        ]));
        assert!(a.eq_cross(&b));
        // cancellation happened structurally too
        assert_eq!(a.denominator_factors().count(), 0);
    }

    #[test]
    fn add_over_common_denominator() {
        // 1/(1-p) + p/(1-p)^2 = (1-p+p)/(1-p)^2 = 1/(1-p)^2
        let a = R::new(LaurentPoly::one(), &[1]);
        let b = R::new(LaurentPoly::monomial(HalfExp::int(1), rat_int(1)), &[1, 1]);
        let s = a.add(&b);
        let expect = R::new(LaurentPoly::one(), &[1, 1]);
        assert!(s.eq_cross(&expect));
    }

    #[test]
    fn expansion_matches_series_inversion() {
        // For r = (1 + p)/(1-p)(1-p^2): expand == numerator * invert(denominator)
        let r = R::new(
            LaurentPoly::from_terms([
                (HalfExp::ZERO, rat_int(1)),
                (HalfExp::int(1), rat_int(1)),
            ]),
            &[1, 2],
        );
        let w = Window::ints(0, 8);
        let via_expand = r.expand(w).unwrap();
        let den = PSeries::from_laurent(&r.denominator_poly(), w).unwrap();
        let num = PSeries::from_laurent(r.numerator(), w).unwrap();
        let via_invert = num.mul(&den.invert().unwrap());
        assert_eq!(via_expand, via_invert);
    }

    #[test]
    fn half_const() {
        // (p+1)/(2(p-1)) = -(1+p)/2 / (1-p); sanity: expansion starts -1/2 - p ...
        let r = R::new(
            LaurentPoly::from_terms([
                (HalfExp::ZERO, rat(-1, 2)),
                (HalfExp::int(1), rat(-1, 2)),
            ]),
            &[1],
        );
        let s = r.expand(Window::ints(0, 3)).unwrap();
        assert_eq!(s.coeff(HalfExp::ZERO), rat(-1, 2));
        assert_eq!(s.coeff(HalfExp::int(1)), rat_int(-1));
        assert_eq!(s.coeff(HalfExp::int(2)), rat_int(-1));
    }
}
