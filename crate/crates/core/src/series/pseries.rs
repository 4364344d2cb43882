//! Truncated Laurent series in `p^(1/2)` with explicit validity windows.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::scalar::Scalar;
use crate::series::LaurentPoly;
use std::collections::BTreeMap;
use std::fmt;

/// A validity window `[lo, hi]` in half-integer exponents, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    lo: HalfExp,
    hi: HalfExp,
}

impl Window {
    pub fn new(lo: HalfExp, hi: HalfExp) -> Result<Self, Error> {
        if hi < lo {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    /// Window of integer exponents `[lo, hi]`.
    pub fn ints(lo: i64, hi: i64) -> Self {
        Window::new(HalfExp::int(lo), HalfExp::int(hi)).expect("integer window")
    }

    pub fn lo(&self) -> HalfExp {
        self.lo
    }

    pub fn hi(&self) -> HalfExp {
        self.hi
    }

    pub fn contains(&self, e: HalfExp) -> bool {
        self.lo <= e && e <= self.hi
    }

    pub fn intersect(&self, other: &Window) -> Result<Window, Error> {
        Window::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn shift(&self, e: HalfExp) -> Window {
        Window {
            lo: self.lo + e,
            hi: self.hi + e,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A truncated Laurent series in `p^(1/2)`.
///
/// The window states what is known: coefficients are exact for every
/// exponent in `[lo, hi]` and are declared to vanish below `lo`, so the
/// full knowledge region is `(-inf, hi]`. Every operation derives the
/// exact window of its result from the windows of its inputs; nothing is
/// ever silently truncated inside a declared-valid range.
///
/// Equality compares the coefficient functions (including the declared
/// zeros below each lower bound) on the common knowledge region
/// `(-inf, min(hi, other.hi)]`.
#[derive(Debug, Clone)]
pub struct PSeries<C: Scalar> {
    /// Twice-exponent -> nonzero coefficient; keys within `[lo, hi]`.
    coeffs: BTreeMap<i64, C>,
    window: Window,
}

impl<C: Scalar> PSeries<C> {
    pub fn zero(window: Window) -> Self {
        PSeries {
            coeffs: BTreeMap::new(),
            window,
        }
    }

    pub fn one(window: Window) -> Self {
        Self::monomial(HalfExp::ZERO, C::one(), window)
            .expect("window must contain exponent 0 for the unit series")
    }

    pub fn constant(c: C, window: Window) -> Self {
        Self::monomial(HalfExp::ZERO, c, window)
            .expect("window must contain exponent 0 for a constant series")
    }

    pub fn monomial(e: HalfExp, c: C, window: Window) -> Result<Self, Error> {
        let mut s = Self::zero(window);
        if !c.is_zero() {
            if e < window.lo() {
                return Err(Error::NonzeroBelowWindow {
                    at: e,
                    lo: window.lo(),
                });
            }
            if e <= window.hi() {
                s.coeffs.insert(e.twice(), c);
            }
        }
        Ok(s)
    }

    /// View a Laurent polynomial on a window. Terms above `hi` are cut
    /// (the window says nothing about them); a term below `lo` is an error.
    pub fn from_laurent(poly: &LaurentPoly<C>, window: Window) -> Result<Self, Error> {
        let mut s = Self::zero(window);
        for (e, c) in poly.iter() {
            if e < window.lo() {
                return Err(Error::NonzeroBelowWindow {
                    at: e,
                    lo: window.lo(),
                });
            }
            if e <= window.hi() {
                s.coeffs.insert(e.twice(), c.clone());
            }
        }
        Ok(s)
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (HalfExp, C)>,
        window: Window,
    ) -> Result<Self, Error> {
        Self::from_laurent(&LaurentPoly::from_terms(terms), window)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn lo(&self) -> HalfExp {
        self.window.lo()
    }

    pub fn hi(&self) -> HalfExp {
        self.window.hi()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient, if any.
    pub fn ord(&self) -> Option<HalfExp> {
        self.coeffs.keys().next().map(|&k| HalfExp::from_twice(k))
    }

    /// Coefficient of `p^e`; exact for any `e <= hi`.
    pub fn coeff(&self, e: HalfExp) -> C {
        self.coeffs.get(&e.twice()).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfExp, &C)> {
        self.coeffs
            .iter()
            .map(|(&k, c)| (HalfExp::from_twice(k), c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn insert(&mut self, k: i64, c: C) {
        if !c.is_zero() {
            self.coeffs.insert(k, c);
        }
    }

    fn add_at(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let s = match self.coeffs.remove(&k) {
            Some(x) => x + c,
            None => c,
        };
        if !s.is_zero() {
            self.coeffs.insert(k, s);
        }
    }

    /// Sum; the result is valid on `[min lo, min hi]`.
    pub fn add(&self, other: &Self) -> Self {
        let window = Window {
            lo: self.lo().min(other.lo()),
            hi: self.hi().min(other.hi()),
        };
        let hi2 = window.hi().twice();
        let mut r = Self::zero(window);
        for (&k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if k <= hi2 {
                r.add_at(k, c.clone());
            }
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PSeries {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect(),
            window: self.window,
        }
    }

    /// Product; valid on `[lo_a + lo_b, min(hi_a + lo_b, hi_b + lo_a)]`.
    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lo() + other.lo();
        let hi = (self.hi() + other.lo()).min(other.hi() + self.lo());
        let window = Window { lo, hi };
        let hi2 = hi.twice();
        let mut r = Self::zero(window);
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                let k = ka + kb;
                if k <= hi2 {
                    r.add_at(k, ca.clone() * cb.clone());
                }
            }
        }
        r
    }

    /// Multiply by the monomial `c * p^e` (shifts the window).
    pub fn mul_monomial(&self, e: HalfExp, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.window.shift(e));
        }
        PSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, x)| (k + e.twice(), x.clone() * c.clone()))
                .collect(),
            window: self.window.shift(e),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_monomial(HalfExp::ZERO, c)
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            let win = Window {
                lo: self.lo().min(HalfExp::ZERO),
                hi: self.hi().max(HalfExp::ZERO),
            };
            return Self::one(win);
        }
        let mut r = self.clone();
        for _ in 1..n {
            r = r.mul(self);
        }
        r
    }

    /// Multiplicative inverse within the knowledge region.
    ///
    /// The lower bound is first tightened to the true order `m`; the
    /// result is valid on `[-m, hi - 2m]`. A series that is zero on its
    /// window is not invertible.
    pub fn invert(&self) -> Result<Self, Error> {
        let ord = self.ord().ok_or(Error::NonInvertible)?;
        let lead = self.coeff(ord);
        let width = (self.hi() - ord).twice(); // >= 0
        // Relative dense coefficients a[0..=width] of p^{-ord} * self.
        let mut a = vec![C::zero(); width as usize + 1];
        for (&k, c) in &self.coeffs {
            a[(k - ord.twice()) as usize] = c.clone();
        }
        let inv_lead = C::one() / lead;
        let mut b = vec![C::zero(); width as usize + 1];
        b[0] = inv_lead.clone();
        for k in 1..=width as usize {
            let mut acc = C::zero();
            for j in 1..=k {
                if !a[j].is_zero() && !b[k - j].is_zero() {
                    acc = acc + a[j].clone() * b[k - j].clone();
                }
            }
            b[k] = -(inv_lead.clone() * acc);
        }
        let window = Window {
            lo: -ord,
            hi: self.hi() - ord - ord,
        };
        let mut r = Self::zero(window);
        for (k, c) in b.into_iter().enumerate() {
            r.insert(-ord.twice() + k as i64, c);
        }
        Ok(r)
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.invert()?))
    }

    /// Restrict or re-declare the window.
    ///
    /// Raising the top beyond `hi` is an error (that range was never
    /// computed). Raising the bottom is allowed only when no nonzero
    /// coefficient would be dropped; lowering it is always sound (the
    /// series is already declared zero below `lo`).
    pub fn restrict(&self, window: Window) -> Result<Self, Error> {
        if window.hi() > self.hi() {
            return Err(Error::WindowTooSmall {
                want_lo: window.lo(),
                want_hi: window.hi(),
                have_lo: self.lo(),
                have_hi: self.hi(),
            });
        }
        if let Some((&k, _)) = self.coeffs.iter().next() {
            if k < window.lo().twice() {
                return Err(Error::NonzeroBelowWindow {
                    at: HalfExp::from_twice(k),
                    lo: window.lo(),
                });
            }
        }
        let hi2 = window.hi().twice();
        Ok(PSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| k <= hi2)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            window,
        })
    }

    /// The operator `p d/dp`: multiplies the coefficient of `p^e` by `e`.
    pub fn p_ddp(&self) -> Self {
        PSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(&k, c)| {
                    let factor = C::ratio(k, 2);
                    let v = c.clone() * factor;
                    if v.is_zero() {
                        None
                    } else {
                        Some((k, v))
                    }
                })
                .collect(),
            window: self.window,
        }
    }

    /// Substitute `p -> p^{-1}`, mirroring the window.
    pub fn substitute_p_inverse(&self) -> Self {
        PSeries {
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.clone())).collect(),
            window: Window {
                lo: -self.hi(),
                hi: -self.lo(),
            },
        }
    }

    /// All disagreements of the two coefficient functions for exponents
    /// up to `min(self.hi, other.hi, top)`.
    pub fn mismatches_up_to(&self, other: &Self, top: HalfExp) -> Vec<(HalfExp, C, C)> {
        let hi2 = self.hi().twice().min(other.hi().twice()).min(top.twice());
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|&k| k <= hi2)
            .collect();
        keys.into_iter()
            .filter_map(|k| {
                let e = HalfExp::from_twice(k);
                let a = self.coeff(e);
                let b = other.coeff(e);
                if a == b {
                    None
                } else {
                    Some((e, a, b))
                }
            })
            .collect()
    }

    /// True if every coefficient is an integer multiple of the unit.
    pub fn check<F: Fn(&C) -> bool>(&self, pred: F) -> bool {
        self.coeffs.values().all(|c| pred(c))
    }
}

impl<C: Scalar> PartialEq for PSeries<C> {
    /// Agreement of the coefficient functions on the common knowledge
    /// region `(-inf, min(hi, other.hi)]`, including the declared zeros
    /// below each lower bound.
    fn eq(&self, other: &Self) -> bool {
        let hi2 = self.hi().twice().min(other.hi().twice());
        let mut a = self.coeffs.range(..=hi2);
        let mut b = other.coeffs.range(..=hi2);
        loop {
            match (a.next(), b.next()) {
                (None, None) => return true,
                (Some((ka, ca)), Some((kb, cb))) => {
                    if ka != kb || ca != cb {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for PSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, c) in self.iter() {
                if first {
                    first = false;
                } else {
                    write!(f, " + ")?;
                }
                if e == HalfExp::ZERO {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*p^({e})")?;
                }
            }
        }
        write!(f, " + O(p^{})", self.hi() + HalfExp::from_twice(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    type S = PSeries<Rat>;

    fn w(lo: i64, hi: i64) -> Window {
        Window::ints(lo, hi)
    }

    fn series(terms: &[(i64, i64)], window: Window) -> S {
        S::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (HalfExp::int(e), rat_int(c))),
            window,
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        // (1 + p)(1 - p) = 1 - p^2 on [0, 2]
        let a = series(&[(0, 1), (1, 1)], w(0, 2));
        let b = series(&[(0, 1), (1, -1)], w(0, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.window(), w(0, 2));
        assert_eq!(prod, series(&[(0, 1), (2, -1)], w(0, 2)));
    }

    #[test]
    fn monomial_exponent_cancellation() {
        // p^(-1/2) * p^(1/2) = 1
        let a = S::monomial(HalfExp::from_twice(-1), rat_int(1), Window::new(
            HalfExp::from_twice(-1),
            HalfExp::from_twice(3),
        ).unwrap())
        .unwrap();
        let b = S::monomial(HalfExp::from_twice(1), rat_int(1), Window::new(
            HalfExp::from_twice(1),
            HalfExp::from_twice(5),
        ).unwrap())
        .unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(HalfExp::ZERO), rat_int(1));
        assert_eq!(prod.ord(), Some(HalfExp::ZERO));
    }

    #[test]
    fn invert_geometric() {
        // 1/(1 - p) = 1 + p + p^2 + ... up to the window top
        let a = series(&[(0, 1), (1, -1)], w(0, 5));
        let inv = a.invert().unwrap();
        assert_eq!(inv.window(), w(0, 5));
        for e in 0..=5 {
            assert_eq!(inv.coeff(HalfExp::int(e)), rat_int(1));
        }
        assert_eq!(a.mul(&inv), S::one(w(0, 5)));
    }

    #[test]
    fn invert_monomial() {
        let win = Window::new(HalfExp::from_twice(1), HalfExp::from_twice(1)).unwrap();
        let a = S::monomial(HalfExp::from_twice(1), rat_int(1), win).unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(inv.ord(), Some(HalfExp::from_twice(-1)));
        assert_eq!(inv.coeff(HalfExp::from_twice(-1)), rat_int(1));
    }

    #[test]
    fn invert_zero_fails() {
        let z = S::zero(w(0, 3));
        assert_eq!(z.invert(), Err(Error::NonInvertible));
    }

    #[test]
    fn window_rules() {
        assert!(Window::new(HalfExp::int(3), HalfExp::int(2)).is_err());
        let a = series(&[(2, 5)], w(0, 4));
        // raising the bottom past a nonzero coefficient fails
        assert!(a.restrict(w(3, 4)).is_err());
        // raising the top past computed validity fails
        assert!(a.restrict(w(0, 5)).is_err());
        // lowering the bottom and the top is fine
        let r = a.restrict(w(-2, 3)).unwrap();
        assert_eq!(r.coeff(HalfExp::int(2)), rat_int(5));
    }

    #[test]
    fn equality_is_truncation_aware() {
        // 1 + p on [0, 2] equals 1 + p + 0 p^3 on [0, 3] up to the smaller top
        let a = series(&[(0, 1), (1, 1)], w(0, 2));
        let b = series(&[(0, 1), (1, 1)], w(0, 3));
        assert_eq!(a, b);
        // but 1 + p^3 on [0,3] differs from p^3 on [2,3] at exponent 0
        let c = series(&[(0, 1), (3, 1)], w(0, 3));
        let d = series(&[(3, 1)], w(2, 3));
        assert_ne!(c, d);
    }

    #[test]
    fn p_ddp_multiplies_by_exponent() {
        let a = S::from_terms(
            [
                (HalfExp::int_plus_half(0), rat_int(2)), // 2 p^{1/2}
                (HalfExp::int(2), rat_int(3)),           // 3 p^2
            ],
            w(0, 3),
        )
        .unwrap();
        let d = a.p_ddp();
        assert_eq!(d.coeff(HalfExp::int_plus_half(0)), rat_int(1)); // 2 * 1/2
        assert_eq!(d.coeff(HalfExp::int(2)), rat_int(6));
    }
}
