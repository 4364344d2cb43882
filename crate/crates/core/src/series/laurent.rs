//! Finite Laurent polynomials in `p^(1/2)`.

use crate::halfexp::HalfExp;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent polynomial in `p^(1/2)` with exact coefficients.
///
/// Keys of the internal map are twice-exponents; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<C: Scalar> {
    terms: BTreeMap<i64, C>,
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(HalfExp::ZERO, C::one())
    }

    pub fn monomial(e: HalfExp, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.twice(), c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (HalfExp, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: HalfExp, c: C) {
        if c.is_zero() {
            return;
        }
        let k = e.twice();
        let cur = self.terms.remove(&k);
        let s = match cur {
            Some(x) => x + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(k, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest exponent with a nonzero coefficient, if any.
    pub fn ord(&self) -> Option<HalfExp> {
        self.terms.keys().next().map(|&k| HalfExp::from_twice(k))
    }

    /// Largest exponent with a nonzero coefficient, if any.
    pub fn deg(&self) -> Option<HalfExp> {
        self.terms
            .keys()
            .next_back()
            .map(|&k| HalfExp::from_twice(k))
    }

    pub fn coeff(&self, e: HalfExp) -> C {
        self.terms.get(&e.twice()).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfExp, &C)> {
        self.terms
            .iter()
            .map(|(&k, c)| (HalfExp::from_twice(k), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in other.iter() {
            r.add_term(e, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in other.iter() {
            r.add_term(e, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                r.add_term(HalfExp::from_twice(ka + kb), ca.clone() * cb.clone());
            }
        }
        r
    }

    pub fn mul_monomial(&self, e: HalfExp, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, x)| (k + e.twice(), x.clone() * c.clone()))
                .collect(),
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

    /// Exact division, `None` if `other` does not divide `self`.
    pub fn try_div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dk = *other.terms.keys().next_back().unwrap();
        let dc = other.terms[&dk].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(&rk) = rem.terms.keys().next_back() {
            if rk - dk < *self.terms.keys().next().unwrap() - *other.terms.keys().next().unwrap()
            {
                // quotient exponent below what an exact quotient could contain
                return None;
            }
            let rc = rem.terms[&rk].clone();
            let qe = HalfExp::from_twice(rk - dk);
            let qc = rc / dc.clone();
            quot.add_term(qe, qc.clone());
            let piece = other.mul_monomial(qe, &qc);
            rem = rem.sub(&piece);
        }
        Some(quot)
    }

    /// `1 - p^i` for integer `i != 0` (as a polynomial; `i` may be negative).
    pub fn one_minus_p_pow(i: i64) -> Self {
        let mut p = Self::one();
        p.add_term(HalfExp::int(i), -C::one());
        p
    }

    /// Substitute `p -> p^{-1}` (negate all exponents).
    pub fn substitute_p_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
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
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat};

    fn p(i: i64) -> LaurentPoly<Rat> {
        LaurentPoly::monomial(HalfExp::int(i), rat_int(1))
    }

    #[test]
    fn mul_and_div_round_trip() {
        // (1 + p)(1 - p) = 1 - p^2
        let a = LaurentPoly::one().add(&p(1));
        let b = LaurentPoly::one().sub(&p(1));
        let prod = a.mul(&b);
        assert_eq!(prod, LaurentPoly::one().sub(&p(2)));
        assert_eq!(prod.try_div_exact(&a), Some(b.clone()));
        assert_eq!(prod.try_div_exact(&b), Some(a.clone()));
        // 1 - p^2 is not divisible by 1 - p^3
        assert_eq!(prod.try_div_exact(&LaurentPoly::one_minus_p_pow(3)), None);
    }

    #[test]
    fn div_with_laurent_exponents() {
        // p^(-1/2) * (1 - p) divided by (1 - p)
        let m = LaurentPoly::monomial(HalfExp::from_twice(-1), rat_int(1));
        let a = m.mul(&LaurentPoly::one_minus_p_pow(1));
        assert_eq!(a.try_div_exact(&LaurentPoly::one_minus_p_pow(1)), Some(m));
    }
}
