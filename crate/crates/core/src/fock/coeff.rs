//! The coefficient ring for Fock-space computations: Laurent polynomials
//! in the formal parameters `a`, `u`, `q` over rational forms in `p`.
//!
//! Everything stays exact: `p`-dependence is a [`RationalLaurent`] and is
//! only expanded onto a window at final comparisons.

use crate::halfexp::HalfExp;
use crate::{Rat, RationalLaurent};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent triple `(a, u, q)`.
pub type AuqKey = (i64, i64, i64);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockCoeff {
    terms: BTreeMap<AuqKey, RationalLaurent>,
}

impl FockCoeff {
    pub fn zero() -> Self {
        FockCoeff::default()
    }

    pub fn one() -> Self {
        Self::from_rational(RationalLaurent::one())
    }

    pub fn from_rational(r: RationalLaurent) -> Self {
        Self::monomial((0, 0, 0), r)
    }

    pub fn monomial(key: AuqKey, r: RationalLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(key, r);
        }
        FockCoeff { terms }
    }

    /// `c * p^e` as a plain scalar.
    pub fn p_monomial(e: HalfExp, c: Rat) -> Self {
        Self::from_rational(RationalLaurent::monomial(e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AuqKey, &RationalLaurent)> {
        self.terms.iter().map(|(&k, r)| (k, r))
    }

    pub fn add_term(&mut self, key: AuqKey, r: &RationalLaurent) {
        if r.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&key) {
            Some(old) => old.add(r),
            None => r.clone(),
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, r) in other.iter() {
            out.add_term(k, r);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FockCoeff {
            terms: self.terms.iter().map(|(&k, r)| (k, r.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ra) in self.iter() {
            for (kb, rb) in other.iter() {
                let key = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
                out.add_term(key, &ra.mul(rb));
            }
        }
        out
    }

    pub fn scale_rational(&self, r: &RationalLaurent) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        FockCoeff {
            terms: self.terms.iter().map(|(&k, x)| (k, x.mul(r))).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        self.scale_rational(&RationalLaurent::constant(c.clone()))
    }

    /// Shift every term by `a^da u^du q^dq`.
    pub fn shift(&self, da: i64, du: i64, dq: i64) -> Self {
        FockCoeff {
            terms: self
                .terms
                .iter()
                .map(|(&(a, u, q), r)| ((a + da, u + du, q + dq), r.clone()))
                .collect(),
        }
    }

    pub fn scale_sign(&self, sign: i8) -> Self {
        if sign >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// The component at a fixed `a`-power (still `u`,`q`-graded).
    pub fn a_component(&self, r: i64) -> FockCoeff {
        FockCoeff {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, _, _), _)| a == r)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Minimal `p`-order over every component (twice-exponent), `None`
    /// when zero. Used by the order-bound pruning.
    pub fn min_p_ord2(&self) -> Option<i64> {
        self.terms
            .values()
            .filter_map(|r| r.ord().map(|e| e.twice()))
            .min()
    }

    /// True when only the `(a,u,q) = (0,0,0)` component is present.
    pub fn is_plain(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|&k| k == (0, 0, 0))
    }

    pub fn plain_rational(&self) -> RationalLaurent {
        debug_assert!(self.is_plain());
        self.terms
            .get(&(0, 0, 0))
            .cloned()
            .unwrap_or_else(RationalLaurent::zero)
    }
}

impl One for FockCoeff {
    fn one() -> Self {
        FockCoeff::one()
    }
}

impl std::ops::Mul for FockCoeff {
    type Output = FockCoeff;
    fn mul(self, rhs: Self) -> Self {
        FockCoeff::mul(&self, &rhs)
    }
}

impl fmt::Display for FockCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, u, q), r) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{r}]")?;
            if a != 0 {
                write!(f, " a^{a}")?;
            }
            if u != 0 {
                write!(f, " u^{u}")?;
            }
            if q != 0 {
                write!(f, " q^{q}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use crate::series::LaurentPoly;

    #[test]
    fn ring_basics() {
        let a = FockCoeff::monomial((1, 0, 0), RationalLaurent::constant(rat_int(2)));
        let b = FockCoeff::monomial((-1, 0, 1), RationalLaurent::constant(rat_int(3)));
        let prod = a.mul(&b);
        assert_eq!(prod.iter().count(), 1);
        let (k, r) = prod.iter().next().unwrap();
        assert_eq!(k, (0, 0, 1));
        assert!(r.eq_cross(&RationalLaurent::constant(rat_int(6))));
        // cancellation normalizes away
        let z = a.sub(&a);
        assert!(z.is_zero());
    }

    #[test]
    fn min_ord_over_components() {
        let mut c = FockCoeff::zero();
        c.add_term(
            (0, 0, 0),
            &RationalLaurent::new(
                LaurentPoly::monomial(HalfExp::int_plus_half(0), rat_int(1)),
                &[1],
            ),
        );
        c.add_term(
            (1, 0, 0),
            &RationalLaurent::monomial(HalfExp::from_twice(-3), rat_int(1)),
        );
        assert_eq!(c.min_p_ord2(), Some(-3));
    }
}
