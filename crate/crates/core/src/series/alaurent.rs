//! Bounded Laurent windows in a formal parameter `a`.

use std::collections::BTreeMap;

/// A finite collection of `a`-graded components `sum_r t_r a^r`.
///
/// This is a plain container; the arithmetic lives at the use sites
/// (triple-product builders, trace assembly) because the component type
/// varies. Components compare and combine per `a`-exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ALaurent<T> {
    terms: BTreeMap<i64, T>,
}

impl<T> ALaurent<T> {
    pub fn new() -> Self {
        ALaurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, r: i64, t: T) {
        self.terms.insert(r, t);
    }

    pub fn get(&self, r: i64) -> Option<&T> {
        self.terms.get(&r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(&r, t)| (r, t))
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<U>(&self, mut f: impl FnMut(i64, &T) -> U) -> ALaurent<U> {
        ALaurent {
            terms: self.terms.iter().map(|(&r, t)| (r, f(r, t))).collect(),
        }
    }

    /// Keep only exponents within `[-bound, bound]`.
    pub fn restrict_window(&self, bound: i64) -> ALaurent<T>
    where
        T: Clone,
    {
        ALaurent {
            terms: self
                .terms
                .iter()
                .filter(|(&r, _)| -bound <= r && r <= bound)
                .map(|(&r, t)| (r, t.clone()))
                .collect(),
        }
    }
}

impl<T> Default for ALaurent<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> FromIterator<(i64, T)> for ALaurent<T> {
    fn from_iter<I: IntoIterator<Item = (i64, T)>>(iter: I) -> Self {
        ALaurent {
            terms: iter.into_iter().collect(),
        }
    }
}
