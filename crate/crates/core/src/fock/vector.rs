//! Finite linear combinations of Maya basis states.

use crate::fock::coeff::FockCoeff;
use crate::fock::maya::MayaState;
use std::collections::BTreeMap;

/// `Σ c_S v_S` with [`FockCoeff`] coefficients; the basis is orthonormal.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockVector {
    terms: BTreeMap<MayaState, FockCoeff>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(state: MayaState) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(state, FockCoeff::one());
        FockVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MayaState, &FockCoeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, state: MayaState, coeff: FockCoeff) {
        if coeff.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&state) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(state, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.add_term(s.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &FockCoeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (s, x) in self.iter() {
            out.add_term(s.clone(), x.mul(c));
        }
        out
    }

    /// Inner product against a basis state (the basis is orthonormal).
    pub fn inner_basis(&self, state: &MayaState) -> FockCoeff {
        self.terms.get(state).cloned().unwrap_or_else(FockCoeff::zero)
    }

    /// Inner product `(self, other)` over the orthonormal basis.
    pub fn inner(&self, other: &Self) -> FockCoeff {
        let mut acc = FockCoeff::zero();
        for (s, c) in self.iter() {
            if let Some(d) = other.terms.get(s) {
                acc = acc.add(&c.mul(d));
            }
        }
        acc
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&MayaState, &FockCoeff) -> bool) {
        self.terms.retain(|s, c| keep(s, c));
    }

    pub fn max_energy_twice(&self) -> Option<i64> {
        self.terms.keys().map(|s| s.energy_twice()).max()
    }
}
