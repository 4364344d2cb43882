//! Charged fermionic basis states on the half-integer lattice.

use crate::error::Error;
use crate::partitions::Partition;
use std::collections::BTreeSet;
use std::fmt;

/// A semi-infinite wedge basis state, stored by its finite deviation from
/// the vacuum: the positive modes present (`particles`) and the negative
/// modes absent (`holes`). Modes are half-integers kept as twice-values
/// (odd integers).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MayaState {
    particles: BTreeSet<i64>,
    holes: BTreeSet<i64>,
}

impl MayaState {
    pub fn vacuum() -> Self {
        MayaState::default()
    }

    /// `v_λ`: the state with modes `λ_i - i + 1/2`.
    pub fn from_partition(lam: &Partition) -> Self {
        let ell = lam.len();
        let mut particles = BTreeSet::new();
        let mut head_negative = BTreeSet::new();
        for i in 1..=ell {
            let m2 = 2 * lam.part(i) as i64 - 2 * i as i64 + 1;
            if m2 > 0 {
                particles.insert(m2);
            } else {
                head_negative.insert(m2);
            }
        }
        // holes are the negative slots -1, -3, ..., -(2ℓ-1) the head does
        // not occupy; below that the sea is full
        let mut holes = BTreeSet::new();
        for j in 1..=ell as i64 {
            let slot = -(2 * j - 1);
            if !head_negative.contains(&slot) {
                holes.insert(slot);
            }
        }
        MayaState { particles, holes }
    }

    /// Inverse of [`from_partition`]; requires charge zero.
    pub fn to_partition(&self) -> Result<Partition, Error> {
        if self.charge() != 0 {
            return Err(Error::NonzeroCharge(self.charge()));
        }
        // read off modes in decreasing order until they settle to -i+1/2
        let mut parts = Vec::new();
        let mut modes: Vec<i64> = self.particles.iter().rev().copied().collect();
        let deepest = self.holes.iter().next().copied().unwrap_or(-1);
        let mut m2 = -1;
        while m2 >= deepest {
            if !self.holes.contains(&m2) {
                modes.push(m2);
            }
            m2 -= 2;
        }
        for (i, m2) in modes.iter().enumerate() {
            let part = (m2 + 2 * (i as i64 + 1) - 1) / 2;
            if part > 0 {
                parts.push(part as u32);
            }
        }
        Partition::new(parts)
    }

    pub fn charge(&self) -> i64 {
        self.particles.len() as i64 - self.holes.len() as i64
    }

    /// Twice the energy `Σ_{particles} k + Σ_{holes} |k|`.
    pub fn energy_twice(&self) -> i64 {
        let p: i64 = self.particles.iter().sum();
        let h: i64 = self.holes.iter().sum();
        p - h
    }

    pub fn occupied(&self, m2: i64) -> bool {
        debug_assert!(m2 % 2 != 0, "modes are half-integers");
        if m2 > 0 {
            self.particles.contains(&m2)
        } else {
            !self.holes.contains(&m2)
        }
    }

    /// Number of occupied modes strictly above `m2` (the wedge position).
    pub fn count_above(&self, m2: i64) -> usize {
        use std::ops::Bound::*;
        if m2 >= -1 {
            self.particles.range((Excluded(m2), Unbounded)).count()
        } else {
            // all particles, plus occupied negative slots in (m2, 0)
            let slots = ((-m2 - 1) / 2) as usize;
            let holes_above = self.holes.range((Excluded(m2), Unbounded)).count();
            self.particles.len() + slots - holes_above
        }
    }

    /// `ψ_{m2}`-style insertion: `None` if occupied, else the new state
    /// and the sign `(-1)^{position}`.
    pub fn with_inserted(&self, m2: i64) -> Option<(MayaState, i8)> {
        if self.occupied(m2) {
            return None;
        }
        let mut s = self.clone();
        if m2 > 0 {
            s.particles.insert(m2);
        } else {
            s.holes.remove(&m2);
        }
        let sign = if self.count_above(m2) % 2 == 0 { 1 } else { -1 };
        Some((s, sign))
    }

    /// `ψ*_{m2}`-style removal: `None` if vacant.
    pub fn with_removed(&self, m2: i64) -> Option<(MayaState, i8)> {
        if !self.occupied(m2) {
            return None;
        }
        let mut s = self.clone();
        if m2 > 0 {
            s.particles.remove(&m2);
        } else {
            s.holes.insert(m2);
        }
        let sign = if self.count_above(m2) % 2 == 0 { 1 } else { -1 };
        Some((s, sign))
    }

    /// The lowest hole, if any (twice-value).
    pub fn deepest_hole(&self) -> Option<i64> {
        self.holes.iter().next().copied()
    }

    /// Modes that can be removed with a bounded result: all particles and
    /// the occupied negative slots down to `floor2`.
    pub fn occupied_down_to(&self, floor2: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self.particles.iter().rev().copied().collect();
        let mut m2 = -1;
        while m2 >= floor2 {
            if !self.holes.contains(&m2) {
                out.push(m2);
            }
            m2 -= 2;
        }
        out
    }
}

impl fmt::Display for MayaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_partition() {
            Ok(p) => write!(f, "v[{p}]"),
            Err(_) => write!(
                f,
                "maya(p:{:?}, h:{:?})",
                self.particles, self.holes
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_up_to;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn vacuum_and_single_box() {
        let v = MayaState::from_partition(&Partition::empty());
        assert_eq!(v, MayaState::vacuum());
        assert_eq!(v.charge(), 0);
        assert_eq!(v.energy_twice(), 0);
        // (1): particle at 1/2, hole at -1/2
        let s = MayaState::from_partition(&pt("1"));
        assert!(s.occupied(1));
        assert!(!s.occupied(-1));
        assert_eq!(s.energy_twice(), 2);
    }

    #[test]
    fn partition_round_trip() {
        for lam in partitions_up_to(8) {
            let s = MayaState::from_partition(&lam);
            assert_eq!(s.charge(), 0, "λ = {lam}");
            assert_eq!(s.energy_twice(), 2 * lam.size() as i64, "λ = {lam}");
            assert_eq!(s.to_partition().unwrap(), lam);
        }
    }

    #[test]
    fn insertion_signs_track_positions() {
        // vacuum: occupied modes are -1/2 > -3/2 > ...; inserting 1/2
        // lands at position 0
        let v = MayaState::vacuum();
        let (s, sign) = v.with_inserted(1).unwrap();
        assert_eq!(sign, 1);
        // now remove -1/2 from that state: position of -1/2 is 1
        let (t, sign2) = s.with_removed(-1).unwrap();
        assert_eq!(sign2, -1);
        assert_eq!(t.to_partition().unwrap(), pt("1"));
        // occupied insertion fails
        assert!(v.with_inserted(-1).is_none());
        assert!(v.with_removed(1).is_none());
    }

    #[test]
    fn count_above_deep_modes() {
        let s = MayaState::from_partition(&pt("2,2"));
        // modes: 3/2, 1/2, -5/2, -7/2, ... (holes at -1/2, -3/2)
        assert_eq!(s.count_above(3), 0);
        assert_eq!(s.count_above(1), 1);
        assert_eq!(s.count_above(-1), 2);
        assert_eq!(s.count_above(-5), 2);
        assert_eq!(s.count_above(-7), 3);
    }
}
