//! 2D partitions and exact enumeration of 3D partitions with asymptotic legs.
//!
//! The enumeration here is the ground truth for the rest of the crate:
//! [`vertex_box_counting`] computes the topological vertex `V_{λμν}(p)`
//! directly from its definition as a weighted count of box piles, and the
//! Schur-function route is tested against it.

use crate::error::Error;
use crate::halfexp::HalfExp;
use crate::series::Window;
use crate::{PSeries, Rat};
use num::BigUint;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part, 1-based; zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ| = Σ λ_i`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `‖λ‖² = Σ λ_i²`.
    pub fn norm2(&self) -> u64 {
        self.parts.iter().map(|&p| (p as u64) * (p as u64)).sum()
    }

    /// Diagram membership: `(a, b) ∈ λ` iff `a < λ_{b+1}` (0-based cell).
    pub fn contains_cell(&self, a: u32, b: u32) -> bool {
        a < self.part(b as usize + 1)
    }

    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for c in 1..=cols as u32 {
            out.push(self.parts.iter().filter(|&&p| p >= c).count() as u32);
        }
        Partition { parts: out }
    }

    /// Containment of diagrams: `η ⊆ λ`.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// All cells of the diagram as (row, col), 0-based, row-major.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 0..p {
                out.push((r as u32, c));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"3,1"`; `"-"` (or empty) denotes the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// `(size, norm2, length)` of a partition.
pub fn stats(p: &Partition) -> (u64, u64, usize) {
    (p.size(), p.norm2(), p.len())
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first,
/// `[1,...,1]` last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for next in (1..=hi).rev() {
            current.push(next);
            rec(remaining - next, next, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// All partitions of size at most `n`, by size then reverse-lex.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// The asymptotic legs `(λ, μ, ν)` of a 3D partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegTriple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

pub type Cell = (u32, u32, u32);

impl LegTriple {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Self {
        LegTriple { lambda, mu, nu }
    }

    pub fn empty() -> Self {
        LegTriple::new(Partition::empty(), Partition::empty(), Partition::empty())
    }

    pub fn total_size(&self) -> u64 {
        self.lambda.size() + self.mu.size() + self.nu.size()
    }

    /// Number of legs through a cell: the leg along `i` is
    /// `{(i,j,k) : (j,k) ∈ λ}`, along `j` is `{(i,j,k) : (k,i) ∈ μ}`,
    /// along `k` is `{(i,j,k) : (i,j) ∈ ν}`.
    pub fn legs_through(&self, c: Cell) -> u8 {
        let (i, j, k) = c;
        self.lambda.contains_cell(j, k) as u8
            + self.mu.contains_cell(k, i) as u8
            + self.nu.contains_cell(i, j) as u8
    }

    pub fn in_leg_union(&self, c: Cell) -> bool {
        self.legs_through(c) > 0
    }

    /// Cyclic rotation `(λ, μ, ν) -> (μ, ν, λ)`.
    pub fn rotated(&self) -> LegTriple {
        LegTriple::new(self.mu.clone(), self.nu.clone(), self.lambda.clone())
    }

    /// Reflection about the `i = j` plane: `(λ, μ, ν) -> (μ', λ', ν')`.
    pub fn reflected(&self) -> LegTriple {
        LegTriple::new(
            self.mu.conjugate(),
            self.lambda.conjugate(),
            self.nu.conjugate(),
        )
    }

    /// Largest part or length among the legs.
    pub fn max_extent(&self) -> u32 {
        [&self.lambda, &self.mu, &self.nu]
            .iter()
            .map(|p| p.part(1).max(p.len() as u32))
            .max()
            .unwrap_or(0)
    }

    /// Parse `"λ;μ;ν"`, e.g. `"3,1;2;-"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let pieces: Vec<&str> = s.split(';').collect();
        if pieces.len() != 3 {
            return Err(Error::InvalidPartition(format!(
                "leg triple needs exactly three ';'-separated partitions, got {s:?}"
            )));
        }
        Ok(LegTriple::new(
            pieces[0].parse()?,
            pieces[1].parse()?,
            pieces[2].parse()?,
        ))
    }
}

impl fmt::Display for LegTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.lambda, self.mu, self.nu)
    }
}

/// A 3D partition stored as its legs plus the finitely many boxes that sit
/// outside the leg union. Stability forces the leg union itself to be part
/// of every such pile, and each extra box has weight `ξ = +1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition3D {
    pub legs: LegTriple,
    pub extra: BTreeSet<Cell>,
}

impl Partition3D {
    pub fn minimal(legs: LegTriple) -> Self {
        Partition3D {
            legs,
            extra: BTreeSet::new(),
        }
    }

    pub fn new(legs: LegTriple, extra: BTreeSet<Cell>) -> Result<Self, Error> {
        let pi = Partition3D { legs, extra };
        for &c in &pi.extra {
            if pi.legs.in_leg_union(c) {
                return Err(Error::invalid(format!(
                    "extra box {c:?} lies inside the leg union"
                )));
            }
            for pred in predecessors(c) {
                if !pi.contains(pred) {
                    return Err(Error::invalid(format!(
                        "unstable: {c:?} lacks predecessor {pred:?}"
                    )));
                }
            }
        }
        Ok(pi)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.legs.in_leg_union(c) || self.extra.contains(&c)
    }
}

fn predecessors(c: Cell) -> impl Iterator<Item = Cell> {
    let (i, j, k) = c;
    [
        i.checked_sub(1).map(|i| (i, j, k)),
        j.checked_sub(1).map(|j| (i, j, k)),
        k.checked_sub(1).map(|k| (i, j, k)),
    ]
    .into_iter()
    .flatten()
}

/// Cells lying in at least two legs (with their leg counts) and the
/// renormalized volume of the minimal configuration:
/// `Σ_{cells in exactly 2 legs} (-1) + Σ_{cells in 3 legs} (-2)`.
pub fn minimal_config(legs: &LegTriple) -> (Vec<(Cell, u8)>, i64) {
    let e = legs.max_extent();
    let mut overlaps = Vec::new();
    let mut base = 0i64;
    for i in 0..e {
        for j in 0..e {
            for k in 0..e {
                let n = legs.legs_through((i, j, k));
                if n >= 2 {
                    overlaps.push(((i, j, k), n));
                    base += 1 - n as i64;
                }
            }
        }
    }
    (overlaps, base)
}

/// Renormalized volume `|π| = Σ ξ_π` of a finite-data 3D partition.
pub fn renormalized_volume(pi: &Partition3D) -> i64 {
    minimal_config(&pi.legs).1 + pi.extra.len() as i64
}

/// Exact counts of 3D partitions asymptotic to `legs`, by renormalized
/// volume, for all volumes up to `base_volume + budget`.
///
/// The search runs a DFS over stability-closed supersets of the leg union
/// inside a bounding box of side `budget + max_extent + 1`; candidate
/// cells are ordered by `(i+j+k, i, j)` and added monotonically, which
/// generates every configuration exactly once.
pub fn enumerate_asymptotic(legs: &LegTriple, budget: u32) -> Vec<(i64, BigUint)> {
    enumerate_with_box(legs, budget, budget + legs.max_extent() + 1)
}

/// As [`enumerate_asymptotic`], but re-runs with the bounding box enlarged
/// by one and checks the counts are unchanged.
pub fn enumerate_asymptotic_checked(legs: &LegTriple, budget: u32) -> Vec<(i64, BigUint)> {
    let b = budget + legs.max_extent() + 1;
    let counts = enumerate_with_box(legs, budget, b);
    let check = enumerate_with_box(legs, budget, b + 1);
    assert_eq!(
        counts, check,
        "bounding-box instability for legs {legs} at budget {budget}"
    );
    counts
}

fn enumerate_with_box(legs: &LegTriple, budget: u32, bound: u32) -> Vec<(i64, BigUint)> {
    let (_, base) = minimal_config(legs);
    // candidate cells outside the leg union, in canonical order
    let mut candidates: Vec<Cell> = Vec::new();
    for i in 0..bound {
        for j in 0..bound {
            for k in 0..bound {
                if !legs.in_leg_union((i, j, k)) {
                    candidates.push((i, j, k));
                }
            }
        }
    }
    candidates.sort_by_key(|&(i, j, k)| (i + j + k, i, j));
    let index: std::collections::HashMap<Cell, usize> = candidates
        .iter()
        .enumerate()
        .map(|(n, &c)| (c, n))
        .collect();

    let mut counts = vec![BigUint::ZERO; budget as usize + 1];
    let mut in_set = vec![false; candidates.len()];

    // every predecessor of a candidate is either in the leg union or an
    // earlier candidate, so stability is a lookup against `in_set`
    struct Ctx<'a> {
        candidates: &'a [Cell],
        index: &'a std::collections::HashMap<Cell, usize>,
        legs: &'a LegTriple,
        budget: u32,
    }

    fn addable(ctx: &Ctx, c: Cell, in_set: &[bool]) -> bool {
        predecessors(c).all(|p| {
            ctx.legs.in_leg_union(p) || ctx.index.get(&p).map(|&n| in_set[n]).unwrap_or(false)
        })
    }

    fn dfs(ctx: &Ctx, start: usize, depth: u32, in_set: &mut [bool], counts: &mut [BigUint]) {
        counts[depth as usize] += 1u32;
        if depth == ctx.budget {
            return;
        }
        for n in start..ctx.candidates.len() {
            if addable(ctx, ctx.candidates[n], in_set) {
                in_set[n] = true;
                dfs(ctx, n + 1, depth + 1, in_set, counts);
                in_set[n] = false;
            }
        }
    }

    let ctx = Ctx {
        candidates: &candidates,
        index: &index,
        legs,
        budget,
    };
    dfs(&ctx, 0, 0, &mut in_set, &mut counts);

    counts
        .into_iter()
        .enumerate()
        .map(|(extra, c)| (base + extra as i64, c))
        .collect()
}

/// The topological vertex `V_{λμν}(p) = Σ_π p^{|π|}` by direct box
/// counting, exact on `[base_volume, top]`.
///
/// Includes the bounding-box stability re-check on every call.
pub fn vertex_box_counting(legs: &LegTriple, top: HalfExp) -> Result<PSeries, Error> {
    let (_, base) = minimal_config(legs);
    if top < HalfExp::int(base) {
        return Err(Error::EmptyWindow {
            lo: HalfExp::int(base),
            hi: top,
        });
    }
    let budget = (top.floor() - base) as u32;
    let counts = enumerate_asymptotic_checked(legs, budget);
    let window = Window::new(HalfExp::int(base), top)?;
    PSeries::from_terms(
        counts
            .into_iter()
            .map(|(v, c)| (HalfExp::int(v), Rat::from_integer(num::BigInt::from(c)))),
        window,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::products;
    use crate::{rat_int, HalfExp};

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(pt("3,1").conjugate(), pt("2,1,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(pt("2,2").conjugate(), pt("2,2"));
    }

    #[test]
    fn conjugate_is_an_involution() {
        for p in partitions_up_to(7) {
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().size(), p.size());
        }
    }

    #[test]
    fn stats_examples() {
        assert_eq!(stats(&pt("2,1")), (3, 5, 2));
        assert_eq!(stats(&Partition::empty()), (0, 0, 0));
        assert_eq!(stats(&pt("4")), (4, 16, 1));
    }

    #[test]
    fn partitions_of_4_reverse_lex() {
        let got = partitions_of(4);
        let expect = vec![pt("4"), pt("3,1"), pt("2,2"), pt("2,1,1"), pt("1,1,1,1")];
        assert_eq!(got, expect);
    }

    #[test]
    fn partition_counts_match_euler_product() {
        let gf = products::partition_gf::<crate::Rat>(6, Window::ints(0, 0)).unwrap();
        for n in 0..=6u32 {
            let count = partitions_of(n).len() as i64;
            assert_eq!(gf.coeff(n as usize).coeff(HalfExp::ZERO), rat_int(count));
        }
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!("1,3".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert!(LegTriple::parse("1;2").is_err());
    }

    #[test]
    fn minimal_config_base_volumes() {
        let box_ = pt("1");
        let e = Partition::empty();
        let legs0 = LegTriple::new(box_.clone(), e.clone(), e.clone());
        assert_eq!(minimal_config(&legs0).1, 0);
        let legs1 = LegTriple::new(box_.clone(), box_.clone(), e.clone());
        assert_eq!(minimal_config(&legs1).1, -1);
        let legs2 = LegTriple::new(box_.clone(), box_.clone(), box_.clone());
        assert_eq!(minimal_config(&legs2).1, -2);
    }

    #[test]
    fn renormalized_volume_examples() {
        let box_ = pt("1");
        let e = Partition::empty();
        // leg union of three single-box legs, no extras
        let pi = Partition3D::minimal(LegTriple::new(box_.clone(), box_.clone(), box_.clone()));
        assert_eq!(renormalized_volume(&pi), -2);
        // single box at the origin, no legs
        let mut extra = BTreeSet::new();
        extra.insert((0, 0, 0));
        let pi = Partition3D::new(LegTriple::empty(), extra).unwrap();
        assert_eq!(renormalized_volume(&pi), 1);
        // one leg plus the box at (0,1,0)
        let mut extra = BTreeSet::new();
        extra.insert((0, 1, 0));
        let pi = Partition3D::new(LegTriple::new(box_, e.clone(), e), extra).unwrap();
        assert_eq!(renormalized_volume(&pi), 1);
    }

    #[test]
    fn stability_validation() {
        // (0,0,1) without (0,0,0) is unstable over empty legs
        let mut extra = BTreeSet::new();
        extra.insert((0, 0, 1));
        assert!(Partition3D::new(LegTriple::empty(), extra).is_err());
        // an extra box inside the leg union is rejected
        let mut extra = BTreeSet::new();
        extra.insert((5, 0, 0));
        let legs = LegTriple::new(pt("1"), Partition::empty(), Partition::empty());
        assert!(Partition3D::new(legs, extra).is_err());
    }

    #[test]
    fn plane_partition_counts() {
        let counts = enumerate_asymptotic(&LegTriple::empty(), 6);
        let expect: [u32; 7] = [1, 1, 3, 6, 13, 24, 48];
        for (v, c) in &counts {
            assert_eq!(*c, BigUint::from(expect[*v as usize]), "volume {v}");
        }
    }

    #[test]
    fn single_budget_zero_cases() {
        let box_ = pt("1");
        let e = Partition::empty();
        let counts = enumerate_asymptotic(&LegTriple::new(box_.clone(), e.clone(), e.clone()), 0);
        assert_eq!(counts, vec![(0, BigUint::from(1u32))]);
        let counts = enumerate_asymptotic(&LegTriple::new(box_.clone(), box_.clone(), box_), 0);
        assert_eq!(counts, vec![(-2, BigUint::from(1u32))]);
    }

    #[test]
    fn vertex_empty_legs_is_macmahon() {
        let v = vertex_box_counting(&LegTriple::empty(), HalfExp::int(6)).unwrap();
        let m = products::macmahon_p::<crate::Rat>(Window::ints(0, 6)).unwrap();
        assert_eq!(v, m);
    }

    #[test]
    fn vertex_one_box_is_macmahon_over_one_minus_p() {
        let legs = LegTriple::new(pt("1"), Partition::empty(), Partition::empty());
        let v = vertex_box_counting(&legs, HalfExp::int(6)).unwrap();
        let w = Window::ints(0, 6);
        let m = products::macmahon_p::<crate::Rat>(w).unwrap();
        let geom =
            PSeries::from_terms((0..=6).map(|k| (HalfExp::int(k), rat_int(1))), w).unwrap();
        assert_eq!(v, m.mul(&geom));
    }

    #[test]
    fn cyclic_and_reflection_symmetry_small() {
        // all triples with each leg of size <= 2 and budget <= 4
        let shapes: Vec<Partition> = partitions_up_to(2);
        for a in &shapes {
            for b in &shapes {
                for c in &shapes {
                    let legs = LegTriple::new(a.clone(), b.clone(), c.clone());
                    let counts = enumerate_asymptotic(&legs, 4);
                    assert_eq!(
                        counts,
                        enumerate_asymptotic(&legs.rotated(), 4),
                        "cyclic failure at {legs}"
                    );
                    assert_eq!(
                        counts,
                        enumerate_asymptotic(&legs.reflected(), 4),
                        "reflection failure at {legs}"
                    );
                }
            }
        }
    }
}
