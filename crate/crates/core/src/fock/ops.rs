//! Operators on Fock space and graded traces.
//!
//! `Γ±` are evaluated as genuine exponentials of the bosonic modes `α_n`:
//! the grading makes the exponential exact below an energy cutoff. Trace
//! entries are held in exact rational form throughout and expanded
//! ascending only when the final `q`-series is assembled.
//!
//! Truncation discipline: a hard intermediate-energy cap (from the trace
//! parameters) plus an order-bound prune. The prune drops a term only
//! when the minimal `p`-order the remaining operators can add, by a
//! per-stage dynamic program over energies, provably pushes it above the
//! comparison top, so windowed results are unchanged. The cap-stability
//! checks re-run everything with a larger cap.

use crate::error::Error;
use crate::fock::coeff::FockCoeff;
use crate::fock::maya::MayaState;
use crate::fock::vector::FockVector;
use crate::halfexp::HalfExp;
use crate::partitions::{partitions_up_to, Partition};
use crate::schur::VarList;
use crate::series::{ALaurent, Window};
use crate::{QSeries, Rat, RationalLaurent};
use rayon::prelude::*;

/// `ψ_k`: wedge insertion of the mode `k` (twice-value `k2`).
pub fn apply_psi(k2: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (s, c) in v.iter() {
        if let Some((t, sign)) = s.with_inserted(k2) {
            out.add_term(t, c.scale_sign(sign));
        }
    }
    out
}

/// `ψ*_k`: the adjoint (wedge removal).
pub fn apply_psi_star(k2: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (s, c) in v.iter() {
        if let Some((t, sign)) = s.with_removed(k2) {
            out.add_term(t, c.scale_sign(sign));
        }
    }
    out
}

/// Modes `k` of `s` whose shift `k - 2n` is vacant: the support of
/// `Σ_k ψ_{k-n} ψ*_k` on a basis state.
///
/// Deep-sea modes below `deepest hole - |shift|` always shift onto an
/// occupied mode, so a finite scan suffices.
fn move_candidates(s: &MayaState, shift2: i64) -> Vec<i64> {
    let floor2 = s.deepest_hole().unwrap_or(-1) - shift2.abs();
    s.occupied_down_to(floor2)
        .into_iter()
        .filter(|&k2| !s.occupied(k2 - shift2))
        .collect()
}

/// `α_n = Σ_k ψ_{k-n} ψ*_k` on a vector (`n != 0`).
pub fn apply_alpha(n: i64, v: &FockVector) -> FockVector {
    assert!(n != 0);
    let shift2 = 2 * n;
    let mut out = FockVector::zero();
    for (s, c) in v.iter() {
        for k2 in move_candidates(s, shift2) {
            let (t1, sg1) = s.with_removed(k2).expect("candidate occupied");
            let (t2, sg2) = t1.with_inserted(k2 - shift2).expect("candidate target vacant");
            out.add_term(t2, c.scale_sign(sg1 * sg2));
        }
    }
    out
}

/// `E_r(p) = Σ_k p^{k - r/2} ψ_{k-r} ψ*_k`.
///
/// For `r = 0` this is diagonal on charge-zero states with the exact
/// rational eigenvalue `Σ_i p^{λ_i - i + 1/2}`.
pub fn apply_e_r(r: i64, v: &FockVector) -> Result<FockVector, Error> {
    let mut out = FockVector::zero();
    if r == 0 {
        for (s, c) in v.iter() {
            let lam = s.to_partition()?;
            let eig = e0_eigenvalue(&lam);
            out.add_term(s.clone(), c.scale_rational(&eig));
        }
        return Ok(out);
    }
    let shift2 = 2 * r;
    for (s, c) in v.iter() {
        for k2 in move_candidates(s, shift2) {
            let (t1, sg1) = s.with_removed(k2).expect("occupied");
            let (t2, sg2) = t1.with_inserted(k2 - shift2).expect("vacant");
            // weight p^{k - r/2}: twice-exponent k2 - r
            let w = RationalLaurent::monomial(
                HalfExp::from_twice(k2 - r),
                crate::rat_int((sg1 * sg2) as i64),
            );
            out.add_term(t2, c.scale_rational(&w));
        }
    }
    Ok(out)
}

/// The eigenvalue of `E_0(p)` on `v_λ` as a rational form.
pub fn e0_eigenvalue(lam: &Partition) -> RationalLaurent {
    VarList::pos_shape(lam.clone()).power_sum(1)
}

/// `E(a,p) = Σ_{|r| <= bound} a^r E_r(p)` within the fixed `a`-window.
pub fn apply_e_a(v: &FockVector, a_bound: i64) -> Result<FockVector, Error> {
    let mut out = FockVector::zero();
    for r in -a_bound..=a_bound {
        let piece = apply_e_r(r, v)?;
        for (s, c) in piece.iter() {
            out.add_term(s.clone(), c.shift(r, 0, 0));
        }
    }
    Ok(out)
}

/// `q^H`: multiplies each basis term by `q^{energy}` (charge zero only).
pub fn apply_q_power_h(v: &FockVector) -> Result<FockVector, Error> {
    let mut out = FockVector::zero();
    for (s, c) in v.iter() {
        let e2 = s.energy_twice();
        if e2 % 2 != 0 {
            return Err(Error::NonzeroCharge(s.charge()));
        }
        out.add_term(s.clone(), c.shift(0, 0, e2 / 2));
    }
    Ok(out)
}

/// The argument of a vertex operator: a geometric variable list scaled by
/// `u^{u_exp} q^{q_exp}`.
#[derive(Debug, Clone)]
pub struct GammaArg {
    pub vars: VarList,
    pub u_exp: i64,
    pub q_exp: i64,
}

impl GammaArg {
    /// Plain `p^{-ρ}`.
    pub fn rho() -> Self {
        GammaArg {
            vars: VarList::neg_rho(),
            u_exp: 0,
            q_exp: 0,
        }
    }

    pub fn with_u(mut self, u_exp: i64) -> Self {
        self.u_exp = u_exp;
        self
    }

    pub fn with_q(mut self, q_exp: i64) -> Self {
        self.q_exp = q_exp;
        self
    }

    /// `s_n = (1/n) Σ x_i^n` over the scaled list, as a coefficient.
    fn exp_coefficient(&self, n: u32) -> FockCoeff {
        let p = self
            .vars
            .power_sum(n)
            .scale(&Rat::new(1.into(), (n as i64).into()));
        FockCoeff::monomial(
            (0, self.u_exp * n as i64, self.q_exp * n as i64),
            p,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

/// One operator in a trace chain, written left to right as in
/// `tr(E(a,p) Γ₊ Γ₋ q^H)`.
#[derive(Debug, Clone)]
pub enum ChainOp {
    GammaPlus(GammaArg),
    GammaMinus(GammaArg),
    EZero,
    Er(i64),
    /// `E(a,p)` assembled over `|r| <= bound`.
    ERange(i64),
    QPowerH,
}

/// Truncation control for one application stage.
#[derive(Debug, Clone)]
pub struct OpCtx {
    /// Hard cap on intermediate energies.
    pub energy_cap: i64,
    /// Minimal additional twice-order per current energy (`None` = the
    /// energy cannot reach the closing state at all).
    pub theta2: Option<Vec<Option<i64>>>,
    /// Comparison top (twice-exponent) the prune respects.
    pub top2: i64,
}

impl OpCtx {
    pub fn cap_only(energy_cap: i64) -> Self {
        OpCtx {
            energy_cap,
            theta2: None,
            top2: 0,
        }
    }

    fn prune(&self, v: &mut FockVector) {
        let cap2 = 2 * self.energy_cap;
        v.retain(|s, c| {
            let e2 = s.energy_twice();
            if e2 > cap2 {
                return false;
            }
            if let Some(theta) = &self.theta2 {
                let e = (e2 / 2) as usize;
                match theta.get(e).copied().flatten() {
                    Some(t2) => match c.min_p_ord2() {
                        Some(o2) => o2 + t2 <= self.top2,
                        None => false,
                    },
                    None => false,
                }
            } else {
                true
            }
        });
    }
}

/// `Γ±(x) = exp(Σ_n s_n α_{±n})`, exact below the stage's energy cap.
pub fn apply_gamma(
    sign: GammaSign,
    arg: &GammaArg,
    v: &FockVector,
    ctx: &OpCtx,
) -> Result<FockVector, Error> {
    let nmax = match sign {
        GammaSign::Plus => (v.max_energy_twice().unwrap_or(0) / 2).max(0),
        GammaSign::Minus => ctx.energy_cap,
    };
    if nmax < 0 {
        return Ok(v.clone());
    }
    let coeffs: Vec<FockCoeff> = (1..=nmax as u32)
        .map(|n| arg.exp_coefficient(n))
        .collect();
    let alpha_n = |n: i64, w: &FockVector| match sign {
        GammaSign::Plus => apply_alpha(n, w),
        GammaSign::Minus => apply_alpha(-n, w),
    };

    let mut acc = v.clone();
    ctx.prune(&mut acc);
    let mut term = acc.clone();
    let mut j: i64 = 0;
    let max_iters = 2 * ctx.energy_cap + 4;
    while !term.is_zero() {
        j += 1;
        if j > max_iters {
            return Err(Error::CutoffTooSmall {
                cutoff: ctx.energy_cap,
                need: j,
            });
        }
        // term <- (Σ_n s_n α_{±n}) term / j
        let mut next = FockVector::zero();
        for (n, s_n) in coeffs.iter().enumerate() {
            if s_n.is_zero() {
                continue;
            }
            let moved = alpha_n(n as i64 + 1, &term);
            if moved.is_zero() {
                continue;
            }
            let mut scaled = moved.scale(s_n);
            ctx.prune(&mut scaled);
            next = next.add(&scaled);
        }
        let inv_j = Rat::new(1.into(), j.into());
        term = next.scale(&FockCoeff::from_rational(RationalLaurent::constant(inv_j)));
        ctx.prune(&mut term);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Minimal twice-order the entries of a vertex operator carry per unit
/// of energy change. `None` when no finite bound exists (descending
/// lists), which disables pruning for the whole chain.
fn gamma_slope2(arg: &GammaArg) -> Option<i64> {
    use crate::schur::{ListKind, VarCount};
    match (arg.vars.kind, arg.vars.count) {
        (ListKind::NegShape, _) => Some(arg.vars.min_exponent().twice()),
        (ListKind::PosShape, VarCount::First(_)) => Some(arg.vars.min_exponent().twice()),
        (ListKind::PosShape, VarCount::All) => None,
    }
}

/// Minimal twice-order one operator adds on the energy transition
/// `e_from -> e_to`; `Ok(None)` = transition impossible, `Err(())` = no
/// finite bound for this operator.
fn op_cost2(op: &ChainOp, e_from: i64, e_to: i64) -> Result<Option<i64>, ()> {
    Ok(match op {
        ChainOp::GammaPlus(arg) => {
            let slope = gamma_slope2(arg).ok_or(())?;
            (e_to <= e_from).then_some((e_from - e_to) * slope)
        }
        ChainOp::GammaMinus(arg) => {
            let slope = gamma_slope2(arg).ok_or(())?;
            (e_to >= e_from).then_some((e_to - e_from) * slope)
        }
        ChainOp::EZero => (e_to == e_from).then_some(1 - 2 * e_from),
        ChainOp::Er(r) => (e_to == e_from - r).then_some(1 - 2 * e_from - r.abs()),
        ChainOp::ERange(bound) => {
            let r = e_from - e_to;
            (r.abs() <= *bound).then_some(1 - 2 * e_from - r.abs())
        }
        ChainOp::QPowerH => (e_to == e_from).then_some(0),
    })
}

/// Per-stage prune tables for a chain: `tables[j][e]` bounds the twice
/// `p`-order that applying the operators from stage `j` on, starting at
/// energy `e` and closing at `close_energy`, must add. `None` overall
/// when some operator admits no finite bound.
fn prune_tables(
    ops_in_application_order: &[ChainOp],
    energy_cap: i64,
    close_energy: i64,
) -> Option<Vec<Vec<Option<i64>>>> {
    let m = ops_in_application_order.len();
    let n_e = (energy_cap + 1) as usize;
    let mut tables: Vec<Vec<Option<i64>>> = vec![vec![None; n_e]; m + 1];
    if (close_energy as usize) < n_e {
        tables[m][close_energy as usize] = Some(0);
    }
    for j in (0..m).rev() {
        for e_from in 0..=energy_cap {
            let mut best: Option<i64> = None;
            for e_to in 0..=energy_cap {
                let c = match op_cost2(&ops_in_application_order[j], e_from, e_to) {
                    Ok(c) => c,
                    Err(()) => return None,
                };
                if let (Some(c), Some(rest)) = (c, tables[j + 1][e_to as usize]) {
                    let total = c + rest;
                    best = Some(match best {
                        Some(b) => b.min(total),
                        None => total,
                    });
                }
            }
            tables[j][e_from as usize] = best;
        }
    }
    Some(tables)
}

/// Apply a chain (written left to right) to a vector, pruning against the
/// closing energy.
///
/// A vertex operator's internal exponential is pruned with its own
/// stage's table (which still allows the operator's remaining moves); the
/// next stage's table applies only once the operator has fully acted.
pub fn apply_chain(
    chain: &[ChainOp],
    v: &FockVector,
    energy_cap: i64,
    close_energy: i64,
    top2: i64,
    a_bound: i64,
) -> Result<FockVector, Error> {
    let ops: Vec<ChainOp> = chain.iter().rev().cloned().collect();
    let tables = prune_tables(&ops, energy_cap, close_energy);
    let stage_ctx = |j: usize| OpCtx {
        energy_cap,
        theta2: tables.as_ref().map(|t| t[j].clone()),
        top2,
    };
    let mut cur = v.clone();
    for (j, op) in ops.iter().enumerate() {
        let during = stage_ctx(j);
        cur = match op {
            ChainOp::GammaPlus(arg) => apply_gamma(GammaSign::Plus, arg, &cur, &during)?,
            ChainOp::GammaMinus(arg) => apply_gamma(GammaSign::Minus, arg, &cur, &during)?,
            ChainOp::EZero => apply_e_r(0, &cur)?,
            ChainOp::Er(r) => apply_e_r(*r, &cur)?,
            ChainOp::ERange(_) => apply_e_a(&cur, a_bound)?,
            ChainOp::QPowerH => apply_q_power_h(&cur)?,
        };
        stage_ctx(j + 1).prune(&mut cur);
    }
    Ok(cur)
}

/// The spec'd intermediate energy cap for traces at `q`-order `n` on a
/// window: `n + 2 (top - bottom)`.
pub fn default_energy_cap(order: usize, window: Window) -> i64 {
    order as i64 + (window.hi() - window.lo()).twice()
}

/// `Σ_{|λ| <= order} q^{|λ|} (v_λ, O v_λ)` with `O` given by the chain;
/// every diagonal entry is computed in exact rational form and expanded
/// ascending onto the window at the end. Returns the `a`-graded family of
/// `q`-series (plain chains only populate `a^0`).
pub fn graded_trace(
    chain: &[ChainOp],
    order: usize,
    window: Window,
    a_bound: i64,
    energy_cap: i64,
) -> Result<ALaurent<QSeries>, Error> {
    if energy_cap < order as i64 {
        return Err(Error::CutoffTooSmall {
            cutoff: energy_cap,
            need: order as i64,
        });
    }
    let shapes = partitions_up_to(order as u32);
    let per_shape: Vec<Result<Vec<((i64, i64), RationalLaurent)>, Error>> = shapes
        .par_iter()
        .map(|lam| {
            let state = MayaState::from_partition(lam);
            let v = FockVector::basis(state.clone());
            let out = apply_chain(
                chain,
                &v,
                energy_cap,
                lam.size() as i64,
                window.hi().twice(),
                a_bound,
            )?;
            let diag = out.inner_basis(&state);
            let mut cells = Vec::new();
            for ((a, u, q), r) in diag.iter() {
                if u != 0 {
                    return Err(Error::invalid(
                        "trace entries must not carry the formal unit u",
                    ));
                }
                if q < 0 {
                    return Err(Error::invalid("negative q-power in a trace entry"));
                }
                if q as usize <= order {
                    cells.push(((a, q), r.clone()));
                }
            }
            Ok(cells)
        })
        .collect();

    // deterministic ordered reduction
    let mut acc: std::collections::BTreeMap<(i64, i64), RationalLaurent> =
        std::collections::BTreeMap::new();
    for cells in per_shape {
        for ((a, q), r) in cells? {
            let entry = acc.remove(&(a, q));
            let merged = match entry {
                Some(x) => x.add(&r),
                None => r,
            };
            acc.insert((a, q), merged);
        }
    }

    let mut out: ALaurent<QSeries> = ALaurent::new();
    let a_values: std::collections::BTreeSet<i64> = acc.keys().map(|&(a, _)| a).collect();
    for a in a_values {
        if a < -a_bound || a > a_bound {
            continue;
        }
        let qs = QSeries::from_fn(order, |d| {
            match acc.get(&(a, d as i64)) {
                Some(r) => r.expand(window),
                None => Ok(crate::PSeries::zero(window)),
            }
        })?;
        out.insert(a, qs);
    }
    if out.is_empty() {
        out.insert(0, QSeries::zero(order, window));
    }
    Ok(out)
}
