//! The charge-zero fermionic Fock space and its vertex-operator algebra.
//!
//! Basis states are Maya configurations ([`MayaState`]); charge-zero
//! states biject with partitions. Coefficients live in an exact ring of
//! Laurent polynomials in the formal parameters `a`, `u`, `q` over
//! rational forms in `p` ([`FockCoeff`]); nothing is expanded into a
//! truncated series until a trace is finally compared on a window.

mod checks;
mod coeff;
mod maya;
mod ops;
mod vector;

pub use checks::*;
pub use coeff::{AuqKey, FockCoeff};
pub use maya::MayaState;
pub use ops::{
    apply_alpha, apply_chain, apply_e_a, apply_e_r, apply_gamma, apply_psi, apply_psi_star,
    apply_q_power_h, default_energy_cap, e0_eigenvalue, graded_trace, ChainOp, GammaArg,
    GammaSign, OpCtx,
};
pub use vector::FockVector;
