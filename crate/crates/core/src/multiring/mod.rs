//! The ring `R[n] = R[t]/(t^n)` and its truncated automorphisms.

mod aut;
mod ring;

pub use aut::{verify_cocycle, AutMap};
pub use ring::{truncate_jet, TruncElem, TruncRing};

/// `u` is a zero divisor of `R[n]` iff `u_0 = 0`.
pub fn is_zero_divisor(u: &TruncElem) -> bool {
    u.is_zero_divisor()
}

/// `phi` after `psi`.
pub fn compose(phi: &AutMap, psi: &AutMap) -> crate::Result<AutMap> {
    phi.compose(psi)
}
