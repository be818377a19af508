//! Exact rationals and sparse multivariate polynomials.

mod monomial;
mod parse;
mod poly;
mod rational;

pub use monomial::{Monomial, MonomialOrder};
pub use poly::{poly_arith, ArithOp, Poly, PolyRing};
pub use rational::{format_rational, parse_rational, rat, rat2, Rational};

pub(crate) use poly::same_ring;

/// Value of `p` at the origin, i.e. its constant term.
pub fn evaluate_at_origin(p: &Poly) -> Rational {
    p.evaluate_at_origin()
}
