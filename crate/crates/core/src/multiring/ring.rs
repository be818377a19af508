use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{Monomial, MonomialOrder, Poly, PolyRing, Rational};
use crate::error::{Error, Result};

struct Inner {
    base: Arc<PolyRing>,
    full: Arc<PolyRing>,
    n: u32,
}

/// `R[n] = Q[x_1..x_d][t]/(t^n)`. The nilpotent variable is always called
/// `t` and sits after the base variables in the full polynomial ring.
#[derive(Clone)]
pub struct TruncRing {
    inner: Arc<Inner>,
}

impl PartialEq for TruncRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n && *self.inner.full == *other.inner.full)
    }
}
impl Eq for TruncRing {}

impl fmt::Debug for TruncRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}][t]/(t^{})", self.inner.base.vars().join(","), self.inner.n)
    }
}

impl TruncRing {
    pub fn new<S: AsRef<str>>(vars: &[S], n: u32) -> Result<Self> {
        Self::with_order(vars, n, MonomialOrder::GrevLex)
    }

    pub fn with_order<S: AsRef<str>>(vars: &[S], n: u32, order: MonomialOrder) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("multiplicity n must be at least 1".into()));
        }
        if vars.iter().any(|v| v.as_ref() == "t") {
            return Err(Error::InvalidInput("\"t\" is reserved for the nilpotent variable".into()));
        }
        let base = PolyRing::new(vars, order)?;
        let mut all: Vec<String> = base.vars().to_vec();
        all.push("t".into());
        let full = PolyRing::new(&all, order)?;
        Ok(TruncRing { inner: Arc::new(Inner { base, full, n }) })
    }

    /// Same base ring, another multiplicity.
    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::with_order(self.inner.base.vars(), n, self.inner.base.order())
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.inner.base
    }

    pub fn full(&self) -> &Arc<PolyRing> {
        &self.inner.full
    }

    pub fn nbase(&self) -> usize {
        self.inner.base.nvars()
    }

    pub fn nvars_full(&self) -> usize {
        self.inner.full.nvars()
    }

    pub fn t_index(&self) -> usize {
        self.inner.base.nvars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.full.order()
    }

    pub fn t(&self) -> Poly {
        Poly::var(&self.inner.full, self.t_index())
    }

    pub fn t_pow(&self, e: u32) -> Poly {
        Poly::term(&self.inner.full, Monomial::var(self.nvars_full(), self.t_index(), e), Rational::from_integer(1.into()))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(&self.inner.full, i)
    }

    pub fn one(&self) -> TruncElem {
        TruncElem::from_full(self, &Poly::one(&self.inner.full))
    }

    pub fn zero(&self) -> TruncElem {
        TruncElem::from_full(self, &Poly::zero(&self.inner.full))
    }

    pub fn parse(&self, s: &str) -> Result<TruncElem> {
        Ok(TruncElem::from_full(self, &Poly::parse(&self.inner.full, s)?))
    }

    pub fn parse_base(&self, s: &str) -> Result<Poly> {
        Poly::parse(&self.inner.base, s)
    }

    /// Embeds a base polynomial into the full ring.
    pub fn lift_base(&self, p: &Poly) -> Poly {
        p.extend_to(&self.inner.full)
    }

    /// Drops `t^e` with `e >= n`.
    pub fn truncate(&self, p: &Poly) -> Poly {
        let (t, n) = (self.t_index(), self.inner.n);
        p.filter_terms(|m| m.exp(t) < n)
    }
}

/// Keeps the terms of total degree `< order`, i.e. reduces modulo `m^order`
/// for `m` the ideal of the origin.
pub fn truncate_jet(p: &Poly, order: u32) -> Poly {
    p.filter_terms(|m| m.degree() < order)
}

/// An element `u_0 + u_1 t + ... + u_{n-1} t^{n-1}` of `R[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncElem {
    ring: TruncRing,
    coeffs: Vec<Poly>,
}

impl fmt::Debug for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncElem({})", self.to_full())
    }
}

impl fmt::Display for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_full())
    }
}

impl TruncElem {
    pub fn new(ring: &TruncRing, mut coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() > ring.n() as usize {
            return Err(Error::InvalidInput(format!("{} coefficients for n = {}", coeffs.len(), ring.n())));
        }
        if coeffs.iter().any(|c| **c.ring() != **ring.base()) {
            return Err(Error::RingMismatch("coefficient outside the base ring".into()));
        }
        coeffs.resize(ring.n() as usize, Poly::zero(ring.base()));
        Ok(TruncElem { ring: ring.clone(), coeffs })
    }

    /// From a polynomial in `Q[x, t]`, truncating `t^n`.
    pub fn from_full(ring: &TruncRing, p: &Poly) -> Self {
        let n = ring.n() as usize;
        let t = ring.t_index();
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
        for (m, c) in p.terms() {
            let e = m.exp(t) as usize;
            if e < n {
                buckets[e].push((m.without(t), c.clone()));
            }
        }
        let coeffs = buckets.into_iter().map(|b| Poly::from_terms(ring.base(), b)).collect();
        TruncElem { ring: ring.clone(), coeffs }
    }

    pub fn from_base(ring: &TruncRing, p: &Poly) -> Self {
        let mut c = vec![Poly::zero(ring.base()); ring.n() as usize];
        c[0] = p.clone();
        TruncElem { ring: ring.clone(), coeffs: c }
    }

    pub fn to_full(&self) -> Poly {
        let full = self.ring.full();
        let t = self.ring.t_index();
        let mut terms = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            for (m, q) in c.terms() {
                let mut ex = m.exponents().to_vec();
                ex.insert(t, e as u32);
                terms.push((Monomial::from_exponents(&ex), q.clone()));
            }
        }
        Poly::from_terms(full, terms)
    }

    pub fn ring(&self) -> &TruncRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    /// The reduction `u_0` (image under `t -> 0`).
    pub fn u0(&self) -> &Poly {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncElem { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncElem { ring: self.ring.clone(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut out = vec![Poly::zero(self.ring.base()); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
        }
        Ok(TruncElem { ring: self.ring.clone(), coeffs: out })
    }

    pub fn neg(&self) -> Self {
        TruncElem { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale_base(&self, p: &Poly) -> Self {
        TruncElem { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift_t(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Poly::zero(self.ring.base()); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeffs[i].clone();
        }
        TruncElem { ring: self.ring.clone(), coeffs: out }
    }

    /// `u` is a zero divisor iff `u_0 = 0`; `0` itself counts as one.
    pub fn is_zero_divisor(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Membership in the multiplicative system `S_n = {u : u_0 != 0}`.
    pub fn in_s_n(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Global unit: `u_0` is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        let u0 = &self.coeffs[0];
        !u0.is_zero() && u0.is_constant()
    }

    /// Unit in the local ring at the origin.
    pub fn is_unit_at_origin(&self) -> bool {
        !self.coeffs[0].evaluate_at_origin().is_zero()
    }

    pub fn truncate_jet(&self, order: u32) -> Self {
        TruncElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| truncate_jet(c, order)).collect(),
        }
    }

    /// Inverse in the local ring at the origin, modulo `m^order` on each
    /// coefficient.
    pub fn jet_inverse(&self, order: u32) -> Result<Self> {
        let c0 = self.coeffs[0].evaluate_at_origin();
        if c0.is_zero() {
            return Err(Error::NotUnit(format!("{self} vanishes at the origin")));
        }
        let base = self.ring.base();
        let inv_c = c0.recip();
        // u_0 = c (1 - h), h in m
        let h = &Poly::one(base) - &self.coeffs[0].scale(&inv_c);
        let mut v0 = Poly::one(base);
        let mut hp = Poly::one(base);
        for _ in 1..order {
            hp = truncate_jet(&(&hp * &h), order);
            if hp.is_zero() {
                break;
            }
            v0 = &v0 + &hp;
        }
        let v0 = truncate_jet(&v0.scale(&inv_c), order);
        let n = self.coeffs.len();
        let mut v = vec![Poly::zero(base); n];
        v[0] = v0.clone();
        for k in 1..n {
            let mut s = Poly::zero(base);
            for j in 1..=k {
                s = &s + &(&self.coeffs[j] * &v[k - j]);
            }
            v[k] = truncate_jet(&(-&(&s * &v0)), order);
        }
        Ok(TruncElem { ring: self.ring.clone(), coeffs: v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_divisors() {
        let r = TruncRing::new(&["x"], 2).unwrap();
        assert!(r.parse("t").unwrap().is_zero_divisor());
        assert!(!r.parse("1 + t").unwrap().is_zero_divisor());
        assert!(!r.parse("x").unwrap().is_zero_divisor());
        assert!(r.zero().is_zero_divisor());
    }

    #[test]
    fn arithmetic_truncates() {
        let r = TruncRing::new(&["x", "y"], 2).unwrap();
        let a = r.parse("x + t").unwrap();
        let b = r.parse("y + x*t").unwrap();
        assert_eq!(a.mul(&b).unwrap(), r.parse("x*y + x^2*t + y*t").unwrap());
        assert!(r.parse("t").unwrap().mul(&r.parse("t").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn jet_inverse_of_unit() {
        let r = TruncRing::new(&["x"], 3).unwrap();
        let u = r.parse("1 + x + x*t + t^2").unwrap();
        let v = u.jet_inverse(5).unwrap();
        let p = u.mul(&v).unwrap().truncate_jet(5);
        assert_eq!(p, r.one());
        assert!(r.parse("x + t").unwrap().jet_inverse(4).is_err());
    }
}
