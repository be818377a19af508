use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Ordered variable names plus the active monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars: self.vars.clone(), order })
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Sparse polynomial with rational coefficients; terms sorted descending.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; the only failure is a ring-context mismatch.
pub fn poly_arith(p: &Poly, q: &Poly, op: ArithOp) -> Result<Poly> {
    if !same_ring(&p.ring, &q.ring) {
        return Err(Error::RingMismatch(format!("{:?} vs {:?}", p.ring.vars, q.ring.vars)));
    }
    Ok(match op {
        ArithOp::Add => p.add_unchecked(q, false),
        ArithOp::Sub => p.add_unchecked(q, true),
        ArithOp::Mul => p.mul_unchecked(q),
    })
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Poly {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Poly {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Rational) -> Poly {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), Rational::one())
    }

    /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, it: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let ord = ring.order();
        let mut v: Vec<(Monomial, Rational)> = it.into_iter().collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Constant term: the value at the origin.
    pub fn evaluate_at_origin(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> Option<i64> {
        self.terms.iter().map(|t| t.0.weighted_degree(w)).max()
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).min()
    }

    pub fn is_homogeneous(&self, w: &[i64]) -> bool {
        let mut it = self.terms.iter().map(|t| t.0.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    fn add_unchecked(&self, other: &Poly, subtract: bool) -> Poly {
        let ord = self.ring.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_unchecked(&big.mul_term(m, c), false);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Divides by the lead coefficient.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.lead()?;
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            let qm = m.div(dm)?;
            let qc = &c / dc;
            rem = rem.add_unchecked(&d.mul_term(&qm, &qc), true);
            q.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, q))
    }

    /// Integer content-free form with positive lead: `self = c * primitive`.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut f = Rational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Substitutes `images[i]` for variable `i`; images live in the target ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "substitution arity");
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Poly::zero(&target);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial in a ring with the same variables but
    /// possibly another order.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Poly {
        assert_eq!(ring.vars(), self.ring.vars(), "in_ring needs identical variables");
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    /// Embeds into a ring whose first variables are `self`'s variables (by
    /// position), padding exponents with zeros.
    pub fn extend_to(&self, ring: &Arc<PolyRing>) -> Poly {
        let k = self.ring.nvars();
        assert!(ring.nvars() >= k);
        Poly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(ring.nvars(), 0);
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    }

    /// Keeps terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| keep(&t.0)).cloned().collect(),
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Poly> {
        super::parse::parse_poly(ring, s)
    }
}

fn fmt_monomial(ring: &PolyRing, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rational(&a))?;
                }
                fmt_monomial(&self.ring, m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on a ring mismatch; use [`poly_arith`] for the checked form.
            fn $m(self, rhs: &Poly) -> Poly {
                poly_arith(self, rhs, $op).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                poly_arith(&self, &rhs, $op).expect("ring mismatch")
            }
        }
    };
}
binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
