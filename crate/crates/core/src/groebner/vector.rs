use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::arith::{Monomial, MonomialOrder, Poly, Rational};

/// How module components interact with the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosOrder {
    /// Term over position: monomial first, then component index.
    Top,
    /// Position over term.
    Pot,
    /// Components `< k` dominate components `>= k`; TOP inside each block.
    /// This is the elimination order used for syzygies and lifting.
    Split(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModOrder {
    pub mono: MonomialOrder,
    pub pos: PosOrder,
}

impl ModOrder {
    pub fn top(mono: MonomialOrder) -> Self {
        ModOrder { mono, pos: PosOrder::Top }
    }

    pub fn split(mono: MonomialOrder, k: usize) -> Self {
        ModOrder { mono, pos: PosOrder::Split(k) }
    }

    fn block(&self, c: u32) -> u32 {
        match self.pos {
            PosOrder::Top => 0,
            PosOrder::Pot => c,
            PosOrder::Split(k) => (c as usize >= k) as u32,
        }
    }

    /// `Greater` means "comes first" (is the larger term).
    pub fn cmp(&self, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
        let (ba, bb) = (self.block(a.1), self.block(b.1));
        if ba != bb {
            return bb.cmp(&ba);
        }
        self.mono.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub mon: Monomial,
    pub comp: u32,
    pub coeff: Rational,
}

/// Sparse element of a free module over a polynomial ring. Terms are kept
/// sorted descending in whatever [`ModOrder`] the caller is working in; the
/// vector itself does not remember the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub(crate) terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[VTerm] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn from_terms(mut terms: Vec<VTerm>, ord: &ModOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mon == t.mon => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Vector { terms: out }
    }

    /// Places `p` in component `comp`.
    pub fn from_poly(p: &Poly, comp: usize, ord: &ModOrder) -> Vector {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| VTerm { mon: m.clone(), comp: comp as u32, coeff: c.clone() })
            .collect();
        Self::from_terms(terms, ord)
    }

    pub fn from_polys(ps: &[Poly], ord: &ModOrder) -> Vector {
        let terms = ps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(m, c)| VTerm { mon: m.clone(), comp: i as u32, coeff: c.clone() })
            })
            .collect();
        Self::from_terms(terms, ord)
    }

    /// Component polynomials `0..rank`.
    pub fn to_polys(&self, ring: &std::sync::Arc<crate::arith::PolyRing>, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp as usize].push((t.mon.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Poly::from_terms(ring, b)).collect()
    }

    pub fn component(&self, ring: &std::sync::Arc<crate::arith::PolyRing>, comp: usize) -> Poly {
        Poly::from_terms(
            ring,
            self.terms
                .iter()
                .filter(|t| t.comp as usize == comp)
                .map(|t| (t.mon.clone(), t.coeff.clone())),
        )
    }

    pub fn resort(&self, ord: &ModOrder) -> Vector {
        Self::from_terms(self.terms.clone(), ord)
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp, coeff: -&t.coeff })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp, coeff: &t.coeff * c })
                .collect(),
        }
    }

    pub fn monic(&self) -> Vector {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.recip()),
            _ => self.clone(),
        }
    }

    /// `c * m * self`; order is preserved because the orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { mon: t.mon.mul(m), comp: t.comp, coeff: &t.coeff * c })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly, ord: &ModOrder) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(m, c), ord);
        }
        acc
    }

    pub fn add(&self, other: &Vector, ord: &ModOrder) -> Vector {
        merge(&self.terms, &other.terms, None, ord)
    }

    pub fn sub(&self, other: &Vector, ord: &ModOrder) -> Vector {
        merge(&self.terms, &other.terms, Some(&-Rational::one()), ord)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &Vector, ord: &ModOrder) -> Vector {
        merge(&self.terms, &other.terms, Some(c), ord)
    }

    /// Keeps only terms whose component lies in `range`, shifting components
    /// down by `range.start`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&(t.comp as usize)))
                .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp - range.start as u32, coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// Shifts every component up by `k`. Re-sorting is needed unless the
    /// order is TOP.
    pub fn shift_comps(&self, k: usize, ord: &ModOrder) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp + k as u32, coeff: t.coeff.clone() })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Drops every term in which variable `var` has exponent `>= e`.
    pub fn truncate_var(&self, var: usize, e: u32) -> Vector {
        Vector { terms: self.terms.iter().filter(|t| t.mon.exp(var) < e).cloned().collect() }
    }

    /// Applies a map on components (must be injective to keep sortedness
    /// meaningful); re-sorts.
    pub fn map_comps(&self, f: impl Fn(u32) -> u32, ord: &ModOrder) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| VTerm { mon: t.mon.clone(), comp: f(t.comp), coeff: t.coeff.clone() })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Value at the origin of each component.
    pub fn constant_part(&self) -> Vec<(u32, Rational)> {
        self.terms
            .iter()
            .filter(|t| t.mon.is_one())
            .map(|t| (t.comp, t.coeff.clone()))
            .collect()
    }

    /// Weighted degree of the leading-by-degree term, with per-component shifts.
    pub fn max_degree(&self, w: &[i64], comp_deg: &[i64]) -> Option<i64> {
        self.terms.iter().map(|t| t.mon.weighted_degree(w) + comp_deg[t.comp as usize]).max()
    }

    pub fn is_homogeneous(&self, w: &[i64], comp_deg: &[i64]) -> bool {
        let mut it = self.terms.iter().map(|t| t.mon.weighted_degree(w) + comp_deg[t.comp as usize]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }
}

fn merge(a: &[VTerm], b: &[VTerm], c: Option<&Rational>, ord: &ModOrder) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scaled = |t: &VTerm| -> VTerm {
        match c {
            None => t.clone(),
            Some(c) => VTerm { mon: t.mon.clone(), comp: t.comp, coeff: &t.coeff * c },
        }
    };
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp((&a[i].mon, a[i].comp), (&b[j].mon, b[j].comp)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let t = scaled(&b[j]);
                if !t.coeff.is_zero() {
                    out.push(t);
                }
                j += 1;
            }
            Ordering::Equal => {
                let s = match c {
                    None => &a[i].coeff + &b[j].coeff,
                    Some(c) => &a[i].coeff + &b[j].coeff * c,
                };
                if !s.is_zero() {
                    out.push(VTerm { mon: a[i].mon.clone(), comp: a[i].comp, coeff: s });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let t = scaled(t);
        if !t.coeff.is_zero() {
            out.push(t);
        }
    }
    Vector { terms: out }
}
