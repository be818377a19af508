//! Groebner bases, normal forms, syzygies and Hilbert series for submodules
//! of free modules over `Q[x_1..x_d]` (the nilpotent `t` is just another
//! variable here; truncation is imposed by adjoining `t^n e_j`).

mod buchberger;
mod series;
mod span;
mod vector;

use std::sync::Arc;

use crate::arith::{same_ring, Monomial, MonomialOrder, Poly, PolyRing};
use crate::error::{Error, Result};

pub use series::{HilbertSeries, ZPoly};
pub use vector::{ModOrder, PosOrder, VTerm, Vector};

pub(crate) use buchberger::{groebner, is_groebner, unit_vector, Reducer};
pub(crate) use series::series_from_leads;
pub(crate) use span::{Membership, Span};

/// Element of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    ring: Arc<PolyRing>,
    comps: Vec<Poly>,
}

impl FreeModuleElement {
    pub fn new(ring: &Arc<PolyRing>, comps: Vec<Poly>) -> Result<Self> {
        if comps.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::RingMismatch("component outside the declared ring".into()));
        }
        Ok(FreeModuleElement { ring: ring.clone(), comps })
    }

    pub fn from_poly(p: Poly) -> Self {
        FreeModuleElement { ring: p.ring().clone(), comps: vec![p] }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeModuleElement { ring: ring.clone(), comps: vec![Poly::zero(ring); rank] }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub(crate) fn to_vector(&self, ord: &ModOrder) -> Vector {
        Vector::from_polys(&self.comps, ord)
    }

    pub(crate) fn from_vector(ring: &Arc<PolyRing>, v: &Vector, rank: usize) -> Self {
        FreeModuleElement { ring: ring.clone(), comps: v.to_polys(ring, rank) }
    }
}

impl std::fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Reduced Groebner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    order: ModOrder,
    elems: Vec<Vector>,
    reduced: bool,
}

fn check_gens(gens: &[FreeModuleElement]) -> Result<(Arc<PolyRing>, usize)> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list needs a ring".into()))?;
    for g in gens {
        if !same_ring(g.ring(), first.ring()) {
            return Err(Error::RingMismatch("generators live in different rings".into()));
        }
        if g.rank() != first.rank() {
            return Err(Error::InvalidInput(format!("rank {} vs {}", g.rank(), first.rank())));
        }
    }
    Ok((first.ring().clone(), first.rank()))
}

/// Reduced Groebner basis; every input is checked to reduce to zero.
pub fn groebner_basis(gens: &[FreeModuleElement], order: MonomialOrder) -> Result<GroebnerBasis> {
    let (ring, rank) = check_gens(gens)?;
    groebner_basis_in(&ring, rank, gens, order)
}

/// As [`groebner_basis`], with the ambient given explicitly so that the
/// empty generating set is allowed.
pub fn groebner_basis_in(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[FreeModuleElement],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    for g in gens {
        if !same_ring(g.ring(), ring) || g.rank() != rank {
            return Err(Error::InvalidInput("generator outside the declared ambient".into()));
        }
    }
    let ord = ModOrder::top(order);
    let vs: Vec<Vector> = gens.iter().map(|g| g.to_vector(&ord)).collect();
    let elems = groebner(&vs, &ord, rank == 1);
    let gb = GroebnerBasis { ring: ring.clone(), rank, order: ord, elems, reduced: true };
    for v in &vs {
        if !gb.reduce(v).is_zero() {
            return Err(Error::cross("groebner_basis", "input generator not in computed span"));
        }
    }
    Ok(gb)
}

/// Ideal convenience wrapper.
pub fn ideal_basis(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<GroebnerBasis> {
    let g: Vec<FreeModuleElement> = gens.iter().cloned().map(FreeModuleElement::from_poly).collect();
    groebner_basis_in(ring, 1, &g, ring.order())
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> ModOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<FreeModuleElement> {
        self.elems.iter().map(|v| FreeModuleElement::from_vector(&self.ring, v, self.rank)).collect()
    }

    /// Rank-1 convenience.
    pub fn polys(&self) -> Vec<Poly> {
        self.elems.iter().map(|v| v.component(&self.ring, 0)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(Monomial, u32)> {
        self.elems.iter().map(|v| {
            let l = v.lead().unwrap();
            (l.mon.clone(), l.comp)
        }).collect()
    }

    fn reduce(&self, v: &Vector) -> Vector {
        Reducer::new(self.elems.iter()).reduce(v, &self.order, true)
    }

    pub fn normal_form(&self, f: &FreeModuleElement) -> Result<FreeModuleElement> {
        if !same_ring(f.ring(), &self.ring) || f.rank() != self.rank {
            return Err(Error::RingMismatch("element outside the basis ambient".into()));
        }
        let r = self.reduce(&f.to_vector(&self.order));
        Ok(FreeModuleElement::from_vector(&self.ring, &r, self.rank))
    }

    pub fn normal_form_poly(&self, f: &Poly) -> Result<Poly> {
        Ok(self.normal_form(&FreeModuleElement::from_poly(f.clone()))?.comps.remove(0))
    }

    pub fn contains(&self, f: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_poly(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form_poly(f)?.is_zero())
    }

    /// Buchberger criterion over all pairs.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        is_groebner(&self.elems, &self.order)
    }

    /// Mutual containment of the spanned submodules.
    pub fn same_span(&self, other: &GroebnerBasis) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hilbert series of `R^rank / span` with variable weights `weights` and
    /// generator degrees `comp_degrees`. Only meaningful for homogeneous
    /// generators; that is checked.
    pub fn hilbert_series(&self, weights: &[i64], comp_degrees: &[i64]) -> Result<HilbertSeries> {
        self.hilbert_series_sliced(weights, comp_degrees, None)
    }

    /// As [`Self::hilbert_series`], summing out a nilpotent variable.
    pub fn hilbert_series_sliced(
        &self,
        weights: &[i64],
        comp_degrees: &[i64],
        slice: Option<usize>,
    ) -> Result<HilbertSeries> {
        if weights.len() != self.ring.nvars() || comp_degrees.len() != self.rank {
            return Err(Error::Grading("weight vector has the wrong length".into()));
        }
        if self.elems.iter().any(|v| !v.is_homogeneous(weights, comp_degrees)) {
            return Err(Error::Grading("basis is not homogeneous for the given weights".into()));
        }
        series_from_leads(&self.leading_terms(), comp_degrees, weights, slice)
    }
}

/// Generators of the relation module of `gens`; each returned relation is
/// checked to evaluate to zero.
pub fn syzygy_basis(gens: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    let (ring, rank) = check_gens(gens)?;
    let ord = ModOrder::top(ring.order());
    let vs: Vec<Vector> = gens.iter().map(|g| g.to_vector(&ord)).collect();
    let span = Span::new(&vs, &[], rank, ring.order(), ring.nvars());
    let syz = span.kernel();
    for s in &syz {
        let mut acc = Vector::zero();
        for t in s.terms() {
            acc = acc.add(&vs[t.comp as usize].mul_term(&t.mon, &t.coeff), &ord);
        }
        if !acc.is_zero() {
            return Err(Error::cross("syzygy_basis", "returned relation does not vanish"));
        }
    }
    let k = gens.len();
    Ok(syz.iter().map(|s| FreeModuleElement::from_vector(&ring, s, k)).collect())
}

/// Image under `t -> 0`, where `t` is variable `t_index`.
pub fn substitute_t_zero(p: &Poly, t_index: usize) -> Poly {
    p.filter_terms(|m| m.exp(t_index) == 0)
}

/// Images of ideal generators under `t -> 0`; they generate the image ideal.
pub fn substitute_t_zero_ideal(gens: &[Poly], t_index: usize) -> Vec<Poly> {
    gens.iter().map(|g| substitute_t_zero(g, t_index)).filter(|g| !g.is_zero()).collect()
}

pub fn substitute_t_zero_element(f: &FreeModuleElement, t_index: usize) -> FreeModuleElement {
    FreeModuleElement {
        ring: f.ring.clone(),
        comps: f.comps.iter().map(|p| substitute_t_zero(p, t_index)).collect(),
    }
}

/// The relations `t^n e_j`, which turn a computation over `Q[x, t]` into one
/// over `Q[x][t]/(t^n)`.
pub fn truncation_relations(ring: &Arc<PolyRing>, rank: usize, t_index: usize, n: u32) -> Vec<FreeModuleElement> {
    let tn = Poly::term(ring, Monomial::var(ring.nvars(), t_index, n), crate::arith::rat(1));
    (0..rank)
        .map(|j| {
            let mut comps = vec![Poly::zero(ring); rank];
            comps[j] = tn.clone();
            FreeModuleElement { ring: ring.clone(), comps }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"], order).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn lex_example() {
        let r = ring(MonomialOrder::Lex);
        let gb = ideal_basis(&r, &[p(&r, "x^2 - 1"), p(&r, "x*y - 1")]).unwrap();
        let mut got: Vec<String> = gb.polys().iter().map(|q| q.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x - y", "y^2 - 1"]);
        assert_eq!(gb.normal_form_poly(&p(&r, "x^2")).unwrap(), Poly::one(&r));
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn trivial_bases() {
        let r = ring(MonomialOrder::GrevLex);
        let gb = ideal_basis(&r, &[p(&r, "x")]).unwrap();
        assert_eq!(gb.polys(), vec![p(&r, "x")]);
        let gb = ideal_basis(&r, &[Poly::zero(&r)]).unwrap();
        assert!(gb.is_empty());
        let f = p(&r, "x*y + 3");
        assert_eq!(gb.normal_form_poly(&f).unwrap(), f);
    }

    #[test]
    fn syzygies() {
        let r = ring(MonomialOrder::GrevLex);
        let e = |s: &str| FreeModuleElement::from_poly(p(&r, s));
        let s = syzygy_basis(&[e("x"), e("y")]).unwrap();
        assert_eq!(s.len(), 1);
        let c = s[0].components();
        assert!(c[0] == p(&r, "y") && c[1] == p(&r, "-x") || c[0] == p(&r, "-y") && c[1] == p(&r, "x"));
        assert!(syzygy_basis(&[e("x")]).unwrap().is_empty());
        let s = syzygy_basis(&[e("x^2"), e("x*y")]).unwrap();
        assert_eq!(s.len(), 1);
        let c = s[0].components();
        assert!((&(&c[0] * &p(&r, "x^2")) + &(&c[1] * &p(&r, "x*y"))).is_zero());
        assert_eq!(c[0].total_degree(), Some(1));
    }

    #[test]
    fn series_examples() {
        let r = ring(MonomialOrder::GrevLex);
        let gb = ideal_basis(&r, &[p(&r, "x^2"), p(&r, "x*y"), p(&r, "y^2")]).unwrap();
        let hs = gb.hilbert_series(&[1, 1], &[0]).unwrap();
        let vals: Vec<i64> = (0..4).map(|d| hs.coefficient(d).try_into().unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 0, 0]);
        assert!(gb.hilbert_series(&[1, 0], &[0]).is_err());
    }

    #[test]
    fn t_zero() {
        let r = PolyRing::new(&["x", "y", "t"], MonomialOrder::GrevLex).unwrap();
        assert_eq!(substitute_t_zero(&p(&r, "x + y*t"), 2), p(&r, "x"));
        assert!(substitute_t_zero(&p(&r, "t^2"), 2).is_zero());
        assert_eq!(substitute_t_zero_ideal(&[p(&r, "x+t"), p(&r, "t")], 2), vec![p(&r, "x")]);
    }

    #[test]
    fn module_basis() {
        let r = ring(MonomialOrder::GrevLex);
        let v = |a: &str, b: &str| FreeModuleElement::new(&r, vec![p(&r, a), p(&r, b)]).unwrap();
        let gb = groebner_basis(&[v("x", "y"), v("y", "0"), v("0", "x")], MonomialOrder::GrevLex).unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.contains(&v("x*y", "y^2")).unwrap());
        assert!(!gb.contains(&v("1", "0")).unwrap());
    }
}
