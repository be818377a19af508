use std::fmt;
use std::sync::{Arc, OnceLock};

use super::cover::{self, top};
use crate::error::{Error, Result};
use crate::groebner::{series_from_leads, HilbertSeries, Membership, Vector};
use crate::linalg::{rank_q, QEchelon};
use crate::multiring::{TruncElem, TruncRing};

/// Where vanishing, freeness and equality are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Locality {
    /// Over `R[n]` itself.
    #[default]
    Global,
    /// After localizing at the origin `(x_1..x_d, t)`. Decided exactly via
    /// Nakayama (a finitely generated module vanishes at the origin iff its
    /// fiber there is zero).
    AtOrigin,
}

/// Degrees of base variables, of `t`, and of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub var_weights: Vec<i64>,
    pub t_weight: i64,
    pub gen_degrees: Vec<i64>,
}

impl Grading {
    /// Base variables of degree 1.
    pub fn standard(nbase: usize, t_weight: i64, gen_degrees: Vec<i64>) -> Self {
        Grading { var_weights: vec![1; nbase], t_weight, gen_degrees }
    }

    pub fn full_weights(&self) -> Vec<i64> {
        let mut w = self.var_weights.clone();
        w.push(self.t_weight);
        w
    }

    pub(crate) fn with_degrees(&self, gen_degrees: Vec<i64>) -> Self {
        Grading { var_weights: self.var_weights.clone(), t_weight: self.t_weight, gen_degrees }
    }

    /// Degree of a homogeneous vector in a cover with these generator
    /// degrees; `None` if not homogeneous, `Some(None)` for zero.
    pub(crate) fn degree_of(&self, v: &Vector) -> Option<Option<i64>> {
        let w = self.full_weights();
        if !v.is_homogeneous(&w, &self.gen_degrees) {
            return None;
        }
        Some(v.max_degree(&w, &self.gen_degrees))
    }
}

struct Inner {
    ring: TruncRing,
    ngens: usize,
    relations: Vec<Vector>,
    grading: Option<Grading>,
    membership: OnceLock<Membership>,
}

/// Finitely presented `R[n]`-module `R[n]^g / span(relations)`.
#[derive(Clone)]
pub struct PresMod(Arc<Inner>);

impl fmt::Debug for PresMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresMod({:?}, {} gens, {} rels)", self.0.ring, self.0.ngens, self.0.relations.len())
    }
}

impl PresMod {
    /// Relations are lists of `ngens` elements of `R[n]`.
    pub fn new(ring: &TruncRing, ngens: usize, relations: &[Vec<TruncElem>], grading: Option<Grading>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for (i, r) in relations.iter().enumerate() {
            if r.len() != ngens {
                return Err(Error::InvalidInput(format!("relation {i} has {} entries, expected {ngens}", r.len())));
            }
            if r.iter().any(|e| e.ring() != ring) {
                return Err(Error::RingMismatch(format!("relation {i} lives in another ring")));
            }
            rels.push(cover::from_elems(ring, r));
        }
        Self::from_vectors(ring, ngens, rels, grading)
    }

    pub(crate) fn from_vectors(ring: &TruncRing, ngens: usize, relations: Vec<Vector>, grading: Option<Grading>) -> Result<Self> {
        let relations: Vec<Vector> = relations.iter().map(|v| cover::trunc(ring, v)).filter(|v| !v.is_zero()).collect();
        if let Some(g) = &grading {
            if g.gen_degrees.len() != ngens || g.var_weights.len() != ring.nbase() {
                return Err(Error::Grading("grading data has the wrong length".into()));
            }
            if g.var_weights.iter().any(|&w| w <= 0) || g.t_weight < 0 {
                return Err(Error::Grading("variable weights must be positive and t weight non-negative".into()));
            }
            for (i, r) in relations.iter().enumerate() {
                if g.degree_of(r).is_none() {
                    return Err(Error::Grading(format!("relation {i} is not homogeneous")));
                }
            }
        }
        Ok(PresMod(Arc::new(Inner { ring: ring.clone(), ngens, relations, grading, membership: OnceLock::new() })))
    }

    pub fn free(ring: &TruncRing, rank: usize) -> Self {
        Self::from_vectors(ring, rank, Vec::new(), None).unwrap()
    }

    pub fn free_graded(ring: &TruncRing, grading: Grading) -> Result<Self> {
        let k = grading.gen_degrees.len();
        Self::from_vectors(ring, k, Vec::new(), Some(grading))
    }

    /// `R[i] = R[n]/(t^i)`, cyclic.
    pub fn truncated(ring: &TruncRing, i: u32, grading: Option<Grading>) -> Result<Self> {
        if i == 0 || i > ring.n() {
            return Err(Error::InvalidInput(format!("R[{i}] needs 1 <= i <= n = {}", ring.n())));
        }
        let rel = cover::t_pow_times(ring, &cover::unit(ring, 0), i);
        Self::from_vectors(ring, 1, vec![rel], grading)
    }

    /// `R[n]^k / (t^i) R[n]^k`, i.e. `R[i]^k`, with generator degrees `degs`.
    pub fn truncated_power(ring: &TruncRing, i: u32, k: usize, grading: Option<Grading>) -> Result<Self> {
        let parts: Vec<PresMod> = (0..k)
            .map(|j| {
                let g = grading.as_ref().map(|g| g.with_degrees(vec![g.gen_degrees[j]]));
                Self::truncated(ring, i, g)
            })
            .collect::<Result<_>>()?;
        Self::direct_sum(&parts)
    }

    /// Direct sum; graded iff every summand is graded with the same weights.
    pub fn direct_sum(mods: &[PresMod]) -> Result<Self> {
        let first = mods.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        let ring = first.ring().clone();
        let mut rels = Vec::new();
        let mut offset = 0;
        let mut degs = Vec::new();
        let mut graded = true;
        for m in mods {
            if m.ring() != &ring {
                return Err(Error::RingMismatch("summands over different rings".into()));
            }
            for r in &m.0.relations {
                rels.push(r.shift_comps(offset, &top(&ring)));
            }
            match (&m.0.grading, &first.0.grading) {
                (Some(g), Some(f)) if g.var_weights == f.var_weights && g.t_weight == f.t_weight => {
                    degs.extend(g.gen_degrees.iter().copied())
                }
                _ => graded = false,
            }
            offset += m.ngens();
        }
        let grading = if graded { first.0.grading.as_ref().map(|g| g.with_degrees(degs)) } else { None };
        Self::from_vectors(&ring, offset, rels, grading)
    }

    pub fn ring(&self) -> &TruncRing {
        &self.0.ring
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.0.grading.as_ref()
    }

    pub fn is_graded(&self) -> bool {
        self.0.grading.is_some()
    }

    /// Forgets the grading.
    pub fn ungraded(&self) -> PresMod {
        Self::from_vectors(self.ring(), self.ngens(), self.0.relations.clone(), None).unwrap()
    }

    /// Same presentation with a grading attached (checked).
    pub fn with_grading(&self, grading: Grading) -> Result<PresMod> {
        Self::from_vectors(self.ring(), self.ngens(), self.0.relations.clone(), Some(grading))
    }

    pub fn relations(&self) -> Vec<Vec<TruncElem>> {
        self.0.relations.iter().map(|v| cover::to_elems(self.ring(), v, self.ngens())).collect()
    }

    pub(crate) fn relation_vectors(&self) -> &[Vector] {
        &self.0.relations
    }

    pub(crate) fn membership(&self) -> &Membership {
        self.0.membership.get_or_init(|| cover::membership(self.ring(), &self.0.relations, self.ngens()))
    }

    /// Whether a cover vector is zero in the module.
    pub(crate) fn is_zero_vector(&self, v: &Vector) -> bool {
        self.membership().contains(v)
    }

    pub(crate) fn normal_form(&self, v: &Vector) -> Vector {
        cover::trunc(self.ring(), &self.membership().normal_form(v).resort(&top(self.ring())))
    }

    /// Element as cover coordinates.
    pub fn element(&self, comps: &[TruncElem]) -> Result<Vector> {
        if comps.len() != self.ngens() {
            return Err(Error::InvalidInput("wrong number of coordinates".into()));
        }
        Ok(cover::from_elems(self.ring(), comps))
    }

    pub fn coordinates(&self, v: &Vector) -> Vec<TruncElem> {
        cover::to_elems(self.ring(), v, self.ngens())
    }

    pub fn is_zero_element(&self, comps: &[TruncElem]) -> Result<bool> {
        Ok(self.is_zero_vector(&self.element(comps)?))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.ngens()).all(|j| self.is_zero_vector(&cover::unit(self.ring(), j)))
    }

    /// `dim_Q M / m M` at the origin: the local minimal number of generators.
    pub fn fiber_dim(&self) -> usize {
        self.ngens() - rank_q(cover::constant_rows(&self.0.relations, self.ngens()))
    }

    /// Generator indices whose images form a basis of the fiber at the origin.
    pub(crate) fn fiber_basis(&self) -> Vec<usize> {
        let mut e = QEchelon::new();
        for r in cover::constant_rows(&self.0.relations, self.ngens()) {
            e.insert(r);
        }
        let mut out = Vec::new();
        for j in 0..self.ngens() {
            let mut v = vec![crate::arith::rat(0); self.ngens()];
            v[j] = crate::arith::rat(1);
            if e.insert(v) {
                out.push(j);
            }
        }
        out
    }

    pub fn vanishes(&self, loc: Locality) -> bool {
        match loc {
            Locality::Global => self.is_zero(),
            Locality::AtOrigin => self.fiber_dim() == 0,
        }
    }

    /// Hilbert series over `Q[x]`, with `t` summed out. Requires a grading.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let g = self.grading().ok_or_else(|| Error::Grading("module carries no grading".into()))?;
        let lead: Vec<_> = self
            .membership()
            .gb()
            .iter()
            .map(|v| {
                let l = v.lead().unwrap();
                (l.mon.clone(), l.comp)
            })
            .collect();
        series_from_leads(&lead, &g.gen_degrees, &g.full_weights(), Some(self.ring().t_index()))
    }

    /// Cyclic module `R[n]/I` from ideal generators.
    pub fn cyclic(ring: &TruncRing, ideal: &[TruncElem], grading: Option<Grading>) -> Result<Self> {
        let rels: Vec<Vec<TruncElem>> = ideal.iter().map(|f| vec![f.clone()]).collect();
        Self::new(ring, 1, &rels, grading)
    }

    /// Quotient by extra relations (cover vectors). The grading is kept when
    /// the new relations are homogeneous and dropped otherwise.
    pub(crate) fn quotient_vectors(&self, extra: &[Vector]) -> Result<PresMod> {
        let mut rels = self.0.relations.clone();
        rels.extend(extra.iter().cloned());
        let keep = self.0.grading.as_ref().is_some_and(|g| extra.iter().all(|v| g.degree_of(v).is_some()));
        let grading = if keep { self.0.grading.clone() } else { None };
        Self::from_vectors(self.ring(), self.ngens(), rels, grading)
    }

    /// Quotient by the submodule generated by the given elements.
    pub fn quotient_by(&self, elems: &[Vec<TruncElem>]) -> Result<PresMod> {
        let extra = elems.iter().map(|e| self.element(e)).collect::<Result<Vec<_>>>()?;
        self.quotient_vectors(&extra)
    }
}

/// Presentation of `(span(num) + den) / den` inside `R[n]^rank`, with
/// generators the images of `num`. `den` must already contain whatever
/// relations the ambient has; `t^n` is adjoined here.
pub(crate) fn subquotient(
    ring: &TruncRing,
    rank: usize,
    num: &[Vector],
    den: &[Vector],
    cover_grading: Option<&Grading>,
) -> Result<PresMod> {
    let rels = cover::kernel(ring, num, den, rank);
    // inhomogeneous generators silently give an ungraded result
    let grading = cover_grading.and_then(|g| {
        let degs: Option<Vec<i64>> = num.iter().map(|v| g.degree_of(v).map(|d| d.unwrap_or(0))).collect();
        degs.map(|d| g.with_degrees(d))
    });
    PresMod::from_vectors(ring, num.len(), rels, grading)
}

/// A submodule of a presented module, by generators in the free cover.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: PresMod,
    gens: Vec<Vector>,
}

impl Submodule {
    pub fn new(ambient: &PresMod, gens: &[Vec<TruncElem>]) -> Result<Self> {
        let gens = gens.iter().map(|g| ambient.element(g)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(ambient, gens))
    }

    pub(crate) fn from_vectors(ambient: &PresMod, gens: Vec<Vector>) -> Self {
        let ring = ambient.ring();
        let mut gens: Vec<Vector> = gens.iter().map(|v| cover::trunc(ring, v)).filter(|v| !ambient.is_zero_vector(v)).collect();
        gens.dedup();
        Submodule { ambient: ambient.clone(), gens }
    }

    pub fn whole(m: &PresMod) -> Self {
        Self::from_vectors(m, (0..m.ngens()).map(|j| cover::unit(m.ring(), j)).collect())
    }

    pub fn zero(m: &PresMod) -> Self {
        Submodule { ambient: m.clone(), gens: Vec::new() }
    }

    pub fn ambient(&self) -> &PresMod {
        &self.ambient
    }

    pub fn generators(&self) -> Vec<Vec<TruncElem>> {
        self.gens.iter().map(|v| self.ambient.coordinates(v)).collect()
    }

    pub(crate) fn vectors(&self) -> &[Vector] {
        &self.gens
    }

    fn with_relations(&self) -> Vec<Vector> {
        let mut v = self.gens.clone();
        v.extend(self.ambient.relation_vectors().iter().cloned());
        v
    }

    pub(crate) fn membership(&self) -> Membership {
        cover::membership(self.ambient.ring(), &self.with_relations(), self.ambient.ngens())
    }

    pub(crate) fn contains_vector(&self, v: &Vector) -> bool {
        self.membership().contains(v)
    }

    pub fn contains(&self, comps: &[TruncElem]) -> Result<bool> {
        Ok(self.contains_vector(&self.ambient.element(comps)?))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subset_of(&self, other: &Submodule, loc: Locality) -> bool {
        match loc {
            Locality::Global => other.membership().contains_all(&self.gens),
            Locality::AtOrigin => match self.quotient_over(other) {
                Ok(q) => q.fiber_dim() == 0,
                Err(_) => false,
            },
        }
    }

    pub fn equals(&self, other: &Submodule, loc: Locality) -> bool {
        self.is_subset_of(other, loc) && other.is_subset_of(self, loc)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Submodule::from_vectors(&self.ambient, g)
    }

    /// Intersection inside the ambient module (i.e. modulo its relations).
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        let ring = self.ambient.ring();
        let coeffs = cover::kernel(ring, &self.gens, &other.with_relations(), self.ambient.ngens());
        let gens = coeffs.iter().map(|c| cover::combine(ring, c, &self.gens)).collect();
        Submodule::from_vectors(&self.ambient, gens)
    }

    /// The submodule as a module in its own right.
    pub fn as_module(&self) -> Result<PresMod> {
        subquotient(
            self.ambient.ring(),
            self.ambient.ngens(),
            &self.gens,
            self.ambient.relation_vectors(),
            self.ambient.grading(),
        )
    }

    /// `ambient / self`.
    pub fn cokernel(&self) -> Result<PresMod> {
        self.ambient.quotient_vectors(&self.gens)
    }

    /// `(self + smaller) / smaller`, generated by the images of `self`'s
    /// generators.
    pub fn quotient_over(&self, smaller: &Submodule) -> Result<PresMod> {
        subquotient(
            self.ambient.ring(),
            self.ambient.ngens(),
            &self.gens,
            &smaller.with_relations(),
            self.ambient.grading(),
        )
    }

    /// First generator of `self` that is not in `other` (globally or in the
    /// fiber at the origin).
    pub(crate) fn witness_outside(&self, other: &Submodule, loc: Locality) -> Option<Vector> {
        match loc {
            Locality::Global => {
                let m = other.membership();
                self.gens.iter().find(|g| !m.contains(g)).cloned()
            }
            Locality::AtOrigin => {
                let q = self.quotient_over(other).ok()?;
                q.fiber_basis().first().map(|&k| self.gens[k].clone())
            }
        }
    }
}
