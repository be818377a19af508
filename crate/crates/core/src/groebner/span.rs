//! Kernels, lifts and memberships in free modules, built on the tag trick:
//! a generator `v_i` is paired with a fresh basis vector `e_{r+i}` and the
//! Groebner basis is taken in an order that eliminates the first `r`
//! components.

use super::buchberger::{groebner, unit_vector, Reducer};
use super::vector::{ModOrder, PosOrder, Vector};
use crate::arith::MonomialOrder;

/// Groebner data for `span(gens) + span(extra)` inside `F = R^rank`, with
/// enough bookkeeping to express members in terms of `gens`.
pub(crate) struct Span {
    rank: usize,
    ngens: usize,
    ord: ModOrder,
    gb: Vec<Vector>,
}

impl Span {
    pub(crate) fn new(gens: &[Vector], extra: &[Vector], rank: usize, mono: MonomialOrder, nvars: usize) -> Span {
        let ord = ModOrder::split(mono, rank);
        let mut input: Vec<Vector> = Vec::with_capacity(gens.len() + extra.len());
        for (i, g) in gens.iter().enumerate() {
            input.push(g.add(&unit_vector(nvars, rank + i), &ord).resort(&ord));
        }
        for e in extra {
            input.push(e.resort(&ord));
        }
        let gb = groebner(&input, &ord, false);
        Span { rank, ngens: gens.len(), ord, gb }
    }

    /// Generators of `{c in R^k : sum c_i gens_i in span(extra)}`, in TOP order.
    pub(crate) fn kernel(&self) -> Vec<Vector> {
        let top = ModOrder::top(self.ord.mono);
        self.gb
            .iter()
            .filter(|g| g.lead().unwrap().comp as usize >= self.rank)
            .map(|g| g.project(self.rank..self.rank + self.ngens).resort(&top))
            .collect()
    }

    /// Coefficients `c` with `f - sum c_i gens_i in span(extra)`, if any.
    pub(crate) fn lift(&self, f: &Vector) -> Option<Vector> {
        let f = f.resort(&self.ord);
        let r = Reducer::new(self.gb.iter()).reduce(&f, &self.ord, true);
        if r.terms.iter().any(|t| (t.comp as usize) < self.rank) {
            return None;
        }
        let top = ModOrder::top(self.ord.mono);
        Some(r.project(self.rank..self.rank + self.ngens).neg().resort(&top))
    }
}

/// Plain Groebner basis of a submodule in TOP order, for membership tests
/// and normal forms.
pub(crate) struct Membership {
    ord: ModOrder,
    gb: Vec<Vector>,
}

impl Membership {
    pub(crate) fn new(gens: &[Vector], mono: MonomialOrder, ideal_mode: bool) -> Self {
        let ord = ModOrder { mono, pos: PosOrder::Top };
        let input: Vec<Vector> = gens.iter().map(|g| g.resort(&ord)).collect();
        Membership { gb: groebner(&input, &ord, ideal_mode), ord }
    }

    pub(crate) fn gb(&self) -> &[Vector] {
        &self.gb
    }

    pub(crate) fn contains(&self, f: &Vector) -> bool {
        Reducer::new(self.gb.iter()).reduce(&f.resort(&self.ord), &self.ord, false).is_zero()
    }

    pub(crate) fn normal_form(&self, f: &Vector) -> Vector {
        Reducer::new(self.gb.iter()).reduce(&f.resort(&self.ord), &self.ord, true)
    }

    pub(crate) fn contains_all(&self, fs: &[Vector]) -> bool {
        let red = Reducer::new(self.gb.iter());
        fs.iter().all(|f| red.reduce(&f.resort(&self.ord), &self.ord, false).is_zero())
    }
}
