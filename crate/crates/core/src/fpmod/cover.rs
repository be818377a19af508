//! Free-cover plumbing shared by every module construction. All vectors are
//! elements of some `R[n]^k`, stored in TOP order over the full ring
//! `Q[x, t]`, with `t^n e_j` adjoined whenever spans are computed.

use crate::arith::{Monomial, Poly, Rational};
use crate::groebner::{unit_vector, Membership, ModOrder, Span, VTerm, Vector};
use crate::multiring::{TruncElem, TruncRing};

pub(crate) fn top(ring: &TruncRing) -> ModOrder {
    ModOrder::top(ring.order())
}

pub(crate) fn tn_rels(ring: &TruncRing, rank: usize) -> Vec<Vector> {
    let m = Monomial::var(ring.nvars_full(), ring.t_index(), ring.n());
    (0..rank)
        .map(|j| Vector { terms: vec![VTerm { mon: m.clone(), comp: j as u32, coeff: Rational::from_integer(1.into()) }] })
        .collect()
}

pub(crate) fn trunc(ring: &TruncRing, v: &Vector) -> Vector {
    v.truncate_var(ring.t_index(), ring.n())
}

pub(crate) fn unit(ring: &TruncRing, comp: usize) -> Vector {
    unit_vector(ring.nvars_full(), comp)
}

pub(crate) fn t_pow_times(ring: &TruncRing, v: &Vector, e: u32) -> Vector {
    let m = Monomial::var(ring.nvars_full(), ring.t_index(), e);
    trunc(ring, &v.mul_term(&m, &Rational::from_integer(1.into())))
}

/// `sum_i c_i v_i` for `c` in `R[n]^k`.
pub(crate) fn combine(ring: &TruncRing, c: &Vector, vs: &[Vector]) -> Vector {
    let ord = top(ring);
    let mut acc = Vector::zero();
    for t in c.terms() {
        acc = acc.add(&vs[t.comp as usize].mul_term(&t.mon, &t.coeff), &ord);
    }
    trunc(ring, &acc)
}

/// Places each vector of `vs` (rank `r`) in block `b` of a rank `r * blocks` module.
pub(crate) fn in_block(ring: &TruncRing, v: &Vector, block: usize, block_rank: usize) -> Vector {
    v.shift_comps(block * block_rank, &top(ring))
}

/// Generators of `{c in R[n]^k : sum c_i images_i in span(extra) + t^n F}`.
pub(crate) fn kernel(ring: &TruncRing, images: &[Vector], extra: &[Vector], rank: usize) -> Vec<Vector> {
    let mut ex: Vec<Vector> = extra.to_vec();
    ex.extend(tn_rels(ring, rank));
    let span = Span::new(images, &ex, rank, ring.order(), ring.nvars_full());
    let mut out: Vec<Vector> = span.kernel().iter().map(|v| trunc(ring, v)).filter(|v| !v.is_zero()).collect();
    out.dedup();
    out
}

/// Expresses members of `span(gens) + span(extra)` in terms of `gens`.
pub(crate) struct Lifter {
    ring: TruncRing,
    span: Span,
}

impl Lifter {
    pub(crate) fn new(ring: &TruncRing, gens: &[Vector], extra: &[Vector], rank: usize) -> Self {
        let mut ex: Vec<Vector> = extra.to_vec();
        ex.extend(tn_rels(ring, rank));
        Lifter { ring: ring.clone(), span: Span::new(gens, &ex, rank, ring.order(), ring.nvars_full()) }
    }

    pub(crate) fn lift(&self, v: &Vector) -> Option<Vector> {
        self.span.lift(v).map(|c| trunc(&self.ring, &c))
    }
}

/// Membership in `span(gens) + t^n F`.
pub(crate) fn membership(ring: &TruncRing, gens: &[Vector], rank: usize) -> Membership {
    let mut all: Vec<Vector> = gens.to_vec();
    all.extend(tn_rels(ring, rank));
    Membership::new(&all, ring.order(), rank == 1)
}

pub(crate) fn from_elems(ring: &TruncRing, comps: &[TruncElem]) -> Vector {
    let polys: Vec<Poly> = comps.iter().map(TruncElem::to_full).collect();
    trunc(ring, &Vector::from_polys(&polys, &top(ring)))
}

pub(crate) fn to_elems(ring: &TruncRing, v: &Vector, rank: usize) -> Vec<TruncElem> {
    v.to_polys(ring.full(), rank).iter().map(|p| TruncElem::from_full(ring, p)).collect()
}

/// Rows are the constant parts of `vs`, as vectors of length `rank`.
pub(crate) fn constant_rows(vs: &[Vector], rank: usize) -> Vec<Vec<Rational>> {
    vs.iter()
        .map(|v| {
            let mut row = vec![Rational::from_integer(0.into()); rank];
            for (c, q) in v.constant_part() {
                row[c as usize] = q;
            }
            row
        })
        .collect()
}
