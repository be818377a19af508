//! Duals, the canonical map to the double dual, and torsion submodules.

use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::fpmod::cover::{self, Lifter};
use crate::fpmod::{hom_module, Grading, HomModule, Locality, ModMap, PresMod, Submodule};
use crate::groebner::{syzygy_basis, FreeModuleElement, Vector};
use crate::linalg::right_nullspace;
use crate::multiring::TruncElem;

/// `R[n]` itself, graded compatibly with `m` when `m` is graded.
fn base_free(m: &PresMod) -> Result<PresMod> {
    match m.grading() {
        Some(g) => PresMod::free_graded(m.ring(), Grading { gen_degrees: vec![0], ..g.clone() }),
        None => Ok(PresMod::free(m.ring(), 1)),
    }
}

fn dual_hom(m: &PresMod) -> Result<HomModule> {
    hom_module(m, &base_free(m)?)
}

/// `M^∨ = Hom(M, R[n])`.
pub fn dual(m: &PresMod) -> Result<PresMod> {
    Ok(dual_hom(m)?.module().clone())
}

/// The map `M -> R[n]^k`, `m -> (psi_1(m), .., psi_k(m))`, for the
/// generators `psi_k` of `M^∨`.
fn evaluation(m: &PresMod, d: &HomModule) -> Result<ModMap> {
    let ring = m.ring();
    let psis = d.gen_vectors();
    let k = psis.len();
    let images: Vec<Vector> = (0..m.ngens())
        .map(|j| {
            let comps: Vec<TruncElem> = psis
                .iter()
                .map(|psi| cover::to_elems(ring, psi, m.ngens())[j].clone())
                .collect();
            cover::from_elems(ring, &comps)
        })
        .collect();
    ModMap::from_vectors(m, &PresMod::free(ring, k), images)
}

/// The canonical map `t_M : M -> M^∨∨`.
pub fn natural_map(m: &PresMod) -> Result<ModMap> {
    let ring = m.ring();
    let d = dual_hom(m)?;
    let dd = dual_hom(d.module())?;
    let ev = evaluation(m, &d)?;
    // ev_j lives in R[n]^k, which contains M^∨∨ as the span of its generators
    let lifter = Lifter::new(ring, dd.gen_vectors(), &[], d.module().ngens());
    let images = ev
        .image_vectors()
        .iter()
        .map(|v| lifter.lift(v).ok_or_else(|| Error::cross("natural_map", "evaluation is outside the double dual")))
        .collect::<Result<Vec<_>>>()?;
    ModMap::from_vectors(m, dd.module(), images)
}

/// The torsion submodule with one annihilator witness per generator.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub torsion: Submodule,
    /// `(g, s)` with `s g = 0` and `s` not a zero divisor.
    pub witnesses: Vec<(Vec<TruncElem>, TruncElem)>,
}

impl TorsionReport {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_zero()
    }
}

/// `T(M) = ker(t_M)`, checked against the torsion of `M` as an `R`-module
/// computed over the fraction field of `R`.
pub fn torsion(m: &PresMod) -> Result<TorsionReport> {
    let ring = m.ring();
    let primary = natural_map(m)?.kernel();
    let oracle = Submodule::from_vectors(m, r_torsion(m)?);
    if !primary.equals(&oracle, Locality::Global) {
        return Err(Error::cross("torsion", "double-dual kernel and fraction-field torsion differ"));
    }
    let mut witnesses = Vec::new();
    for g in primary.vectors() {
        let ann = cover::kernel(ring, std::slice::from_ref(g), m.relation_vectors(), m.ngens());
        let s = ann
            .iter()
            .map(|a| cover::to_elems(ring, a, 1).remove(0))
            .find(|s| !s.u0().is_zero())
            .ok_or_else(|| Error::cross("torsion", "torsion generator without a regular annihilator"))?;
        if !m.is_zero_vector(&cover::combine(ring, &cover::from_elems(ring, &[s.clone()]), std::slice::from_ref(g))) {
            return Err(Error::cross("torsion", "annihilator witness does not kill its generator"));
        }
        witnesses.push((m.coordinates(g), s));
    }
    Ok(TorsionReport { torsion: primary, witnesses })
}

/// Torsion of `M` viewed as an `R`-module on the basis `t^e e_j`: the
/// elements lying in the span of the relations over `Frac(R)`.
fn r_torsion(m: &PresMod) -> Result<Vec<Vector>> {
    let ring = m.ring();
    let base = ring.base();
    let n = ring.n() as usize;
    let g = m.ngens();
    let width = g * n;
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for r in m.relation_vectors() {
        let comps = cover::to_elems(ring, r, g);
        for s in 0..n {
            let mut row = vec![Poly::zero(base); width];
            for (j, c) in comps.iter().enumerate() {
                for e in 0..n - s {
                    row[j * n + e + s] = c.coeff(e).clone();
                }
            }
            if row.iter().any(|p| !p.is_zero()) {
                rows.push(row);
            }
        }
    }
    let units = |k: usize| -> Vec<Vec<Poly>> {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { Poly::one(base) } else { Poly::zero(base) }).collect())
            .collect()
    };
    let checks = if rows.is_empty() { units(width) } else { right_nullspace(base, rows, width) };
    // {m in R^width : <c, m> = 0 for every c in checks}
    let coords: Vec<Vec<Poly>> = if checks.is_empty() {
        units(width)
    } else {
        let cols = (0..width)
            .map(|k| FreeModuleElement::new(base, checks.iter().map(|c| c[k].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        syzygy_basis(&cols)?.iter().map(|s| s.components().to_vec()).collect()
    };
    Ok(coords
        .iter()
        .map(|c| {
            let elems: Vec<TruncElem> = (0..g)
                .map(|j| TruncElem::new(ring, c[j * n..(j + 1) * n].to_vec()))
                .collect::<Result<Vec<_>>>()?;
            Ok(cover::from_elems(ring, &elems))
        })
        .collect::<Result<Vec<_>>>()?)
}

/// For torsion-free `M`, the injective evaluation map into a free module.
pub fn free_embedding(m: &PresMod) -> Result<Option<ModMap>> {
    let ev = evaluation(m, &dual_hom(m)?)?;
    Ok(if ev.is_injective(Locality::Global)? { Some(ev) } else { None })
}
