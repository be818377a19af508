use super::cover::{self, top};
use super::map::ModMap;
use super::presmod::{subquotient, Grading, PresMod};
use crate::error::{Error, Result};
use crate::groebner::{VTerm, Vector};
use crate::multiring::TruncElem;

/// `Hom(M, N)` together with the data needed to turn its elements into maps.
#[derive(Clone, Debug)]
pub struct HomModule {
    module: PresMod,
    source: PresMod,
    target: PresMod,
    /// Generators as vectors of `R[n]^{g h}`, coordinate `(j, l)` at `j h + l`.
    gens: Vec<Vector>,
}

impl HomModule {
    pub fn module(&self) -> &PresMod {
        &self.module
    }

    pub(crate) fn gen_vectors(&self) -> &[Vector] {
        &self.gens
    }

    /// The map `M -> N` represented by an element of `Hom(M, N)`.
    pub fn evaluate(&self, elem: &[TruncElem]) -> Result<ModMap> {
        let c = self.module.element(elem)?;
        let ring = self.source.ring();
        let v = cover::combine(ring, &c, &self.gens);
        let h = self.target.ngens();
        let images = (0..self.source.ngens()).map(|j| block(&v, j, h, &top(ring))).collect();
        ModMap::from_vectors(&self.source, &self.target, images)
    }

    /// The map given by the `k`-th generator.
    pub fn generator_map(&self, k: usize) -> Result<ModMap> {
        let mut e = vec![self.module.ring().zero(); self.module.ngens()];
        e[k] = self.module.ring().one();
        self.evaluate(&e)
    }
}

/// Component block `j` (of width `h`) of `v`, shifted down to `R[n]^h`.
fn block(v: &Vector, j: usize, h: usize, ord: &crate::groebner::ModOrder) -> Vector {
    let lo = (j * h) as u32;
    let terms = v
        .terms()
        .iter()
        .filter(|t| t.comp >= lo && t.comp < lo + h as u32)
        .map(|t| VTerm { mon: t.mon.clone(), comp: t.comp - lo, coeff: t.coeff.clone() })
        .collect();
    Vector::from_terms(terms, ord)
}

/// Images of `e_(j,l)` under `(psi_j) -> (sum_j a_ij psi_j)_i` for the rows
/// `a_i` (vectors of `R[n]^cols`), landing in `R[n]^{rows h}`.
fn transpose_map(ring: &crate::multiring::TruncRing, rows: &[Vector], cols: usize, h: usize) -> Vec<Vector> {
    let ord = top(ring);
    let mut out = Vec::with_capacity(cols * h);
    for j in 0..cols {
        for l in 0..h {
            let terms = rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| {
                    r.terms()
                        .iter()
                        .filter(|t| t.comp as usize == j)
                        .map(move |t| VTerm { mon: t.mon.clone(), comp: (i * h + l) as u32, coeff: t.coeff.clone() })
                })
                .collect();
            out.push(Vector::from_terms(terms, &ord));
        }
    }
    out
}

/// `k` copies of the relations of `n`, one per block.
fn blocks_of(n: &PresMod, k: usize) -> Vec<Vector> {
    let ring = n.ring();
    let h = n.ngens();
    (0..k).flat_map(|b| n.relation_vectors().iter().map(move |r| cover::in_block(ring, r, b, h))).collect()
}

fn units(ring: &crate::multiring::TruncRing, k: usize) -> Vec<Vector> {
    (0..k).map(|j| cover::unit(ring, j)).collect()
}

fn combined_grading(m: &PresMod, n: &PresMod, m_degs: &[i64]) -> Option<Grading> {
    let (gm, gn) = (m.grading()?, n.grading()?);
    if gm.var_weights != gn.var_weights || gm.t_weight != gn.t_weight {
        return None;
    }
    let degs = m_degs.iter().flat_map(|dm| gn.gen_degrees.iter().map(move |dn| dn - dm)).collect();
    Some(gn.with_degrees(degs))
}

/// `Hom_{R[n]}(M, N)`.
pub fn hom_module(m: &PresMod, n: &PresMod) -> Result<HomModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch("modules over different rings".into()));
    }
    let ring = m.ring();
    let (g, h) = (m.ngens(), n.ngens());
    let rels = m.relation_vectors();
    let num = if rels.is_empty() {
        units(ring, g * h)
    } else {
        let images = transpose_map(ring, rels, g, h);
        cover::kernel(ring, &images, &blocks_of(n, rels.len()), rels.len() * h)
    };
    let grading = m.grading().and_then(|gm| combined_grading(m, n, &gm.gen_degrees));
    let module = subquotient(ring, g * h, &num, &blocks_of(n, g), grading.as_ref())?;
    Ok(HomModule { module, source: m.clone(), target: n.clone(), gens: num })
}

/// `Ext^1_{R[n]}(M, N)`, from the presentation `F_2 -> F_1 -> F_0 -> M`.
pub fn ext1_module(m: &PresMod, n: &PresMod) -> Result<PresMod> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch("modules over different rings".into()));
    }
    let ring = m.ring();
    let (g, h) = (m.ngens(), n.ngens());
    let rels = m.relation_vectors();
    let s = rels.len();
    if s == 0 {
        return PresMod::from_vectors(ring, 0, Vec::new(), None);
    }
    let syz = cover::kernel(ring, rels, &[], g);
    let d1 = transpose_map(ring, rels, g, h);
    let cycles = if syz.is_empty() {
        units(ring, s * h)
    } else {
        let d2 = transpose_map(ring, &syz, s, h);
        cover::kernel(ring, &d2, &blocks_of(n, syz.len()), syz.len() * h)
    };
    let mut den = blocks_of(n, s);
    den.extend(d1);
    let grading = match (m.grading(), n.grading()) {
        (Some(gm), Some(_)) => {
            let w = gm.full_weights();
            let rel_degs: Option<Vec<i64>> =
                rels.iter().map(|r| r.max_degree(&w, &gm.gen_degrees)).collect();
            rel_degs.and_then(|d| combined_grading(m, n, &d))
        }
        _ => None,
    };
    subquotient(ring, s * h, &cycles, &den, grading.as_ref())
}
