use super::cover::{self, top};
use super::map::ModMap;
use super::presmod::{Grading, Locality, PresMod, Submodule};
use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::multiring::{TruncElem, TruncRing};

/// An extension `0 -> N -> P -> M -> 0` with its two maps.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: PresMod,
    pub inclusion: ModMap,
    pub projection: ModMap,
}

impl Extension {
    /// Injectivity, surjectivity and exactness in the middle.
    pub fn is_exact(&self) -> Result<bool> {
        if !self.inclusion.is_injective(Locality::Global)? || !self.projection.is_surjective(Locality::Global)? {
            return Ok(false);
        }
        let im: Submodule = self.inclusion.image();
        let ker = self.projection.kernel();
        Ok(im.equals(&ker, Locality::Global))
    }
}

/// The extension of `M` by `N` defined by `f1`, a map from the free module on
/// the relations of `M` to `N` that kills their syzygies: the cokernel of
/// `F_1 -> N ⊕ F_0`, `e_i -> (f1(e_i), r_i)`.
pub fn build_extension(n: &PresMod, m: &PresMod, f1: &ModMap) -> Result<Extension> {
    let ring = m.ring();
    if n.ring() != ring || f1.source().ring() != ring {
        return Err(Error::RingMismatch("extension data over different rings".into()));
    }
    let rels = m.relation_vectors();
    if f1.source().ngens() != rels.len() || !f1.source().relation_vectors().is_empty() {
        return Err(Error::InvalidInput("f1 must be defined on the free module of relations of M".into()));
    }
    if f1.target().ngens() != n.ngens() || f1.target().relation_vectors() != n.relation_vectors() {
        return Err(Error::InvalidInput("f1 must take values in N".into()));
    }
    for z in cover::kernel(ring, rels, &[], m.ngens()) {
        if !n.is_zero_vector(&f1.apply_vector(&z)) {
            return Err(Error::IllDefinedMap("f1 does not vanish on the syzygies of M".into()));
        }
    }
    let h = n.ngens();
    let ord = top(ring);
    let mut prels: Vec<Vector> = n.relation_vectors().to_vec();
    for (r, img) in rels.iter().zip(f1.image_vectors()) {
        prels.push(img.add(&r.shift_comps(h, &ord), &ord));
    }
    let grading = match (n.grading(), m.grading()) {
        (Some(gn), Some(gm)) if gn.var_weights == gm.var_weights && gn.t_weight == gm.t_weight => {
            let mut d = gn.gen_degrees.clone();
            d.extend(gm.gen_degrees.iter().copied());
            Some(gn.with_degrees(d))
        }
        _ => None,
    };
    let total = h + m.ngens();
    let p = PresMod::from_vectors(ring, total, prels.clone(), grading)
        .or_else(|_| PresMod::from_vectors(ring, total, prels, None))?;
    let inclusion = ModMap::from_vectors(n, &p, (0..h).map(|l| cover::unit(ring, l)).collect())?;
    let proj_images =
        (0..total).map(|k| if k < h { Vector::zero() } else { cover::unit(ring, k - h) }).collect();
    let projection = ModMap::from_vectors(&p, m, proj_images)?;
    Ok(Extension { module: p, inclusion, projection })
}

/// The extension `0 -> R[i] -> P -> R -> 0` with class `sigma`, where `R`
/// is `R[n]/(t)`: `P = (R[i] ⊕ R[n]) / (sigma, t)`.
#[allow(non_snake_case)]
pub fn extension_R_by_Ri(ring: &TruncRing, sigma: &Poly, i: u32) -> Result<Extension> {
    if i == 0 || i >= ring.n() {
        return Err(Error::InvalidInput(format!("need 1 <= i <= n - 1, got i = {i}")));
    }
    let grading = sigma
        .is_homogeneous(&vec![1; ring.nbase()])
        .then(|| Grading::standard(ring.nbase(), 0, vec![-(sigma.total_degree().unwrap_or(0) as i64)]));
    let n_mod = PresMod::truncated(ring, i, grading.clone())?;
    let r = PresMod::truncated(ring, 1, grading.as_ref().map(|g| g.with_degrees(vec![0])))?;
    let f1_src = PresMod::free(ring, 1);
    let f1 = ModMap::from_vectors(&f1_src, &n_mod, vec![cover::from_elems(ring, &[TruncElem::from_base(ring, sigma)])])?;
    build_extension(&n_mod, &r, &f1)
}

