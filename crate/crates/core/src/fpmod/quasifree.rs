
use super::cover;
use super::filtration::first_members;
use super::map::ModMap;
use super::presmod::{Locality, PresMod};
use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::groebner::{VTerm, Vector};
use crate::linalg::generic_rank;

/// Result of the quasi-free test: either the type `(m_1, .., m_n)` with
/// `M ≅ ⊕ R[i]^{m_i}` near the origin, or the first graded piece `G_i` that
/// is not free there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiFreeType {
    Type(Vec<usize>),
    Absent { first_nonfree: Option<usize> },
}

impl QuasiFreeType {
    pub fn type_vector(&self) -> Option<&[usize]> {
        match self {
            QuasiFreeType::Type(v) => Some(v),
            QuasiFreeType::Absent { .. } => None,
        }
    }
}

fn t_free(v: &Vector, t: usize) -> Vec<VTerm> {
    v.terms().iter().filter(|x| x.mon.exp(t) == 0).cloned().collect()
}

/// Whether a module killed by `t` is free over `R` near the origin; returns
/// its rank when it is.
fn local_rank_if_free(g: &PresMod) -> Option<usize> {
    let ring = g.ring();
    let basis = g.fiber_basis();
    let gens: Vec<Vector> = basis.iter().map(|&j| cover::unit(ring, j)).collect();
    // kernel of R[n]^r -> G on the fiber basis; free iff it lies in t R[n]^r
    let ker = cover::kernel(ring, &gens, g.relation_vectors(), g.ngens());
    let t = ring.t_index();
    if ker.iter().all(|k| t_free(k, t).is_empty()) {
        Some(basis.len())
    } else {
        None
    }
}

/// Type of `M` as a quasi-free module near the origin. For graded modules
/// this agrees with the global answer.
pub fn quasi_free_type(m: &PresMod) -> Result<QuasiFreeType> {
    let first = first_members(m);
    let n = m.ring().n() as usize;
    let mut ranks = Vec::with_capacity(n + 1);
    for i in 0..n {
        let g = first[i].quotient_over(&first[i + 1])?;
        match local_rank_if_free(&g) {
            Some(r) => ranks.push(r as i64),
            None => return Ok(QuasiFreeType::Absent { first_nonfree: Some(i) }),
        }
    }
    ranks.push(0);
    let ty: Vec<i64> = (1..=n).map(|i| ranks[i - 1] - ranks[i]).collect();
    if ty.iter().any(|&x| x < 0) {
        return Ok(QuasiFreeType::Absent { first_nonfree: None });
    }
    Ok(QuasiFreeType::Type(ty.into_iter().map(|x| x as usize).collect()))
}

/// Type of `M ⊗ K[n]`, `K` the fraction field of `R`, from the generic ranks
/// of the graded pieces `G_i`.
pub fn generic_type(m: &PresMod) -> Result<Vec<usize>> {
    let ring = m.ring();
    let base = ring.base();
    let first = first_members(m);
    let n = ring.n() as usize;
    let mut ranks = Vec::with_capacity(n + 1);
    for i in 0..n {
        let g = first[i].quotient_over(&first[i + 1])?;
        // t acts by zero on G_i, so the t-free parts present it over R
        let rows: Vec<Vec<Poly>> = g
            .relation_vectors()
            .iter()
            .map(|r| {
                let v = Vector { terms: t_free(r, ring.t_index()) };
                cover::to_elems(ring, &v, g.ngens()).iter().map(|e| e.u0().clone()).collect()
            })
            .filter(|row: &Vec<Poly>| row.iter().any(|p| !p.is_zero()))
            .collect();
        let rk = if rows.is_empty() { 0 } else { generic_rank(base, rows) };
        ranks.push((g.ngens() - rk) as i64);
    }
    ranks.push(0);
    let ty: Vec<i64> = (1..=n).map(|i| ranks[i - 1] - ranks[i]).collect();
    if ty.iter().any(|&x| x < 0) {
        return Err(Error::cross("generic_type", format!("negative multiplicity in {ty:?}")));
    }
    Ok(ty.into_iter().map(|x| x as usize).collect())
}

/// Surjectivity of `phi` decided on its reduction modulo `t`, checked
/// against the cokernel over `R[n]`. The target must be quasi-free.
pub fn surjective_iff_restriction(phi: &ModMap) -> Result<bool> {
    if quasi_free_type(phi.target())?.type_vector().is_none() {
        return Err(Error::InvalidInput("target is not quasi-free".into()));
    }
    let ring = phi.target().ring();
    let mut rels: Vec<Vector> = phi.image_vectors().to_vec();
    rels.extend((0..phi.target().ngens()).map(|j| cover::t_pow_times(ring, &cover::unit(ring, j), 1)));
    let restricted = phi.target().quotient_vectors(&rels)?.is_zero();
    let direct = phi.is_surjective(Locality::Global)?;
    if restricted != direct {
        return Err(Error::cross("surjective_iff_restriction", format!("restriction {restricted}, direct {direct}")));
    }
    Ok(direct)
}

