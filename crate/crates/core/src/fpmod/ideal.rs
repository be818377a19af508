use super::cover::{self, top, Lifter};
use super::filtration::{is_balanced, BalanceCertificate};
use super::presmod::{subquotient, Grading, PresMod};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::multiring::{TruncElem, TruncRing};

/// An ideal of `R[n]` viewed as a module over it, presented on its
/// generators by their syzygies.
#[derive(Clone, Debug)]
pub struct IdealModule {
    ring: TruncRing,
    gens: Vec<TruncElem>,
    module: PresMod,
}

/// Balanced test for an ideal, with the witness expressed in `R[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBalance {
    pub balanced: bool,
    /// `i` such that the witness lies in `J^(n-i) \ t^i J`.
    pub level: Option<u32>,
    /// Normal form modulo `t^i J`, made monic.
    pub witness: Option<TruncElem>,
    /// Coefficients `c` with `sum c_k f_k = witness`.
    pub certificate: Option<Vec<TruncElem>>,
}

impl IdealModule {
    /// Graded when every generator is homogeneous for the standard weights
    /// and the given weight of `t`.
    pub fn new(ring: &TruncRing, gens: &[TruncElem], t_weight: Option<i64>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch("generator outside the ring".into()));
        }
        let vs: Vec<Vector> = gens.iter().map(|g| cover::from_elems(ring, std::slice::from_ref(g))).collect();
        let grading = t_weight.map(|tw| Grading::standard(ring.nbase(), tw, vec![0]));
        let module = subquotient(ring, 1, &vs, &[], grading.as_ref())?;
        Ok(IdealModule { ring: ring.clone(), gens: gens.to_vec(), module })
    }

    pub fn generators(&self) -> &[TruncElem] {
        &self.gens
    }

    pub fn module(&self) -> &PresMod {
        &self.module
    }

    fn vectors(&self) -> Vec<Vector> {
        self.gens.iter().map(|g| cover::from_elems(&self.ring, std::slice::from_ref(g))).collect()
    }

    /// `sum c_k f_k`.
    pub fn image(&self, c: &[TruncElem]) -> Result<TruncElem> {
        let v = self.module.element(c)?;
        let img = cover::combine(&self.ring, &v, &self.vectors());
        Ok(cover::to_elems(&self.ring, &img, 1).remove(0))
    }

    /// Coefficients expressing `f` in the generators, reduced modulo the
    /// syzygies; `None` if `f` is not in the ideal.
    pub fn certificate(&self, f: &TruncElem) -> Option<Vec<TruncElem>> {
        let lifter = Lifter::new(&self.ring, &self.vectors(), &[], 1);
        let c = lifter.lift(&cover::from_elems(&self.ring, std::slice::from_ref(f)))?;
        Some(self.module.coordinates(&self.module.normal_form(&c)))
    }

    pub fn contains(&self, f: &TruncElem) -> bool {
        self.certificate(f).is_some()
    }

    pub fn balance(&self) -> Result<IdealBalance> {
        let (balanced, cert) = is_balanced(&self.module)?;
        let BalanceCertificate::Witness { i, element } = cert else {
            return Ok(IdealBalance { balanced, level: None, witness: None, certificate: None });
        };
        let img = cover::from_elems(&self.ring, &[self.image(&element)?]);
        let shifted: Vec<Vector> = self.vectors().iter().map(|v| cover::t_pow_times(&self.ring, v, i)).collect();
        let nf = cover::membership(&self.ring, &shifted, 1).normal_form(&img).resort(&top(&self.ring));
        let w = cover::to_elems(&self.ring, &nf.monic(), 1).remove(0);
        let certificate = self
            .certificate(&w)
            .ok_or_else(|| Error::cross("ideal balance", "witness is not in the ideal"))?;
        if self.image(&certificate)? != w {
            return Err(Error::cross("ideal balance", "certificate does not reproduce the witness"));
        }
        Ok(IdealBalance { balanced, level: Some(i), witness: Some(w), certificate: Some(certificate) })
    }
}
