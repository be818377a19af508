use super::cover::{self, combine};
use super::presmod::{Locality, PresMod, Submodule};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::multiring::TruncElem;

/// `R[n]`-linear map between presented modules, given by the images of the
/// source generators.
#[derive(Clone, Debug)]
pub struct ModMap {
    source: PresMod,
    target: PresMod,
    images: Vec<Vector>,
}

impl ModMap {
    /// Fails with `IllDefinedMap` if some source relation does not map to
    /// zero.
    pub fn new(source: &PresMod, target: &PresMod, images: &[Vec<TruncElem>]) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::InvalidInput(format!("need {} images, got {}", source.ngens(), images.len())));
        }
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("source and target over different rings".into()));
        }
        let images = images.iter().map(|v| target.element(v)).collect::<Result<Vec<_>>>()?;
        Self::from_vectors(source, target, images)
    }

    pub(crate) fn from_vectors(source: &PresMod, target: &PresMod, images: Vec<Vector>) -> Result<Self> {
        let ring = source.ring();
        for (k, r) in source.relation_vectors().iter().enumerate() {
            if !target.is_zero_vector(&combine(ring, r, &images)) {
                return Err(Error::IllDefinedMap(format!("relation {k} of the source does not map to zero")));
            }
        }
        Ok(Self::unchecked(source, target, images))
    }

    pub(crate) fn unchecked(source: &PresMod, target: &PresMod, images: Vec<Vector>) -> Self {
        let images = images.iter().map(|v| target.normal_form(v)).collect();
        ModMap { source: source.clone(), target: target.clone(), images }
    }

    pub fn identity(m: &PresMod) -> Self {
        let images = (0..m.ngens()).map(|j| cover::unit(m.ring(), j)).collect();
        Self::unchecked(m, m, images)
    }

    pub fn zero(source: &PresMod, target: &PresMod) -> Self {
        Self::unchecked(source, target, vec![Vector::zero(); source.ngens()])
    }

    pub fn source(&self) -> &PresMod {
        &self.source
    }

    pub fn target(&self) -> &PresMod {
        &self.target
    }

    pub fn images(&self) -> Vec<Vec<TruncElem>> {
        self.images.iter().map(|v| self.target.coordinates(v)).collect()
    }

    pub(crate) fn image_vectors(&self) -> &[Vector] {
        &self.images
    }

    pub(crate) fn apply_vector(&self, v: &Vector) -> Vector {
        self.target.normal_form(&combine(self.source.ring(), v, &self.images))
    }

    pub fn apply(&self, comps: &[TruncElem]) -> Result<Vec<TruncElem>> {
        let v = self.source.element(comps)?;
        Ok(self.target.coordinates(&self.apply_vector(&v)))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModMap) -> Result<ModMap> {
        if first.target.ring() != self.source.ring() || first.target.ngens() != self.source.ngens() {
            return Err(Error::InvalidInput("maps are not composable".into()));
        }
        let images = first.images.iter().map(|v| self.apply_vector(v)).collect();
        Ok(Self::unchecked(&first.source, &self.target, images))
    }

    pub(crate) fn kernel_vectors(&self) -> Vec<Vector> {
        cover::kernel(self.source.ring(), &self.images, self.target.relation_vectors(), self.target.ngens())
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_vectors(&self.source, self.kernel_vectors())
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_vectors(&self.target, self.images.clone())
    }

    pub fn cokernel(&self) -> Result<PresMod> {
        self.target.quotient_vectors(&self.images)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vector::is_zero)
    }

    pub fn is_injective(&self, loc: Locality) -> Result<bool> {
        let k = self.kernel();
        Ok(match loc {
            Locality::Global => k.is_zero(),
            Locality::AtOrigin => k.as_module()?.fiber_dim() == 0,
        })
    }

    pub fn is_surjective(&self, loc: Locality) -> Result<bool> {
        Ok(self.cokernel()?.vanishes(loc))
    }
}
