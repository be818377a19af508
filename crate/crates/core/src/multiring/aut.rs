use num_traits::Zero;

use super::ring::{truncate_jet, TruncElem, TruncRing};
use crate::arith::Poly;
use crate::error::{Error, Result};

/// Truncated ring automorphism of `R[n]`, given as the substitution
/// `x_k -> x_k + f_{k,1} t + ...`, `t -> u_1 t + u_2 t^2 + ...`.
///
/// Elements act by pullback: `apply(f)` substitutes the images into `f`.
/// For `n = 2` the data is a vector `D = (f_{k,1})` and a multiplier
/// `alpha = u_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMap {
    ring: TruncRing,
    x_images: Vec<TruncElem>,
    t_image: TruncElem,
}

impl AutMap {
    pub fn new(ring: &TruncRing, x_images: Vec<TruncElem>, t_image: TruncElem) -> Result<Self> {
        if x_images.len() != ring.nbase() {
            return Err(Error::InvalidInput(format!("need {} variable images", ring.nbase())));
        }
        for (k, img) in x_images.iter().enumerate() {
            if img.ring() != ring {
                return Err(Error::RingMismatch("image outside the ring".into()));
            }
            if *img.u0() != Poly::var(ring.base(), k) {
                return Err(Error::InvalidInput(format!("image of {} is not the identity mod t", ring.base().vars()[k])));
            }
        }
        if t_image.ring() != ring || !t_image.u0().is_zero() {
            return Err(Error::InvalidInput("image of t must lie in (t)".into()));
        }
        let a = AutMap { ring: ring.clone(), x_images, t_image };
        a.check_unit()?;
        Ok(a)
    }

    fn check_unit(&self) -> Result<()> {
        if self.ring.n() >= 2 && self.t_image.coeff(1).evaluate_at_origin().is_zero() {
            return Err(Error::NotUnit(format!("coefficient of t in the image of t is {}", self.t_image.coeff(1))));
        }
        Ok(())
    }

    pub fn identity(ring: &TruncRing) -> Self {
        let x_images = (0..ring.nbase()).map(|k| TruncElem::from_base(ring, &Poly::var(ring.base(), k))).collect();
        let t_image = TruncElem::from_full(ring, &ring.t());
        AutMap { ring: ring.clone(), x_images, t_image }
    }

    /// The `n = 2` form `beta -> beta + D(beta) t`, `t -> alpha t`.
    pub fn from_derivation(ring: &TruncRing, d: &[Poly], alpha: &Poly) -> Result<Self> {
        if ring.n() != 2 {
            return Err(Error::InvalidInput("derivation data describes n = 2 only".into()));
        }
        if d.len() != ring.nbase() {
            return Err(Error::InvalidInput(format!("D needs {} entries", ring.nbase())));
        }
        let x_images = d
            .iter()
            .enumerate()
            .map(|(k, dk)| TruncElem::new(ring, vec![Poly::var(ring.base(), k), dk.clone()]))
            .collect::<Result<Vec<_>>>()?;
        let t_image = TruncElem::new(ring, vec![Poly::zero(ring.base()), alpha.clone()])?;
        Self::new(ring, x_images, t_image)
    }

    pub fn ring(&self) -> &TruncRing {
        &self.ring
    }

    pub fn x_images(&self) -> &[TruncElem] {
        &self.x_images
    }

    pub fn t_image(&self) -> &TruncElem {
        &self.t_image
    }

    /// `D` for `n = 2`: coefficients of `t` in the variable images.
    pub fn derivation(&self) -> Vec<Poly> {
        self.x_images.iter().map(|e| e.coeff(1.min(e.coeffs().len() - 1)).clone()).collect()
    }

    /// `alpha` for `n = 2`: coefficient of `t` in the image of `t`.
    pub fn alpha(&self) -> Poly {
        self.t_image.coeff(1.min(self.t_image.coeffs().len() - 1)).clone()
    }

    /// Pullback `f(x -> images, t -> image of t)`, truncated.
    pub fn apply(&self, f: &TruncElem) -> Result<TruncElem> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch("element outside the ring".into()));
        }
        let mut imgs: Vec<Poly> = self.x_images.iter().map(TruncElem::to_full).collect();
        imgs.push(self.t_image.to_full());
        let sub = truncated_substitute(&self.ring, &f.to_full(), &imgs);
        Ok(TruncElem::from_full(&self.ring, &sub))
    }

    /// `compose(phi, psi)` acts as `phi` after `psi` on elements:
    /// `compose(phi, psi).apply(f) = phi.apply(psi.apply(f))`. For `n = 2`
    /// this gives `D = D_phi + alpha_phi * D_psi`.
    pub fn compose(&self, psi: &AutMap) -> Result<AutMap> {
        if self.ring != psi.ring {
            return Err(Error::RingMismatch("automorphisms of different rings".into()));
        }
        let x_images = psi.x_images.iter().map(|e| self.apply(e)).collect::<Result<Vec<_>>>()?;
        let t_image = self.apply(&psi.t_image)?;
        let out = AutMap { ring: self.ring.clone(), x_images, t_image };
        out.check_unit()?;
        Ok(out)
    }

    /// Inverse modulo `m^order` on every coefficient, solved degree by degree
    /// in `t`.
    pub fn jet_inverse(&self, order: u32) -> Result<AutMap> {
        let n = self.ring.n() as usize;
        let base = self.ring.base();
        let mut inv = AutMap::identity(&self.ring);
        if n == 1 {
            return Ok(inv);
        }
        let u1 = TruncElem::from_base(&self.ring, self.t_image.coeff(1));
        let u1inv = u1.jet_inverse(order)?.u0().clone();
        let mut u1inv_pow = vec![Poly::one(base)];
        for j in 1..n {
            let p = truncate_jet(&(&u1inv_pow[j - 1] * &u1inv), order);
            u1inv_pow.push(p);
        }
        let mut t_coeffs = vec![Poly::zero(base); n];
        inv.t_image = TruncElem::new(&self.ring, t_coeffs.clone())?;
        for j in 1..n {
            let cur = self.compose_unchecked(&inv)?;
            for k in 0..self.ring.nbase() {
                let c = cur.x_images[k].coeff(j);
                let mut coeffs = inv.x_images[k].coeffs().to_vec();
                coeffs[j] = truncate_jet(&(-&(c * &u1inv_pow[j])), order);
                inv.x_images[k] = TruncElem::new(&self.ring, coeffs)?;
            }
            let target = if j == 1 { Poly::one(base) } else { Poly::zero(base) };
            let c = cur.t_image.coeff(j);
            t_coeffs[j] = truncate_jet(&(&(&target - c) * &u1inv_pow[j]), order);
            inv.t_image = TruncElem::new(&self.ring, t_coeffs.clone())?;
        }
        Ok(inv)
    }

    fn compose_unchecked(&self, psi: &AutMap) -> Result<AutMap> {
        let x_images = psi.x_images.iter().map(|e| self.apply(e)).collect::<Result<Vec<_>>>()?;
        let t_image = self.apply(&psi.t_image)?;
        Ok(AutMap { ring: self.ring.clone(), x_images, t_image })
    }

    /// Coefficientwise truncation modulo `m^order`.
    pub fn truncate_jet(&self, order: u32) -> AutMap {
        AutMap {
            ring: self.ring.clone(),
            x_images: self.x_images.iter().map(|e| e.truncate_jet(order)).collect(),
            t_image: self.t_image.truncate_jet(order),
        }
    }
}

/// `compose(phi_ij, phi_jk) == phi_ik`, exactly.
pub fn verify_cocycle(ij: &AutMap, jk: &AutMap, ik: &AutMap) -> Result<bool> {
    Ok(ij.compose(jk)? == *ik)
}

/// Substitution with `t^n` dropped after every multiplication.
fn truncated_substitute(ring: &TruncRing, f: &Poly, images: &[Poly]) -> Poly {
    let full = ring.full();
    let mut acc = Poly::zero(full);
    let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(full), p.clone()]).collect();
    for (m, c) in f.terms() {
        let mut t = Poly::constant(full, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = ring.truncate(&(&powers[i][powers[i].len() - 1] * &images[i]));
                powers[i].push(next);
            }
            t = ring.truncate(&(&t * &powers[i][e as usize]));
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> TruncRing {
        TruncRing::new(&["x", "y"], 2).unwrap()
    }

    fn aut(r: &TruncRing, d: [&str; 2], a: &str) -> AutMap {
        let d: Vec<Poly> = d.iter().map(|s| r.parse_base(s).unwrap()).collect();
        AutMap::from_derivation(r, &d, &r.parse_base(a).unwrap()).unwrap()
    }

    #[test]
    fn identity_composes() {
        let r = ring2();
        let id = AutMap::identity(&r);
        assert_eq!(id.compose(&id).unwrap(), id);
        let psi = aut(&r, ["x*y", "1"], "2 + x");
        assert_eq!(id.compose(&psi).unwrap(), psi);
    }

    #[test]
    fn cocycle_examples() {
        let r = ring2();
        let ij = aut(&r, ["1", "0"], "1");
        let jk = aut(&r, ["0", "1"], "1");
        assert!(verify_cocycle(&ij, &jk, &aut(&r, ["1", "1"], "1")).unwrap());
        assert!(!verify_cocycle(&ij, &jk, &aut(&r, ["1", "0"], "1")).unwrap());
    }

    #[test]
    fn unit_condition() {
        let r = ring2();
        let d = vec![Poly::zero(r.base()); 2];
        assert!(AutMap::from_derivation(&r, &d, &r.parse_base("x").unwrap()).is_err());
    }

    #[test]
    fn inverse_in_jets() {
        let r = TruncRing::new(&["x", "y"], 3).unwrap();
        let xi = vec![r.parse("x + y*t + x^2*t^2").unwrap(), r.parse("y + t - x*t^2").unwrap()];
        let phi = AutMap::new(&r, xi, r.parse("(1 + x)*t + y*t^2").unwrap()).unwrap();
        let inv = phi.jet_inverse(6).unwrap();
        let id = AutMap::identity(&r);
        assert_eq!(phi.compose(&inv).unwrap().truncate_jet(6), id);
    }
}
