use super::cover::{self, Lifter};
use super::map::ModMap;
use super::presmod::{subquotient, Locality, PresMod, Submodule};
use crate::error::{Error, Result};
use crate::groebner::Vector;
use crate::multiring::TruncElem;

/// Descending chain `ambient = F_0 ⊇ F_1 ⊇ ... ⊇ F_k = 0`.
#[derive(Clone, Debug)]
pub struct FiltrationChain {
    ambient: PresMod,
    members: Vec<Submodule>,
}

impl FiltrationChain {
    /// Checks that the chain descends from the whole module to zero.
    pub fn new(ambient: &PresMod, members: Vec<Submodule>) -> Result<Self> {
        let first = members.first().ok_or_else(|| Error::InvalidInput("empty filtration".into()))?;
        if !Submodule::whole(ambient).is_subset_of(first, Locality::Global) {
            return Err(Error::InvalidInput("first member is not the whole module".into()));
        }
        if !members.last().unwrap().is_zero() {
            return Err(Error::InvalidInput("last member is not zero".into()));
        }
        for (k, w) in members.windows(2).enumerate() {
            if !w[1].is_subset_of(&w[0], Locality::Global) {
                return Err(Error::InvalidInput(format!("member {} is not contained in member {k}", k + 1)));
            }
        }
        Ok(FiltrationChain { ambient: ambient.clone(), members })
    }

    pub fn ambient(&self) -> &PresMod {
        &self.ambient
    }

    pub fn members(&self) -> &[Submodule] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `F_k / F_{k+1}` for each consecutive pair.
    pub fn quotients(&self) -> Result<Vec<PresMod>> {
        self.members.windows(2).map(|w| w[0].quotient_over(&w[1])).collect()
    }

    /// Same members, compared pairwise.
    pub fn equals(&self, other: &FiltrationChain) -> bool {
        self.len() == other.len()
            && self.members.iter().zip(&other.members).all(|(a, b)| a.equals(b, Locality::Global))
    }

    /// Drops members equal to their predecessor.
    pub fn compressed(&self) -> FiltrationChain {
        let mut out: Vec<Submodule> = Vec::new();
        for m in &self.members {
            if out.last().is_none_or(|p| !p.equals(m, Locality::Global)) {
                out.push(m.clone());
            }
        }
        FiltrationChain { ambient: self.ambient.clone(), members: out }
    }

    /// Every member of `coarser` occurs in `self`.
    pub fn refines(&self, coarser: &FiltrationChain) -> bool {
        coarser.members.iter().all(|c| self.members.iter().any(|m| m.equals(c, Locality::Global)))
    }
}

/// `M_i = t^i M`, for `i = 0..n`.
pub(crate) fn first_members(m: &PresMod) -> Vec<Submodule> {
    let ring = m.ring();
    (0..=ring.n())
        .map(|i| {
            let gens = (0..m.ngens()).map(|j| cover::t_pow_times(ring, &cover::unit(ring, j), i)).collect();
            Submodule::from_vectors(m, gens)
        })
        .collect()
}

/// `M^(i) = {m : t^i m = 0}`, for `i = 0..n`.
pub(crate) fn second_members(m: &PresMod) -> Vec<Submodule> {
    let ring = m.ring();
    (0..=ring.n())
        .map(|i| {
            let imgs: Vec<Vector> = (0..m.ngens()).map(|j| cover::t_pow_times(ring, &cover::unit(ring, j), i)).collect();
            Submodule::from_vectors(m, cover::kernel(ring, &imgs, m.relation_vectors(), m.ngens()))
        })
        .collect()
}

/// `M = M_0 ⊇ t M ⊇ ... ⊇ t^n M = 0`.
pub fn first_canonical_filtration(m: &PresMod) -> FiltrationChain {
    FiltrationChain { ambient: m.clone(), members: first_members(m) }
}

/// `M = M^(n) ⊇ M^(n-1) ⊇ ... ⊇ M^(0) = 0`, listed from the top.
pub fn second_canonical_filtration(m: &PresMod) -> FiltrationChain {
    let mut members = second_members(m);
    members.reverse();
    FiltrationChain { ambient: m.clone(), members }
}

/// The maps induced by multiplication by `t` between the graded pieces of
/// the canonical filtrations.
#[derive(Clone, Debug)]
pub struct ComparisonMaps {
    /// `G_i = M_i / M_{i+1}`, `i = 0..n-1`.
    pub g_lower: Vec<PresMod>,
    /// `G^(i) = M^(i) / M^(i-1)`, stored at index `i - 1`.
    pub g_upper: Vec<PresMod>,
    /// `lambda_i : G^(i+1) -> G^(i)`, `i = 1..n-1`, stored at index `i - 1`.
    pub lambda: Vec<ModMap>,
    /// `mu_i : G_i -> G_{i+1}`, `i = 0..n-2`.
    pub mu: Vec<ModMap>,
    /// `Gamma_i = ker mu_i`, `i = 0..n-2`.
    pub gamma_lower: Vec<PresMod>,
    /// `Gamma^(i) = coker lambda_{i+1}`, `i = 0..n-2`.
    pub gamma_upper: Vec<PresMod>,
}

pub fn comparison_maps(m: &PresMod) -> Result<ComparisonMaps> {
    let ring = m.ring();
    let n = ring.n() as usize;
    let first = first_members(m);
    let second = second_members(m);
    let g_lower = (0..n).map(|i| first[i].quotient_over(&first[i + 1])).collect::<Result<Vec<_>>>()?;
    let g_upper = (1..=n).map(|i| second[i].quotient_over(&second[i - 1])).collect::<Result<Vec<_>>>()?;

    let mut mu = Vec::new();
    for i in 0..n.saturating_sub(1) {
        // generator t^i e_j of G_i goes to t^{i+1} e_j, the generator of
        // G_{i+1} with the same index when both survive
        let src = &first[i];
        let tgt = &first[i + 1];
        let lifter = Lifter::new(ring, tgt.vectors(), &with_rels(m, &first[i + 2]), m.ngens());
        let images = lift_all(ring, src.vectors(), &lifter, "mu")?;
        let map = ModMap::from_vectors(&g_lower[i], &g_lower[i + 1], images)
            .map_err(|e| Error::cross("mu", e.to_string()))?;
        mu.push(map);
    }

    let mut lambda = Vec::new();
    for i in 1..n {
        let lifter = Lifter::new(ring, second[i].vectors(), &with_rels(m, &second[i - 1]), m.ngens());
        let images = lift_all(ring, second[i + 1].vectors(), &lifter, "lambda")?;
        let map = ModMap::from_vectors(&g_upper[i], &g_upper[i - 1], images)
            .map_err(|e| Error::cross("lambda", e.to_string()))?;
        lambda.push(map);
    }

    let gamma_lower = mu.iter().map(|f| f.kernel().as_module()).collect::<Result<Vec<_>>>()?;
    let gamma_upper = lambda.iter().map(|f| f.cokernel()).collect::<Result<Vec<_>>>()?;
    Ok(ComparisonMaps { g_lower, g_upper, lambda, mu, gamma_lower, gamma_upper })
}

fn with_rels(m: &PresMod, s: &Submodule) -> Vec<Vector> {
    let mut v = s.vectors().to_vec();
    v.extend(m.relation_vectors().iter().cloned());
    v
}

/// Images of `t * v` for each `v`, written in the lifter's generators.
fn lift_all(ring: &crate::multiring::TruncRing, vs: &[Vector], lifter: &Lifter, what: &'static str) -> Result<Vec<Vector>> {
    vs.iter()
        .map(|v| {
            lifter
                .lift(&cover::t_pow_times(ring, v, 1))
                .ok_or_else(|| Error::cross(what, "t * generator is outside the expected submodule"))
        })
        .collect()
}

/// Outcome of the balanced test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceCertificate {
    /// Every `Gamma_i` and `Gamma^(i)` vanishes.
    AllGammaZero,
    /// An element of `M^(n-i)` outside `M_i`, in generator coordinates.
    Witness { i: u32, element: Vec<TruncElem> },
}

/// Decides whether `M` is balanced. The comparison-map criteria and the
/// filtration equality `M_i = M^(n-i)` are evaluated separately and must
/// agree.
pub fn is_balanced(m: &PresMod) -> Result<(bool, BalanceCertificate)> {
    is_balanced_at(m, Locality::Global)
}

/// The separately computed balance criteria. For a finitely presented
/// module they are all equivalent; [`is_balanced_at`] insists on that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceCriteria {
    /// `M_i = M^(n-i)` for all `i`.
    pub filtrations: bool,
    /// The composite `lambda_1 ... lambda_{n-1}` is surjective.
    pub lambda_composite: bool,
    /// Every `lambda_i` is surjective.
    pub lambda_each: bool,
    /// Every `Gamma_i` vanishes.
    pub gamma_lower: bool,
    /// Every `Gamma^(i)` vanishes.
    pub gamma_upper: bool,
    /// Every `mu_i` is injective.
    pub mu_injective: bool,
    /// First `i` with `M^(n-i) ⊄ M_i`, and an element there outside `M_i`.
    pub witness: Option<(u32, Vec<TruncElem>)>,
}

impl BalanceCriteria {
    pub fn verdicts(&self) -> [bool; 6] {
        [self.filtrations, self.lambda_composite, self.lambda_each, self.gamma_lower, self.gamma_upper, self.mu_injective]
    }

    pub fn agree(&self) -> bool {
        self.verdicts().iter().all(|&v| v == self.filtrations)
    }
}

/// `is_balanced`, either globally or after localizing at the origin.
pub fn is_balanced_at(m: &PresMod, loc: Locality) -> Result<(bool, BalanceCertificate)> {
    let c = balance_criteria(m, loc)?;
    if !c.agree() {
        return Err(Error::cross("balanced", format!("criteria disagree: {:?}", c.verdicts())));
    }
    Ok(match c.witness {
        None => (true, BalanceCertificate::AllGammaZero),
        Some((i, element)) => (false, BalanceCertificate::Witness { i, element }),
    })
}

/// Evaluates each balance criterion on its own, without comparing them.
pub fn balance_criteria(m: &PresMod, loc: Locality) -> Result<BalanceCriteria> {
    let ring = m.ring();
    let n = ring.n() as usize;
    let first = first_members(m);
    let second = second_members(m);
    let inside = |num: &[Vector], den: &[Vector]| -> Result<bool> {
        Ok(match loc {
            Locality::Global => cover::membership(ring, den, m.ngens()).contains_all(num),
            Locality::AtOrigin => subquotient(ring, m.ngens(), num, den, None)?.fiber_dim() == 0,
        })
    };

    // filtration equality, first reporting a witness
    let mut witness = None;
    for i in 1..=n {
        if let Some(w) = second[n - i].witness_outside(&first[i], loc) {
            witness = Some((i as u32, w));
            break;
        }
    }
    let by_filtrations = witness.is_none();

    let maps = comparison_maps(m)?;
    let lambda_total = if n >= 2 {
        let mut acc = maps.lambda[n - 2].clone();
        for k in (0..n - 2).rev() {
            acc = maps.lambda[k].compose(&acc)?;
        }
        acc.is_surjective(loc)?
    } else {
        true
    };

    // lambda_i onto: each generator of M^(i) lies in t M^(i+1) + M^(i-1)
    let mut lambda_onto = true;
    for i in 1..n {
        let mut span: Vec<Vector> = second[i + 1].vectors().iter().map(|v| cover::t_pow_times(ring, v, 1)).collect();
        span.extend(with_rels(m, &second[i - 1]));
        lambda_onto &= inside(second[i].vectors(), &span)?;
    }

    let gamma_lower_zero = maps.gamma_lower.iter().all(|g| g.vanishes(loc));
    let gamma_upper_zero = maps.gamma_upper.iter().all(|g| g.vanishes(loc));

    // mu_i one-to-one: t^{i+1} c in M_{i+2} forces t^i c in M_{i+1}
    let mut mu_into = true;
    for i in 0..n.saturating_sub(1) {
        let imgs: Vec<Vector> =
            (0..m.ngens()).map(|j| cover::t_pow_times(ring, &cover::unit(ring, j), i as u32 + 1)).collect();
        let ks = cover::kernel(ring, &imgs, &with_rels(m, &first[i + 2]), m.ngens());
        let shifted: Vec<Vector> = ks.iter().map(|c| cover::t_pow_times(ring, c, i as u32)).collect();
        mu_into &= inside(&shifted, &with_rels(m, &first[i + 1]))?;
    }

    Ok(BalanceCriteria {
        filtrations: by_filtrations,
        lambda_composite: lambda_total,
        lambda_each: lambda_onto,
        gamma_lower: gamma_lower_zero,
        gamma_upper: gamma_upper_zero,
        mu_injective: mu_into,
        witness: witness.map(|(i, w)| (i, m.coordinates(&w))),
    })
}
