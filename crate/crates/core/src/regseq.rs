//! Regular sequences in `R[n]` and the ideals they generate.

use crate::arith::Poly;
use crate::error::{Error, Result};
use crate::fpmod::cover;
use crate::fpmod::{subquotient, IdealModule, Locality};
use crate::groebner::Vector;
use crate::multiring::{TruncElem, TruncRing};

/// Why a sequence fails to be regular. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceWitness {
    /// `a x_k` lies in `(x_1..x_{k-1})` but `a` does not.
    ZeroDivisor { k: usize, a: TruncElem },
    /// `(x_1..x_k)` is the unit ideal.
    UnitIdeal { k: usize },
}

#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub elements: Vec<TruncElem>,
    /// Images under `t -> 0`.
    pub reductions: Vec<Poly>,
    pub regular: bool,
    pub witness: Option<SequenceWitness>,
}

fn vec1(ring: &TruncRing, f: &TruncElem) -> Vector {
    cover::from_elems(ring, std::slice::from_ref(f))
}

fn elem1(ring: &TruncRing, v: &Vector) -> TruncElem {
    cover::to_elems(ring, v, 1).remove(0)
}

/// Whether `f` lies in the ideal generated by `gens`, globally or in the
/// local ring at the origin.
fn in_ideal(ring: &TruncRing, f: &Vector, gens: &[Vector], loc: Locality) -> Result<bool> {
    Ok(match loc {
        Locality::Global => cover::membership(ring, gens, 1).contains(f),
        Locality::AtOrigin => subquotient(ring, 1, std::slice::from_ref(f), gens, None)?.fiber_dim() == 0,
    })
}

/// The zero-divisor ladder: `x_k` must be a non-zero-divisor on
/// `R[n]/(x_1..x_{k-1})` and the quotients must stay nonzero.
fn ladder(ring: &TruncRing, seq: &[TruncElem], loc: Locality) -> Result<Option<SequenceWitness>> {
    let mut ideal: Vec<Vector> = Vec::new();
    for (idx, x) in seq.iter().enumerate() {
        let k = idx + 1;
        let xv = vec1(ring, x);
        let colon = cover::kernel(ring, std::slice::from_ref(&xv), &ideal, 1);
        let witness = match loc {
            Locality::Global => {
                let mem = cover::membership(ring, &ideal, 1);
                colon.iter().find(|a| !mem.contains(a)).cloned()
            }
            Locality::AtOrigin => {
                let q = subquotient(ring, 1, &colon, &ideal, None)?;
                q.fiber_basis().first().map(|&j| colon[j].clone())
            }
        };
        if let Some(a) = witness {
            return Ok(Some(SequenceWitness::ZeroDivisor { k, a: elem1(ring, &a) }));
        }
        ideal.push(xv);
        if in_ideal(ring, &vec1(ring, &ring.one()), &ideal, loc)? {
            return Ok(Some(SequenceWitness::UnitIdeal { k }));
        }
    }
    Ok(None)
}

fn check_ring(seq: &[TruncElem]) -> Result<TruncRing> {
    let ring = seq.first().ok_or_else(|| Error::InvalidInput("empty sequence".into()))?.ring().clone();
    if seq.iter().any(|x| x.ring() != &ring) {
        return Err(Error::RingMismatch("sequence elements in different rings".into()));
    }
    Ok(ring)
}

/// Decides regularity twice: on the reductions in `R` and directly in
/// `R[n]`. The two verdicts must agree.
pub fn is_regular_sequence(seq: &[TruncElem], loc: Locality) -> Result<SequenceReport> {
    let ring = check_ring(seq)?;
    let r1 = ring.with_n(1)?;
    let reductions: Vec<Poly> = seq.iter().map(|x| x.u0().clone()).collect();
    let reduced: Vec<TruncElem> = reductions.iter().map(|p| TruncElem::from_base(&r1, p)).collect();
    let base_verdict = ladder(&r1, &reduced, loc)?.is_none();
    let witness = ladder(&ring, seq, loc)?;
    if base_verdict != witness.is_none() {
        return Err(Error::cross(
            "is_regular_sequence",
            format!("reductions regular: {base_verdict}, sequence regular: {}", witness.is_none()),
        ));
    }
    if let Some(SequenceWitness::ZeroDivisor { k, a }) = &witness {
        let prev: Vec<Vector> = seq[..k - 1].iter().map(|x| vec1(&ring, x)).collect();
        let ax = vec1(&ring, &a.mul(&seq[k - 1])?);
        let mem = cover::membership(&ring, &prev, 1);
        if !mem.contains(&ax) || mem.contains(&vec1(&ring, a)) {
            return Err(Error::cross("is_regular_sequence", "zero-divisor witness does not verify"));
        }
    }
    Ok(SequenceReport { elements: seq.to_vec(), reductions, regular: witness.is_none(), witness })
}

/// For a regular sequence: `t^{n-1} y ∈ (x_1..x_p)` iff `y ∈ (x_{1,0}..x_{p,0})`.
pub fn shadow_membership(y: &Poly, seq: &[TruncElem], loc: Locality) -> Result<bool> {
    let rep = is_regular_sequence(seq, loc)?;
    if !rep.regular {
        return Err(Error::NotRegular(format!("{:?}", rep.witness)));
    }
    let ring = check_ring(seq)?;
    let r1 = ring.with_n(1)?;
    let shadow = TruncElem::from_base(&ring, y).shift_t(ring.n() as usize - 1);
    let gens: Vec<Vector> = seq.iter().map(|x| vec1(&ring, x)).collect();
    let top = in_ideal(&ring, &vec1(&ring, &shadow), &gens, loc)?;
    let red: Vec<Vector> = rep.reductions.iter().map(|p| vec1(&r1, &TruncElem::from_base(&r1, p))).collect();
    let bottom = in_ideal(&r1, &vec1(&r1, &TruncElem::from_base(&r1, y)), &red, loc)?;
    if top != bottom {
        return Err(Error::cross("shadow_membership", format!("in R[n]: {top}, in R: {bottom}")));
    }
    Ok(top)
}

/// The ideal of a regular sequence, presented by its syzygies, after
/// checking that it is balanced.
pub fn balanced_ideal(seq: &[TruncElem], loc: Locality) -> Result<IdealModule> {
    let rep = is_regular_sequence(seq, loc)?;
    if !rep.regular {
        return Err(Error::NotRegular(format!("{:?}", rep.witness)));
    }
    let ring = check_ring(seq)?;
    let ideal = IdealModule::new(&ring, seq, None)?;
    let b = ideal.balance()?;
    if !b.balanced {
        return Err(Error::cross("balanced_ideal", format!("ideal of a regular sequence is unbalanced, witness {:?}", b.witness)));
    }
    Ok(ideal)
}

