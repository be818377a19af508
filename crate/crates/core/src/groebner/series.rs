use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Monomial;
use crate::error::{Error, Result};

/// Laurent polynomial in `z` with integer coefficients.
pub type ZPoly = BTreeMap<i64, BigInt>;

fn zp_add(a: &mut ZPoly, b: &ZPoly, shift: i64, sign: i32) {
    for (k, v) in b {
        let e = a.entry(k + shift).or_insert_with(BigInt::zero);
        if sign < 0 {
            *e -= v;
        } else {
            *e += v;
        }
    }
    a.retain(|_, v| !v.is_zero());
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert_with(BigInt::zero) += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn zp_one() -> ZPoly {
    let mut m = ZPoly::new();
    m.insert(0, BigInt::one());
    m
}

/// `numerator / prod (1 - z^w)` over the denominator weights.
#[derive(Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: ZPoly,
    denominator: Vec<i64>,
}

impl fmt::Debug for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HS(num={:?}, den={:?})", self.numerator, self.denominator)
    }
}

impl HilbertSeries {
    pub fn new(numerator: ZPoly, mut denominator: Vec<i64>) -> Self {
        let mut numerator = numerator;
        numerator.retain(|_, v| !v.is_zero());
        denominator.sort_unstable();
        HilbertSeries { numerator, denominator }
    }

    pub fn zero(denominator: Vec<i64>) -> Self {
        Self::new(ZPoly::new(), denominator)
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[i64] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn shift(&self, k: i64) -> Self {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.denominator != other.denominator {
            return Err(Error::Grading("adding Hilbert series with different denominators".into()));
        }
        let mut n = self.numerator.clone();
        zp_add(&mut n, &other.numerator, 0, 1);
        Ok(HilbertSeries { numerator: n, denominator: self.denominator.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.denominator != other.denominator {
            return Err(Error::Grading("subtracting Hilbert series with different denominators".into()));
        }
        let mut n = self.numerator.clone();
        zp_add(&mut n, &other.numerator, 0, -1);
        Ok(HilbertSeries { numerator: n, denominator: self.denominator.clone() })
    }

    /// Dimension of the degree-`d` piece.
    pub fn coefficient(&self, d: i64) -> BigInt {
        let lo = match self.numerator.keys().next() {
            Some(&k) => k,
            None => return BigInt::zero(),
        };
        if d < lo {
            return BigInt::zero();
        }
        // counts[k] = number of ways to write k as sum of denominator weights
        let top = (d - lo) as usize;
        let mut counts = vec![BigInt::zero(); top + 1];
        counts[0] = BigInt::one();
        for &w in &self.denominator {
            let w = w as usize;
            for k in w..=top {
                let prev = counts[k - w].clone();
                counts[k] += prev;
            }
        }
        let mut s = BigInt::zero();
        for (e, c) in &self.numerator {
            if *e <= d {
                s += c * &counts[(d - e) as usize];
            }
        }
        s
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens.drain(..) {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    *gens = out;
}

/// Numerator of the Hilbert series of `k[vars]/(gens)` over
/// `prod (1 - z^{w_i})`, by pivoting on variable powers.
pub(crate) fn monomial_numerator(mut gens: Vec<Monomial>, w: &[i64]) -> ZPoly {
    minimalize(&mut gens);
    if gens.is_empty() {
        return zp_one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return ZPoly::new();
    }
    let nv = w.len();
    let mut count = vec![0usize; nv];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                count[i] += 1;
            }
        }
    }
    let (v, &c) = count.iter().enumerate().max_by_key(|(_, c)| **c).unwrap();
    if c <= 1 {
        // pairwise coprime: complete intersection
        let mut out = zp_one();
        for g in &gens {
            let mut f = zp_one();
            zp_add(&mut f, &zp_one(), g.weighted_degree(w), -1);
            out = zp_mul(&out, &f);
        }
        return out;
    }
    let e = gens.iter().map(|g| g.exp(v)).filter(|&e| e > 0).min().unwrap();
    let p = Monomial::var(nv, v, e);
    let mut plus: Vec<Monomial> = gens.clone();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&g.gcd(&p)).unwrap()).collect();
    let mut out = monomial_numerator(plus, w);
    let rest = monomial_numerator(colon, w);
    zp_add(&mut out, &rest, p.weighted_degree(w), 1);
    out
}

/// Hilbert series of `F / M` where `F` is free with generator degrees
/// `comp_deg` and `M` has the given leading terms. The variable `slice`, if
/// any, must be nilpotent modulo the leading terms; it is summed out instead
/// of contributing a denominator factor, so its weight may be zero.
pub(crate) fn series_from_leads(
    leads: &[(Monomial, u32)],
    comp_deg: &[i64],
    weights: &[i64],
    slice: Option<usize>,
) -> Result<HilbertSeries> {
    for (i, &w) in weights.iter().enumerate() {
        if Some(i) == slice {
            if w < 0 {
                return Err(Error::Grading("negative weight on the nilpotent variable".into()));
            }
        } else if w <= 0 {
            return Err(Error::Grading(format!("variable {i} has non-positive weight {w}")));
        }
    }
    let den: Vec<i64> = weights.iter().enumerate().filter(|(i, _)| Some(*i) != slice).map(|(_, &w)| w).collect();
    let mut num = ZPoly::new();
    for (c, &cd) in comp_deg.iter().enumerate() {
        let mons: Vec<Monomial> = leads.iter().filter(|(_, k)| *k as usize == c).map(|(m, _)| m.clone()).collect();
        match slice {
            None => zp_add(&mut num, &monomial_numerator(mons, weights), cd, 1),
            Some(s) => {
                let bound = mons
                    .iter()
                    .filter(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == s || e == 0))
                    .map(|m| m.exp(s))
                    .min()
                    .ok_or_else(|| Error::Grading("sliced variable is not nilpotent on the module".into()))?;
                let sub_w: Vec<i64> = den.clone();
                let ws = weights[s];
                for e in 0..bound {
                    let slice_gens: Vec<Monomial> =
                        mons.iter().filter(|m| m.exp(s) <= e).map(|m| m.without(s)).collect();
                    zp_add(&mut num, &monomial_numerator(slice_gens, &sub_w), cd + ws * e as i64, 1);
                }
            }
        }
    }
    Ok(HilbertSeries::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn plane_examples() {
        let w = [1, 1];
        let hs = series_from_leads(&[], &[0], &w, None).unwrap();
        assert_eq!(hs.numerator(), &zp_one());
        let hs = series_from_leads(&[(m(&[1, 0]), 0)], &[0], &w, None).unwrap();
        assert_eq!((0..5).map(|d| hs.coefficient(d)).collect::<Vec<_>>(), vec![BigInt::one(); 5]);
        let leads = [(m(&[2, 0]), 0), (m(&[1, 1]), 0), (m(&[0, 2]), 0)];
        let hs = series_from_leads(&leads, &[0], &w, None).unwrap();
        let vals: Vec<i64> = (0..5).map(|d| hs.coefficient(d).try_into().unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 0, 0, 0]);
    }

    #[test]
    fn sliced_variable() {
        // k[x,t]/(t^2), t of weight 0: two copies of k[x]
        let hs = series_from_leads(&[(m(&[0, 2]), 0)], &[0], &[1, 0], Some(1)).unwrap();
        assert_eq!(hs.coefficient(3), BigInt::from(2));
        assert!(series_from_leads(&[(m(&[1, 1]), 0)], &[0], &[1, 0], Some(1)).is_err());
        assert!(series_from_leads(&[], &[0], &[0, 1], None).is_err());
    }
}
