//! Hilbert polynomials of graded modules over `Q[x_0..x_m][t]/(t^n)`, and
//! the reduced Hilbert polynomial: the sum of the Hilbert polynomials of the
//! quotients of a filtration whose steps are killed by `t`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Monomial, Rational};
use crate::error::{Error, Result};
use crate::fpmod::cover;
use crate::fpmod::{first_canonical_filtration, second_canonical_filtration, FiltrationChain, PresMod};
use crate::groebner::HilbertSeries;

/// A polynomial in the degree variable `d`, coefficients by ascending power.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HilbPoly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for HilbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HilbPoly({self})")
    }
}

impl fmt::Display for HilbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = match k {
                0 => format_rational(&a),
                _ => {
                    let v = if k == 1 { "d".to_string() } else { format!("d^{k}") };
                    if a.is_one() { v } else { format!("{}*{v}", format_rational(&a)) }
                }
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl HilbPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbPoly { coeffs }
    }

    pub fn zero() -> Self {
        HilbPoly::default()
    }

    /// `C(d + a, r)` as a polynomial in `d`.
    pub fn binomial(a: i64, r: u32) -> Self {
        let mut p = vec![Rational::one()];
        for i in 0..r as i64 {
            // multiply by (d + a - i) / (i + 1)
            let c = Rational::from_integer(BigInt::from(a - i));
            let mut q = vec![Rational::zero(); p.len() + 1];
            for (k, x) in p.iter().enumerate() {
                q[k] += x * &c;
                q[k + 1] += x.clone();
            }
            let div = Rational::from_integer(BigInt::from(i + 1));
            p = q.into_iter().map(|x| x / &div).collect();
        }
        HilbPoly::new(p)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, d: i64) -> Rational {
        let x = Rational::from_integer(BigInt::from(d));
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        HilbPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        HilbPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

/// The polynomial agreeing with the coefficients of `h` in large degree.
/// The denominator must be `(1 - z)^k`.
pub fn polynomial_of_series(h: &HilbertSeries) -> Result<HilbPoly> {
    if h.denominator().iter().any(|&w| w != 1) {
        return Err(Error::Grading("Hilbert polynomial needs all base variables in degree 1".into()));
    }
    let k = h.denominator().len() as u32;
    if k == 0 {
        return Ok(HilbPoly::zero());
    }
    // z^j / (1 - z)^k contributes C(d - j + k - 1, k - 1)
    let mut p = HilbPoly::zero();
    for (j, c) in h.numerator() {
        let b = HilbPoly::binomial(k as i64 - 1 - j, k - 1);
        let c = Rational::from_integer(c.clone());
        p = p.add(&HilbPoly::new(b.coeffs.iter().map(|x| x * &c).collect()));
    }
    Ok(p)
}

/// `dim_Q M_d` by listing the standard monomials of degree `d`.
fn brute_force_dimension(m: &PresMod, d: i64) -> Result<i64> {
    let g = m.grading().ok_or_else(|| Error::Grading("module carries no grading".into()))?;
    let ring = m.ring();
    let nb = ring.nbase();
    let tw = g.t_weight;
    let leads: Vec<(Monomial, u32)> =
        m.membership().gb().iter().filter_map(|v| v.lead().map(|l| (l.mon.clone(), l.comp))).collect();
    let mut count = 0i64;
    for (j, &gd) in g.gen_degrees.iter().enumerate() {
        for e in 0..ring.n() {
            let rest = d - gd - tw * e as i64;
            if rest < 0 {
                continue;
            }
            for mut ex in compositions(rest as u32, nb) {
                ex.push(e);
                let mon = Monomial::from_exponents(&ex);
                if !leads.iter().any(|(l, c)| *c as usize == j && l.divides(&mon)) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Exponent vectors of length `k` summing to `total`.
fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Hilbert polynomial of `M` as a graded `Q[x]`-module, `t` summed out.
/// Checked against standard-monomial counts in three degrees past the
/// numerator.
pub fn hilbert_polynomial(m: &PresMod) -> Result<HilbPoly> {
    let h = m.hilbert_series()?;
    let p = polynomial_of_series(&h)?;
    let top = h.numerator().keys().next_back().copied().unwrap_or(0).max(0);
    for d in top + 1..=top + 3 {
        let direct = brute_force_dimension(m, d)?;
        let from_series: i64 = h.coefficient(d).try_into().map_err(|_| Error::cross("hilbert_polynomial", "dimension overflow"))?;
        if p.eval(d) != Rational::from_integer(direct.into()) || direct != from_series {
            return Err(Error::cross(
                "hilbert_polynomial",
                format!("degree {d}: polynomial {}, series {from_series}, monomials {direct}", p.eval(d)),
            ));
        }
    }
    Ok(p)
}

fn sum_over(chain: &FiltrationChain) -> Result<HilbPoly> {
    let mut p = HilbPoly::zero();
    for q in chain.quotients()? {
        p = p.add(&hilbert_polynomial(&q)?);
    }
    Ok(p)
}

/// Reduced Hilbert polynomial, computed from both canonical filtrations,
/// from `extra` when given, and as the Hilbert polynomial of `M` itself;
/// all must agree. The quotients of `extra` must be killed by `t`.
pub fn reduced_hilbert_polynomial(m: &PresMod, extra: Option<&FiltrationChain>) -> Result<HilbPoly> {
    if !m.is_graded() {
        return Err(Error::Grading("reduced Hilbert polynomial needs a graded module".into()));
    }
    let p = sum_over(&first_canonical_filtration(m))?;
    let second = sum_over(&second_canonical_filtration(m))?;
    let whole = hilbert_polynomial(m)?;
    if second != p || whole != p {
        return Err(Error::cross("reduced_hilbert_polynomial", format!("first {p}, second {second}, whole {whole}")));
    }
    if let Some(f) = extra {
        let ring = m.ring();
        for (k, q) in f.quotients()?.iter().enumerate() {
            let killed = (0..q.ngens()).all(|j| q.is_zero_vector(&cover::t_pow_times(ring, &cover::unit(ring, j), 1)));
            if !killed {
                return Err(Error::InvalidInput(format!("quotient {k} of the filtration is not killed by t")));
            }
        }
        let pf = sum_over(f)?;
        if pf != p {
            return Err(Error::cross("reduced_hilbert_polynomial", format!("canonical {p}, supplied filtration {pf}")));
        }
    }
    Ok(p)
}

/// Generalized rank and degree data read from the reduced Hilbert
/// polynomial over `P^m`: `rank = m! * [d^m]`, `subleading = (m-1)! * [d^(m-1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDegree {
    pub rank: Rational,
    pub subleading: Rational,
    pub polynomial: HilbPoly,
}

pub fn rank_degree_reduced(m: &PresMod) -> Result<RankDegree> {
    let p = reduced_hilbert_polynomial(m, None)?;
    let dim = m.ring().nbase().saturating_sub(1);
    let fact = |k: usize| Rational::from_integer((1..=k as i64).product::<i64>().into());
    let rank = p.coeff(dim) * fact(dim);
    let subleading = if dim == 0 { Rational::zero() } else { p.coeff(dim - 1) * fact(dim - 1) };
    Ok(RankDegree { rank, subleading, polynomial: p })
}
