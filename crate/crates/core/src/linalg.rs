//! Dense linear algebra over Q and fraction-free elimination over Q[x].

use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{Poly, PolyRing, Rational};

/// Incremental row echelon form over Q.
#[derive(Clone, Debug, Default)]
pub(crate) struct QEchelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl QEchelon {
    pub(crate) fn new() -> Self {
        QEchelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone() / &row[*p];
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a -= &c * b;
                    }
                }
            }
        }
    }

    /// Adds `v`; returns whether it was independent.
    pub(crate) fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|a| !a.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub(crate) fn rank_q(rows: Vec<Vec<Rational>>) -> usize {
    let mut e = QEchelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Result of fraction-free Gauss-Jordan elimination.
pub(crate) struct Bareiss {
    pub(crate) mat: Vec<Vec<Poly>>,
    /// `(row, column)` of each pivot, in order.
    pub(crate) pivots: Vec<(usize, usize)>,
    /// Common value of all pivot entries at the end.
    pub(crate) det: Poly,
}

/// Fraction-free Gauss-Jordan. Every division is exact; after completion
/// all pivot entries equal the last pivot.
pub(crate) fn bareiss(ring: &Arc<PolyRing>, mut a: Vec<Vec<Poly>>) -> Bareiss {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = Poly::one(ring);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].len())
        else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let num = &(&piv * &a[i][j]) - &(&f * &a[r][j]);
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination: inexact division");
            }
            a[i][c] = Poly::zero(ring);
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    Bareiss { mat: a, pivots, det: prev }
}

/// Rank over the fraction field.
pub(crate) fn generic_rank(ring: &Arc<PolyRing>, a: Vec<Vec<Poly>>) -> usize {
    bareiss(ring, a).pivots.len()
}

/// Basis (polynomial entries) of `{c : A c = 0}` over the fraction field.
pub(crate) fn right_nullspace(ring: &Arc<PolyRing>, a: Vec<Vec<Poly>>, ncols: usize) -> Vec<Vec<Poly>> {
    let b = bareiss(ring, a);
    let pivot_cols: Vec<usize> = b.pivots.iter().map(|p| p.1).collect();
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Poly::zero(ring); ncols];
        v[f] = b.det.clone();
        for &(r, c) in &b.pivots {
            v[c] = -&b.mat[r][f];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, MonomialOrder};

    #[test]
    fn q_rank() {
        let rows = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), rat(1)]];
        assert_eq!(rank_q(rows), 2);
    }

    #[test]
    fn nullspace_over_fraction_field() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        let p = |s| Poly::parse(&r, s).unwrap();
        let a = vec![vec![p("x"), p("y"), p("x+y")], vec![p("x^2"), p("x*y"), p("x^2+x*y")]];
        assert_eq!(generic_rank(&r, a.clone()), 1);
        let ns = right_nullspace(&r, a.clone(), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(Poly::zero(&r), |acc, (x, y)| &acc + &(x * y));
                assert!(s.is_zero());
            }
        }
    }
}
