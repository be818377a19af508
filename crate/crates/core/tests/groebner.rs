use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use primult::arith::*;
use primult::groebner::*;

fn ring(order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], order).unwrap()
}

fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Poly> {
    s.iter().map(|g| Poly::parse(r, g).unwrap()).collect()
}

fn elts(ps: &[Poly]) -> Vec<FreeModuleElement> {
    ps.iter().cloned().map(FreeModuleElement::from_poly).collect()
}

#[test]
fn basis_examples() {
    let r = PolyRing::new(&["x", "y"], MonomialOrder::Lex).unwrap();
    let gb = ideal_basis(&r, &polys(&r, &["x^2 - 1", "x*y - 1"])).unwrap();
    let mut basis = gb.polys();
    basis.sort_by_key(|p| p.to_string());
    assert_eq!(basis, polys(&r, &["x - y", "y^2 - 1"]));
    assert_eq!(gb.normal_form_poly(&polys(&r, &["x^2"])[0]).unwrap(), Poly::one(&r));
    let x = ideal_basis(&r, &polys(&r, &["x"])).unwrap();
    assert_eq!(x.polys(), polys(&r, &["x"]));
    let zero = ideal_basis(&r, &[Poly::zero(&r)]).unwrap();
    assert!(zero.is_empty());
    let f = polys(&r, &["x*y + 3"])[0].clone();
    assert_eq!(zero.normal_form_poly(&f).unwrap(), f);
    assert!(gb.contains_poly(&polys(&r, &["x^3 - y"])[0]).unwrap());
}

#[test]
fn syzygy_examples() {
    let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
    let koszul = syzygy_basis(&elts(&polys(&r, &["x", "y"]))).unwrap();
    assert_eq!(koszul.len(), 1);
    let k = koszul[0].components();
    let yx = polys(&r, &["y", "-x"]);
    assert!(k == yx.as_slice() || (k[0] == yx[0].neg() && k[1] == yx[1].neg()));
    assert!(syzygy_basis(&elts(&polys(&r, &["x"]))).unwrap().is_empty());
    let s = syzygy_basis(&elts(&polys(&r, &["x^2", "x*y"]))).unwrap();
    assert_eq!(s.len(), 1);
    let expect = FreeModuleElement::new(&r, polys(&r, &["y", "-x"])).unwrap();
    let span = groebner_basis(&s, MonomialOrder::GrevLex).unwrap();
    assert!(span.contains(&expect).unwrap());
    let back = groebner_basis(&[expect], MonomialOrder::GrevLex).unwrap();
    assert!(back.same_span(&span).unwrap());
}

#[test]
fn hilbert_series_examples() {
    let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
    let w = [1, 1];
    let free = groebner_basis_in(&r, 1, &[], MonomialOrder::GrevLex).unwrap();
    let h = free.hilbert_series(&w, &[0]).unwrap();
    assert_eq!(h.denominator(), &[1, 1]);
    assert_eq!(h.numerator().values().cloned().collect::<Vec<_>>(), vec![1.into()]);
    let line = ideal_basis(&r, &polys(&r, &["x"])).unwrap().hilbert_series(&w, &[0]).unwrap();
    assert!((0..6).all(|d| line.coefficient(d) == 1.into()));
    let fat = ideal_basis(&r, &polys(&r, &["x^2", "x*y", "y^2"])).unwrap().hilbert_series(&w, &[0]).unwrap();
    let dims: Vec<i64> = (0..5).map(|d| fat.coefficient(d).try_into().unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 0, 0, 0]);
    let inhom = ideal_basis(&r, &polys(&r, &["x^2 + y"])).unwrap();
    assert!(inhom.hilbert_series(&w, &[0]).is_err());
}

#[test]
fn t_reduction_examples() {
    let r = PolyRing::new(&["x", "y", "t"], MonomialOrder::GrevLex).unwrap();
    let ps = polys(&r, &["x + y*t", "t^2", "x + t", "t"]);
    assert_eq!(substitute_t_zero(&ps[0], 2), polys(&r, &["x"])[0]);
    assert!(substitute_t_zero(&ps[1], 2).is_zero());
    assert_eq!(substitute_t_zero_ideal(&ps[2..], 2), polys(&r, &["x"]));
}

/// `dim (R/I)_d` by linear algebra on the degree-`d` part of `I`.
fn quotient_dimension(gens: &[Poly], d: u32) -> usize {
    let mons: Vec<Monomial> = monomials(3, d);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        let gd = g.total_degree().unwrap();
        if gd > d {
            continue;
        }
        for m in monomials(3, d - gd) {
            let prod = g.mul_term(&m, &Rational::one());
            let row = mons
                .iter()
                .map(|mm| prod.terms().iter().find(|t| &t.0 == mm).map_or_else(Rational::zero, |t| t.1.clone()))
                .collect();
            rows.push(row);
        }
    }
    mons.len() - rank(rows)
}

fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(left: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 1 {
            cur.push(d);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in 0..=d {
            cur.push(e);
            go(left - 1, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &piv;
                for k in c..ncols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn homogeneous_poly() -> impl Strategy<Value = Poly> {
    (1u32..=3, prop::collection::vec((0u32..4, 0u32..4, -3i64..=3), 1..4)).prop_map(|(deg, terms)| {
        let r = ring(MonomialOrder::GrevLex);
        let t = terms.into_iter().filter_map(|(a, b, c)| {
            (a + b <= deg).then(|| (Monomial::from_exponents(&[a, b, deg - a - b]), rat(c)))
        });
        let p = Poly::from_terms(&r, t);
        if p.is_zero() { Poly::term(&r, Monomial::var(3, 0, deg), rat(1)) } else { p }
    })
}

fn any_poly(order: MonomialOrder) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -4i64..=4), 1..4).prop_map(move |terms| {
        let r = ring(order);
        Poly::from_terms(&r, terms.into_iter().map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), rat(k))))
    })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::GrevLex), Just(MonomialOrder::Lex), Just(MonomialOrder::Elimination { block: 1 })]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bases_satisfy_buchberger_and_normal_forms_are_stable(
        (o, gens, f) in order().prop_flat_map(|o| (Just(o), prop::collection::vec(any_poly(o), 1..4), any_poly(o)))
    ) {
        let r = ring(o);
        let gb = groebner_basis_in(&r, 1, &elts(&gens), o).unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        let nf = gb.normal_form_poly(&f).unwrap();
        prop_assert_eq!(gb.normal_form_poly(&nf).unwrap(), nf.clone());
        // f - NF(f) lies in the ideal
        prop_assert!(gb.contains_poly(&poly_arith(&f, &nf, ArithOp::Sub).unwrap()).unwrap());
        for g in &gens {
            prop_assert!(gb.contains_poly(g).unwrap());
        }
    }

    #[test]
    fn span_equality_is_reflexive_and_symmetric(
        a in prop::collection::vec(any_poly(MonomialOrder::GrevLex), 1..3),
        b in prop::collection::vec(any_poly(MonomialOrder::GrevLex), 1..3),
    ) {
        let r = ring(MonomialOrder::GrevLex);
        let ga = ideal_basis(&r, &a).unwrap();
        let gb = ideal_basis(&r, &b).unwrap();
        prop_assert!(ga.same_span(&ga).unwrap());
        prop_assert_eq!(ga.same_span(&gb).unwrap(), gb.same_span(&ga).unwrap());
        // a different generating set of the same ideal
        let mut a2 = a.clone();
        a2.push(poly_arith(&a[0], &a[0], ArithOp::Mul).unwrap());
        prop_assert!(ideal_basis(&r, &a2).unwrap().same_span(&ga).unwrap());
    }

    #[test]
    fn hilbert_series_matches_linear_algebra(gens in prop::collection::vec(homogeneous_poly(), 1..4)) {
        let r = ring(MonomialOrder::GrevLex);
        let gb = ideal_basis(&r, &gens).unwrap();
        let h = gb.hilbert_series(&[1, 1, 1], &[0]).unwrap();
        for d in 0..=8u32 {
            let expect = quotient_dimension(&gens, d) as i64;
            prop_assert_eq!(h.coefficient(d as i64), expect.into(), "degree {}", d);
        }
    }

    #[test]
    fn koszul_relations_lie_in_syzygies(gens in prop::collection::vec(any_poly(MonomialOrder::GrevLex), 2..4)) {
        let r = ring(MonomialOrder::GrevLex);
        let syz = syzygy_basis(&elts(&gens)).unwrap();
        let k = gens.len();
        let span = groebner_basis_in(&r, k, &syz, MonomialOrder::GrevLex).unwrap();
        for i in 0..k {
            for j in i + 1..k {
                let mut c = vec![Poly::zero(&r); k];
                c[i] = gens[j].clone();
                c[j] = gens[i].neg();
                prop_assert!(span.contains(&FreeModuleElement::new(&r, c).unwrap()).unwrap());
            }
        }
    }
}
