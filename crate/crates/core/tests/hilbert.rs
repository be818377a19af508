use primult::arith::{rat, Rational};
use primult::fpmod::{
    first_canonical_filtration, refine_filtrations, second_canonical_filtration, Grading, IdealModule, PresMod,
};
use primult::hilbert::*;
use primult::multiring::TruncRing;

fn ring(n: u32) -> TruncRing {
    TruncRing::new(&["x0", "x1", "x2"], n).unwrap()
}

fn choose(a: i64, r: i64) -> i64 {
    if a < r || a < 0 {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

fn matches(p: &HilbPoly, f: impl Fn(i64) -> i64) {
    for d in 2..12 {
        assert_eq!(p.eval(d), rat(f(d)), "degree {d}: {p}");
    }
}

#[test]
fn plane_examples() {
    let r = ring(1);
    let o = PresMod::free_graded(&r, Grading::standard(3, 0, vec![0])).unwrap();
    matches(&hilbert_polynomial(&o).unwrap(), |d| choose(d + 2, 2));
    let o1 = PresMod::free_graded(&r, Grading::standard(3, 0, vec![1])).unwrap();
    matches(&hilbert_polynomial(&o1).unwrap(), |d| choose(d + 1, 2));
    let pt = IdealModule::new(&r, &[r.parse("x0").unwrap(), r.parse("x1").unwrap()], Some(0)).unwrap();
    matches(&hilbert_polynomial(pt.module()).unwrap(), |d| choose(d + 2, 2) - 1);
    assert_eq!(HilbPoly::binomial(2, 2), HilbPoly::new(vec![rat(1), Rational::new(3.into(), 2.into()), Rational::new(1.into(), 2.into())]));
}

#[test]
fn reduced_polynomial_of_s2() {
    let r = ring(2);
    let s2 = PresMod::free_graded(&r, Grading::standard(3, 1, vec![0])).unwrap();
    let p = reduced_hilbert_polynomial(&s2, None).unwrap();
    matches(&p, |d| choose(d + 2, 2) + choose(d + 1, 2));
    let rd = rank_degree_reduced(&s2).unwrap();
    assert_eq!(rd.rank, rat(2));
    let o = PresMod::free_graded(&ring(1), Grading::standard(3, 0, vec![0])).unwrap();
    assert_eq!(rank_degree_reduced(&o).unwrap().rank, rat(1));
    let finite = PresMod::cyclic(
        &r,
        &[r.parse("x0").unwrap(), r.parse("x1").unwrap(), r.parse("x2^2").unwrap()],
        Some(Grading::standard(3, 1, vec![0])),
    )
    .unwrap();
    assert_eq!(rank_degree_reduced(&finite).unwrap().rank, rat(0));
    let zero = PresMod::cyclic(&r, &[r.one()], Some(Grading::standard(3, 1, vec![0]))).unwrap();
    assert!(reduced_hilbert_polynomial(&zero, None).unwrap().is_zero());
}

#[test]
fn additivity_on_t_sequence() {
    let r = ring(2);
    let g = Grading::standard(3, 1, vec![0]);
    let s2 = PresMod::free_graded(&r, g.clone()).unwrap();
    let sub = IdealModule::new(&r, &[r.parse("t").unwrap()], Some(1)).unwrap();
    let quo = PresMod::cyclic(&r, &[r.parse("t").unwrap()], Some(g)).unwrap();
    let lhs = reduced_hilbert_polynomial(&s2, None).unwrap();
    let rhs = reduced_hilbert_polynomial(sub.module(), None)
        .unwrap()
        .add(&reduced_hilbert_polynomial(&quo, None).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn filtration_independence() {
    let r = ring(3);
    let g = Grading::standard(3, 1, vec![0]);
    let m = PresMod::cyclic(&r, &[r.parse("x0*t").unwrap(), r.parse("x1^2").unwrap()], Some(g)).unwrap();
    let (d2, f2) = refine_filtrations(&first_canonical_filtration(&m), &second_canonical_filtration(&m)).unwrap();
    let p = reduced_hilbert_polynomial(&m, Some(&d2)).unwrap();
    assert_eq!(reduced_hilbert_polynomial(&m, Some(&f2)).unwrap(), p);
    // the trivial filtration M ⊃ 0 has a quotient not killed by t
    let trivial = primult::fpmod::FiltrationChain::new(
        &m,
        vec![primult::fpmod::Submodule::whole(&m), primult::fpmod::Submodule::zero(&m)],
    )
    .unwrap();
    assert!(reduced_hilbert_polynomial(&m, Some(&trivial)).is_err());
}

#[test]
fn display() {
    let p = HilbPoly::binomial(2, 2).add(&HilbPoly::binomial(1, 2));
    assert_eq!(p.to_string(), "d^2 + 2*d + 1");
}
