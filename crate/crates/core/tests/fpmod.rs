use primult::arith::Poly;
use primult::fpmod::*;
use primult::multiring::{TruncElem, TruncRing};

fn ring(vars: &[&str], n: u32) -> TruncRing {
    TruncRing::new(vars, n).unwrap()
}

fn el(r: &TruncRing, s: &str) -> TruncElem {
    r.parse(s).unwrap()
}

fn ideal(r: &TruncRing, gens: &[&str]) -> IdealModule {
    let g: Vec<TruncElem> = gens.iter().map(|s| el(r, s)).collect();
    IdealModule::new(r, &g, Some(0)).unwrap()
}

fn graded(r: &TruncRing, degs: Vec<i64>) -> Grading {
    Grading::standard(r.nbase(), 0, degs)
}

#[test]
fn balanced_ideal_examples() {
    let r = ring(&["X", "Y"], 2);
    let i = ideal(&r, &["X^2", "Y^2", "X*Y"]);
    let b = i.balance().unwrap();
    assert!(b.balanced);
    let j = ideal(&r, &["X^2", "Y^2 + t", "X*Y"]);
    let b = j.balance().unwrap();
    assert!(!b.balanced);
    assert_eq!(b.witness.unwrap(), el(&r, "t*X"));
    assert_eq!(b.level, Some(1));
    let c = b.certificate.unwrap();
    assert_eq!(j.image(&c).unwrap(), el(&r, "t*X"));
}

#[test]
fn free_modules_are_balanced_and_quasi_free() {
    let r = ring(&["x", "y"], 3);
    let f = PresMod::free(&r, 2);
    assert!(is_balanced(&f).unwrap().0);
    assert_eq!(quasi_free_type(&f).unwrap(), QuasiFreeType::Type(vec![0, 0, 2]));
    assert_eq!(generic_type(&f).unwrap(), vec![0, 0, 2]);
    let maps = comparison_maps(&f).unwrap();
    for m in maps.lambda.iter().chain(&maps.mu) {
        assert!(m.is_injective(Locality::Global).unwrap());
        assert!(m.is_surjective(Locality::Global).unwrap());
    }
}

#[test]
fn first_filtration_of_trunc_quotient() {
    let r = ring(&["x"], 2);
    let m = PresMod::cyclic(&r, &[el(&r, "x*t")], None).unwrap();
    let f = first_canonical_filtration(&m);
    let g = f.quotients().unwrap();
    assert_eq!(g.len(), 2);
    // G_1 = R/(x)
    assert_eq!(g[1].fiber_dim(), 1);
    assert!(g[1].is_zero_element(&[el(&r, "x")]).unwrap());
    assert!(!g[1].is_zero_element(&[el(&r, "1")]).unwrap());
    assert_eq!(generic_type(&m).unwrap(), vec![1, 0]);
}

#[test]
fn quasi_free_examples() {
    let r = ring(&["x", "y"], 2);
    let m = PresMod::direct_sum(&[PresMod::free(&r, 1), PresMod::truncated(&r, 1, None).unwrap()]).unwrap();
    assert_eq!(quasi_free_type(&m).unwrap(), QuasiFreeType::Type(vec![1, 1]));
    // the maximal ideal of R, with t acting by zero
    let rels = vec![vec![el(&r, "y"), el(&r, "-x")], vec![el(&r, "t"), el(&r, "0")], vec![el(&r, "0"), el(&r, "t")]];
    let mm = PresMod::new(&r, 2, &rels, None).unwrap();
    assert_eq!(quasi_free_type(&mm).unwrap(), QuasiFreeType::Absent { first_nonfree: Some(0) });
}

#[test]
fn extensions_of_r_by_ri() {
    let r = ring(&["x"], 2);
    let one = Poly::one(r.base());
    let e = extension_R_by_Ri(&r, &one, 1).unwrap();
    assert!(e.is_exact().unwrap());
    assert_eq!(quasi_free_type(&e.module).unwrap(), QuasiFreeType::Type(vec![0, 1]));
    let zero = Poly::zero(r.base());
    let e = extension_R_by_Ri(&r, &zero, 1).unwrap();
    assert!(e.is_exact().unwrap());
    assert_eq!(quasi_free_type(&e.module).unwrap(), QuasiFreeType::Type(vec![2, 0]));
    let x = r.parse_base("x").unwrap();
    let e = extension_R_by_Ri(&r, &x, 1).unwrap();
    assert!(e.is_exact().unwrap());
    assert!(quasi_free_type(&e.module).unwrap().type_vector().is_none());
}

#[test]
fn hom_and_ext_examples() {
    let r = ring(&["x"], 3);
    let rn = PresMod::free_graded(&r, graded(&r, vec![0])).unwrap();
    for i in 1..=3 {
        let ri = PresMod::truncated(&r, i, Some(graded(&r, vec![0]))).unwrap();
        let h = hom_module(&ri, &rn).unwrap();
        assert_eq!(h.module().hilbert_series().unwrap(), ri.hilbert_series().unwrap());
    }
    let tors = PresMod::cyclic(&r, &[el(&r, "x")], None).unwrap();
    assert!(hom_module(&tors, &PresMod::free(&r, 1)).unwrap().module().is_zero());
    let rr = PresMod::truncated(&r, 1, Some(graded(&r, vec![0]))).unwrap();
    for i in 1..3 {
        let ri = PresMod::truncated(&r, i, Some(graded(&r, vec![0]))).unwrap();
        let ext = ext1_module(&rr, &ri).unwrap();
        assert_eq!(ext.hilbert_series().unwrap(), rr.hilbert_series().unwrap(), "i = {i}");
    }
    assert!(ext1_module(&PresMod::free(&r, 2), &rr).unwrap().is_zero());
}

#[test]
fn surjectivity_by_restriction() {
    let r = ring(&["x"], 2);
    let f = PresMod::free(&r, 1);
    assert!(surjective_iff_restriction(&ModMap::identity(&f)).unwrap());
    let tmap = ModMap::new(&f, &f, &[vec![el(&r, "t")]]).unwrap();
    assert!(!surjective_iff_restriction(&tmap).unwrap());
    let f2 = PresMod::free(&r, 2);
    let m = ModMap::new(&f2, &f, &[vec![el(&r, "1")], vec![el(&r, "t")]]).unwrap();
    assert!(surjective_iff_restriction(&m).unwrap());
}
