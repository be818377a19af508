use proptest::prelude::*;

use primult::arith::*;
use primult::multiring::*;

fn el(r: &TruncRing, s: &str) -> TruncElem {
    r.parse(s).unwrap()
}

fn base(r: &TruncRing, s: &str) -> Poly {
    r.parse_base(s).unwrap()
}

fn deriv(r: &TruncRing, d: [&str; 2], alpha: &str) -> AutMap {
    AutMap::from_derivation(r, &[base(r, d[0]), base(r, d[1])], &base(r, alpha)).unwrap()
}

#[test]
fn zero_divisor_examples() {
    let r = TruncRing::new(&["x"], 2).unwrap();
    assert!(is_zero_divisor(&el(&r, "t")));
    assert!(!is_zero_divisor(&el(&r, "1 + t")));
    assert!(!is_zero_divisor(&el(&r, "x")));
    assert!(is_zero_divisor(&r.zero()));
    assert!(el(&r, "1 + t").is_unit());
    assert!(!el(&r, "x").is_unit());
    assert!(el(&r, "t^2 + x*t").mul(&el(&r, "t")).unwrap().is_zero());
}

#[test]
fn composition_examples() {
    let r = TruncRing::new(&["x", "y"], 2).unwrap();
    let id = AutMap::identity(&r);
    assert_eq!(compose(&id, &id).unwrap(), id);
    let phi = deriv(&r, ["x*y", "1"], "3 + x");
    let psi = deriv(&r, ["y^2", "x"], "2");
    let c = compose(&phi, &psi).unwrap();
    assert_eq!(c.derivation(), vec![base(&r, "x*y + 3*y^2 + x*y^2"), base(&r, "1 + 3*x + x^2")]);
    assert_eq!(compose(&id, &psi).unwrap(), psi);
    let ij = deriv(&r, ["1", "0"], "1");
    let jk = deriv(&r, ["0", "1"], "1");
    assert!(verify_cocycle(&ij, &jk, &deriv(&r, ["1", "1"], "1")).unwrap());
    assert!(!verify_cocycle(&ij, &jk, &deriv(&r, ["1", "0"], "1")).unwrap());
    assert!(verify_cocycle(&id, &id, &id).unwrap());
    assert!(AutMap::from_derivation(&r, &[base(&r, "0"), base(&r, "0")], &base(&r, "x")).is_err());
}

fn small_base() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2)
}

fn base_of(r: &TruncRing, (c, a, b, q): (i64, i64, i64, i64)) -> Poly {
    let m = |e: [u32; 2], k: i64| (Monomial::from_exponents(&e), rat(k));
    Poly::from_terms(r.base(), [m([0, 0], c), m([1, 0], a), m([0, 1], b), m([1, 1], q)])
}

/// A random automorphism of `Q[x,y][t]/(t^n)` with coefficients of degree
/// at most 2.
fn aut_strategy(n: u32) -> impl Strategy<Value = AutMap> {
    let k = (n - 1) as usize;
    (
        prop::collection::vec(small_base(), 2 * k),
        prop::collection::vec(small_base(), k),
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)],
    )
        .prop_map(move |(fs, us, u1c)| {
            let r = TruncRing::new(&["x", "y"], n).unwrap();
            let mut xs = Vec::new();
            for v in 0..2 {
                let mut c = vec![Poly::var(r.base(), v)];
                for i in 0..k {
                    c.push(base_of(&r, fs[v * k + i]));
                }
                xs.push(TruncElem::new(&r, c).unwrap());
            }
            let mut tc = vec![Poly::zero(r.base())];
            for (i, mut u) in us.into_iter().enumerate() {
                if i == 0 {
                    // u1 must be a unit at the origin
                    u.0 = u1c;
                }
                tc.push(base_of(&r, u));
            }
            AutMap::new(&r, xs, TruncElem::new(&r, tc).unwrap()).unwrap()
        })
}

fn elem_strategy(n: u32) -> impl Strategy<Value = TruncElem> {
    prop::collection::vec(small_base(), n as usize).prop_map(move |cs| {
        let r = TruncRing::new(&["x", "y"], n).unwrap();
        TruncElem::new(&r, cs.into_iter().map(|c| base_of(&r, c)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(
        (a, b, c) in (2u32..=3).prop_flat_map(|n| (aut_strategy(n), aut_strategy(n), aut_strategy(n)))
    ) {
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn automorphisms_are_ring_maps(
        (phi, f, g) in (2u32..=3).prop_flat_map(|n| (aut_strategy(n), elem_strategy(n), elem_strategy(n)))
    ) {
        let lhs = phi.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = phi.apply(&f).unwrap().mul(&phi.apply(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocycle_law_for_double_structures(phi in aut_strategy(2), psi in aut_strategy(2)) {
        let r = phi.ring().clone();
        let c = compose(&phi, &psi).unwrap();
        let a = phi.alpha();
        for (k, (d1, d2)) in phi.derivation().iter().zip(psi.derivation()).enumerate() {
            let expect = poly_arith(d1, &poly_arith(&a, &d2, ArithOp::Mul).unwrap(), ArithOp::Add).unwrap();
            prop_assert_eq!(&c.derivation()[k], &expect);
        }
        prop_assert_eq!(c.alpha(), poly_arith(&a, &psi.alpha(), ArithOp::Mul).unwrap());
        prop_assert!(verify_cocycle(&phi, &psi, &c).unwrap());
        let bumped = AutMap::from_derivation(&r, &c.derivation(), &poly_arith(&c.alpha(), &Poly::var(r.base(), 0), ArithOp::Add).unwrap()).unwrap();
        prop_assert!(!verify_cocycle(&phi, &psi, &bumped).unwrap());
    }

    #[test]
    fn zero_divisors_are_the_complement_of_s_n(u in (1u32..=3).prop_flat_map(elem_strategy)) {
        if !u.is_zero() {
            prop_assert!(u.is_zero_divisor() != u.in_s_n());
        }
        prop_assert_eq!(u.is_zero_divisor(), u.u0().is_zero());
        if u.is_unit_at_origin() {
            let inv = u.jet_inverse(5).unwrap();
            let prod = u.mul(&inv).unwrap().truncate_jet(5);
            prop_assert_eq!(prod, u.ring().one());
        }
    }
}
