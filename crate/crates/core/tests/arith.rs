use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use primult::arith::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap()
}

fn p(s: &str) -> Poly {
    Poly::parse(&ring(), s).unwrap()
}

fn op(a: &Poly, b: &Poly, o: ArithOp) -> Poly {
    poly_arith(a, b, o).unwrap()
}

#[test]
fn arithmetic_examples() {
    assert_eq!(op(&p("x + 1"), &p("x - 1"), ArithOp::Add), p("2*x"));
    assert_eq!(op(&p("x + y"), &p("x - y"), ArithOp::Mul), p("x^2 - y^2"));
    assert!(op(&p("x*y + 3/7"), &Poly::zero(&ring()), ArithOp::Mul).is_zero());
    assert_eq!(evaluate_at_origin(&p("x^2 + 3")), rat(3));
    assert_eq!(evaluate_at_origin(&Poly::zero(&ring())), rat(0));
    assert_eq!(evaluate_at_origin(&p("5*x*y + 7")), rat(7));
    let other = PolyRing::new(&["u"], MonomialOrder::GrevLex).unwrap();
    assert!(poly_arith(&p("x"), &Poly::parse(&other, "u").unwrap(), ArithOp::Add).is_err());
}

#[test]
fn canonical_text_form() {
    assert_eq!(p("y + x^2 - 1/2 + 4/8*x*y").to_string(), "x^2 + 1/2*x*y + y - 1/2");
    let lex = PolyRing::new(&["x", "y"], MonomialOrder::Lex).unwrap();
    assert_eq!(Poly::parse(&lex, "y^3 + x").unwrap().to_string(), "x + y^3");
}

/// Fractions kept as a reduced (numerator, positive denominator) pair.
#[derive(Clone, Debug, PartialEq)]
struct Frac(BigInt, BigInt);

impl Frac {
    fn new(n: BigInt, d: BigInt) -> Frac {
        assert!(!d.is_zero());
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Frac(n, d)
    }
    fn add(&self, o: &Frac) -> Frac {
        Frac::new(&self.0 * &o.1 + &o.0 * &self.1, &self.1 * &o.1)
    }
    fn sub(&self, o: &Frac) -> Frac {
        Frac::new(&self.0 * &o.1 - &o.0 * &self.1, &self.1 * &o.1)
    }
    fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.0 * &o.0, &self.1 * &o.1)
    }
    fn div(&self, o: &Frac) -> Frac {
        Frac::new(&self.0 * &o.1, &self.1 * &o.0)
    }
}

#[test]
fn rationals_match_fraction_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut q = rat(1);
    let mut f = Frac::new(1.into(), 1.into());
    for step in 0..10_000 {
        let n: i64 = rng.gen_range(-50..=50);
        let d: i64 = rng.gen_range(1..=50);
        let (qb, fb) = (rat2(n, d), Frac::new(n.into(), d.into()));
        match rng.gen_range(0..4) {
            0 => {
                q = &q + &qb;
                f = f.add(&fb);
            }
            1 => {
                q = &q - &qb;
                f = f.sub(&fb);
            }
            2 => {
                q = &q * &qb;
                f = f.mul(&fb);
            }
            _ if n != 0 => {
                q = &q / &qb;
                f = f.div(&fb);
            }
            _ => {}
        }
        assert_eq!((q.numer().clone(), q.denom().clone()), (f.0.clone(), f.1.clone()), "step {step}");
        assert!(q.denom().is_positive());
        // keep sizes bounded so the walk stays cheap
        if q.numer().bits() > 256 || q.denom().bits() > 256 {
            q = rat(1);
            f = Frac::new(1.into(), 1.into());
        }
    }
    assert_eq!(parse_rational("-6/4").unwrap(), rat2(-3, 2));
    assert_eq!(format_rational(&rat2(10, -4)), "-5/2");
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -6i64..=6, 1i64..=4), 0..6).prop_map(|terms| {
        Poly::from_terms(
            &ring(),
            terms.into_iter().map(|((a, b, c), n, d)| (Monomial::from_exponents(&[a, b, c]), rat2(n, d))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        use ArithOp::*;
        prop_assert_eq!(op(&op(&a, &b, Add), &c, Add), op(&a, &op(&b, &c, Add), Add));
        prop_assert_eq!(op(&op(&a, &b, Mul), &c, Mul), op(&a, &op(&b, &c, Mul), Mul));
        prop_assert_eq!(op(&a, &b, Mul), op(&b, &a, Mul));
        prop_assert_eq!(op(&a, &b, Add), op(&b, &a, Add));
        prop_assert_eq!(op(&a, &op(&b, &c, Add), Mul), op(&op(&a, &b, Mul), &op(&a, &c, Mul), Add));
    }

    #[test]
    fn self_difference_is_empty(a in poly_strategy()) {
        let d = op(&a, &a, ArithOp::Sub);
        prop_assert!(d.terms().is_empty());
    }

    #[test]
    fn text_round_trip(a in poly_strategy()) {
        let s = a.to_string();
        let back = Poly::parse(&ring(), &s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn terms_are_sorted_and_nonzero(a in poly_strategy()) {
        let ord = ring().order();
        prop_assert!(a.terms().iter().all(|t| !t.1.is_zero() && t.0.nvars() == 3));
        prop_assert!(a.terms().windows(2).all(|w| ord.cmp(&w[0].0, &w[1].0).is_gt()));
    }
}
