use num_bigint::BigInt;
use proptest::prelude::*;

use primult::dualtor::{natural_map, torsion};
use primult::fpmod::*;
use primult::groebner::HilbertSeries;
use primult::multiring::{TruncElem, TruncRing};

fn ring(n: u32) -> TruncRing {
    TruncRing::new(&["x", "y"], n).unwrap()
}

/// Rows of a homogeneous relation matrix: each row has a degree and, per
/// generator, an optional term `c x^a y^(d-a-e*w) t^e`.
type RowSpec = (u32, Vec<Option<(u32, u32, i64)>>);

fn build(n: u32, k: usize, rows: &[RowSpec], w: i64) -> PresMod {
    let r = ring(n);
    let rels: Vec<Vec<TruncElem>> = rows
        .iter()
        .map(|(d, entries)| {
            entries
                .iter()
                .map(|e| match *e {
                    Some((a, te, c)) if (a + te * w as u32) <= *d && te < n => {
                        let yexp = d - a - te * w as u32;
                        r.parse(&format!("{c}*x^{a}*y^{yexp}*t^{te}")).unwrap()
                    }
                    _ => r.zero(),
                })
                .collect()
        })
        .collect();
    PresMod::new(&r, k, &rels, Some(Grading::standard(2, w, vec![0; k]))).unwrap()
}

fn module_strategy() -> impl Strategy<Value = PresMod> {
    (2u32..=3, 1usize..=2, 1i64..=2).prop_flat_map(|(n, k, w)| {
        let entry = prop::option::weighted(0.7, (0u32..3, 0u32..3, prop_oneof![Just(1i64), Just(-1), Just(2)]));
        let row = (1u32..=4, prop::collection::vec(entry, k));
        prop::collection::vec(row, 1..=3).prop_map(move |rows| build(n, k, &rows, w))
    })
}

fn is_torsion(m: &PresMod) -> bool {
    torsion(m).unwrap().torsion.equals(&Submodule::whole(m), Locality::Global)
}

fn shifted(h: &HilbertSeries, k: i64) -> Vec<BigInt> {
    (0..12).map(|d| h.coefficient(d - k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn balance_criteria_agree(m in module_strategy()) {
        let c = balance_criteria(&m, Locality::Global).unwrap();
        prop_assert!(c.agree(), "{:?}", c.verdicts());
        let n = m.ring().n() as usize;
        let first = first_canonical_filtration(&m);
        let second = second_canonical_filtration(&m);
        // members: first[i] = M_i, second[j] = M^(n-j)
        for i in 0..=n {
            let mi = &first.members()[i];
            let upper = &second.members()[i];
            prop_assert!(mi.is_subset_of(upper, Locality::Global));
            if c.filtrations {
                prop_assert!(upper.is_subset_of(mi, Locality::Global));
            }
        }
        if let Some((i, w)) = &c.witness {
            let s = &second.members()[*i as usize];
            prop_assert!(s.contains(w).unwrap());
            prop_assert!(!first.members()[*i as usize].contains(w).unwrap());
        }
    }

    #[test]
    fn gamma_pieces_match_up_to_shift(m in module_strategy()) {
        let w = m.grading().unwrap().t_weight;
        let c = comparison_maps(&m).unwrap();
        for i in 0..c.gamma_lower.len() {
            let lower = c.gamma_lower[i].hilbert_series().unwrap();
            let upper = c.gamma_upper[i].hilbert_series().unwrap();
            prop_assert_eq!(shifted(&lower, 0), shifted(&upper, i as i64 * w), "i = {}", i);
        }
    }

    #[test]
    fn torsion_invariants(m in module_strategy()) {
        let m = m.ungraded();
        let rep = torsion(&m).unwrap();
        for (g, s) in &rep.witnesses {
            prop_assert!(!s.u0().is_zero());
            let sg: Vec<TruncElem> = g.iter().map(|x| x.mul(s).unwrap()).collect();
            prop_assert!(m.is_zero_element(&sg).unwrap());
        }
        let quotient = rep.torsion.cokernel().unwrap();
        prop_assert!(torsion(&quotient).unwrap().is_torsion_free());
        prop_assert!(is_torsion(&natural_map(&m).unwrap().cokernel().unwrap()));
        let r = PresMod::free(m.ring(), 1);
        prop_assert!(is_torsion(&ext1_module(&m, &r).unwrap()));
        let n = m.ring().n() as usize;
        let m1 = second_canonical_filtration(&m).members()[n - 1].as_module().unwrap();
        prop_assert_eq!(rep.is_torsion_free(), torsion(&m1).unwrap().is_torsion_free());
    }
}

/// `⊕ R[i]^{m_i}` as an ungraded presentation.
fn quasi_free(n: u32, ms: &[usize]) -> PresMod {
    let r = ring(n);
    let parts: Vec<PresMod> = ms
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| PresMod::truncated_power(&r, i as u32 + 1, m, None).unwrap())
        .collect();
    PresMod::direct_sum(&parts).unwrap()
}

fn scramble(m: &PresMod, ops: &[(usize, usize, usize, bool)]) -> PresMod {
    let r = m.ring().clone();
    let k = m.ngens();
    let mut rels = m.relations();
    let coeffs = ["x", "y + t", "2", "x*y - t", "-1/2"];
    for &(a, b, c, col) in ops {
        let (a, b) = (a % k.max(1), b % k.max(1));
        let c = r.parse(coeffs[c % coeffs.len()]).unwrap();
        if col && a != b {
            // new generator basis: column b gains c times column a
            for row in rels.iter_mut() {
                row[b] = row[b].add(&row[a].mul(&c).unwrap()).unwrap();
            }
        } else if !rels.is_empty() {
            let (ra, rb) = (a % rels.len(), b % rels.len());
            if ra != rb {
                let add: Vec<TruncElem> = rels[ra].iter().map(|e| e.mul(&c).unwrap()).collect();
                for (e, f) in rels[rb].iter_mut().zip(add) {
                    *e = e.add(&f).unwrap();
                }
            } else {
                // a redundant extra relation
                let extra = rels[ra].iter().map(|e| e.mul(&c).unwrap()).collect();
                rels.push(extra);
            }
        }
    }
    PresMod::new(&r, k, &rels, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quasi_free_type_survives_presentation_changes(
        (n, ms, ops) in (2u32..=3).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(0usize..=2, n as usize).prop_filter("1..=4 summands", |v| (1..=4).contains(&v.iter().sum::<usize>())),
            prop::collection::vec((0usize..4, 0usize..4, 0usize..5, any::<bool>()), 1..6),
        ))
    ) {
        let m = scramble(&quasi_free(n, &ms), &ops);
        prop_assert_eq!(quasi_free_type(&m).unwrap(), QuasiFreeType::Type(ms.clone()));
        // a quasi-free module is balanced exactly when it is free
        let (balanced, _) = is_balanced(&m).unwrap();
        prop_assert_eq!(balanced, ms[..n as usize - 1].iter().all(|&k| k == 0));
    }
}
