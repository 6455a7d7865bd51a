use multicirc::intmat::IntMatrix;
use multicirc::oracle::element_order_bruteforce;
use multicirc::quotient::QuotientGroup;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn group(max_n: usize, k: i64, max_order: u64) -> impl Strategy<Value = QuotientGroup> {
    (1..=max_n)
        .prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(-k..=k, n), n))
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
        .prop_filter("order in range", move |m| {
            let d = m.det().unwrap();
            !d.is_zero() && d <= BigInt::from(max_order) && d >= -BigInt::from(max_order)
        })
        .prop_map(|m| QuotientGroup::new(&m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn canonical_forms_are_idempotent(g in group(3, 6, 80), v in proptest::collection::vec(-40i64..=40, 3)) {
        let a = g.canonicalize_i64(&v[..g.dim()]).unwrap();
        prop_assert_eq!(g.canonicalize_i64(a.coords()).unwrap(), a.clone());
        prop_assert!(g.congruent(&a.to_big(), &v[..g.dim()].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).unwrap());
        prop_assert_eq!(g.element_at(g.index_of(&a)), a);
    }

    #[test]
    fn congruence_tests_agree(g in group(3, 6, 80), v in proptest::collection::vec(-40i64..=40, 6)) {
        let n = g.dim();
        let a: Vec<BigInt> = v[..n].iter().map(|&x| BigInt::from(x)).collect();
        let b: Vec<BigInt> = v[3..3 + n].iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(g.congruent(&a, &b).unwrap(), g.congruent_by_inverse(&a, &b).unwrap());
    }

    #[test]
    fn smith_coordinates_are_a_homomorphism(g in group(3, 6, 60), i in any::<usize>(), j in any::<usize>()) {
        let a = g.element_at(i % g.order() as usize);
        let b = g.element_at(j % g.order() as usize);
        let fa = g.to_snf_coords(&a);
        let fb = g.to_snf_coords(&b);
        let sum: Vec<i64> = fa.iter().zip(&fb).zip(g.snf_factors()).map(|((x, y), &s)| (x + y).rem_euclid(s as i64)).collect();
        prop_assert_eq!(g.to_snf_coords(&g.add(&a, &b)), sum.clone());
        prop_assert_eq!(g.from_snf_coords(&sum).unwrap(), g.add(&a, &b));
    }

    #[test]
    fn order_formula_matches_search(g in group(3, 6, 60), i in any::<usize>()) {
        let a = g.element_at(i % g.order() as usize);
        prop_assert_eq!(g.element_order(&a), element_order_bruteforce(&g, &a));
    }

    #[test]
    fn cyclic_iff_penultimate_divisor_is_one(g in group(3, 6, 60)) {
        let n = g.dim();
        let cyclic_by_search = g.elements().iter().any(|a| g.element_order(a) == g.order());
        prop_assert_eq!(g.is_cyclic(), cyclic_by_search);
        prop_assert_eq!(g.is_cyclic(), n == 0 || g.divisor(n - 1) == BigInt::from(1));
    }

    #[test]
    fn rank_bounds_generating_sets(g in group(3, 5, 40), picks in proptest::collection::vec(any::<usize>(), 1..4)) {
        let gens: Vec<_> = picks.iter().map(|&p| g.element_at(p % g.order() as usize)).collect();
        if g.generates(&gens).unwrap() {
            prop_assert!(gens.len() >= g.rank());
        }
        prop_assert_eq!(g.generation_witness(&gens).unwrap().is_some(), g.generates(&gens).unwrap());
    }
}

#[test]
fn automorphism_counts() {
    let cases: [(&[u64], usize); 4] = [(&[9], 6), (&[2, 2], 6), (&[2, 4], 8), (&[3, 3], 48)];
    for (factors, count) in cases {
        let g = QuotientGroup::diagonal(factors).unwrap();
        let auts = g.automorphisms();
        assert_eq!(auts.len(), count, "{factors:?}");
        for perm in &auts {
            for a in g.elements() {
                for b in g.elements() {
                    let img = |x: &multicirc::quotient::GroupElement| g.element_at(perm[g.index_of(x)]);
                    assert_eq!(img(&g.add(&a, &b)), g.add(&img(&a), &img(&b)));
                }
            }
        }
    }
}
