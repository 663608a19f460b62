//! Monomial ideal operations checked pointwise against brute-force membership.

use proptest::prelude::*;
use qsocle_core::{maximal_power, minimalize, ExponentVector, MonomialIdeal};

fn ev(c: &[u32]) -> ExponentVector {
    ExponentVector::new(c.to_vec()).unwrap()
}

fn box_points(dim: usize, side: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=side).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn member(j: &MonomialIdeal, p: &[u32]) -> bool {
    j.contains(&ev(p)).unwrap()
}

/// `α ∈ J : K` iff `α + k ∈ J` for every monomial `k ∈ K`; monomials of `K`
/// up to `side` stand in for all of them since `J` is generated below `side`.
fn colon_member(j: &MonomialIdeal, k: &MonomialIdeal, alpha: &[u32], side: u32) -> bool {
    box_points(alpha.len(), side)
        .iter()
        .filter(|kk| member(k, kk))
        .all(|kk| {
            let s: Vec<u32> = alpha.iter().zip(kk).map(|(a, b)| a + b).collect();
            member(j, &s)
        })
}

#[test]
fn colon_of_cube_parameters_by_m_squared_is_m_cubed() {
    let q = MonomialIdeal::diagonal(&[3, 3]).unwrap();
    let m2 = maximal_power(2, 2);
    let oracle: Vec<Vec<u32>> = box_points(2, 6)
        .into_iter()
        .filter(|p| colon_member(&q, &m2, p, 6))
        .collect();
    let oracle_ideal = MonomialIdeal::from_generators(2, oracle).unwrap();
    assert_eq!(oracle_ideal, maximal_power(2, 3));
    assert_eq!(q.colon(&m2).unwrap(), oracle_ideal);
}

fn ideal_strategy(dim: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..4, dim), 1..4)
        .prop_map(move |gens| MonomialIdeal::from_generators(dim, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_membership_is_decomposition(j in ideal_strategy(2), k in ideal_strategy(2)) {
        let jk = j.product(&k).unwrap();
        for alpha in box_points(2, 7) {
            let decomposes = box_points(2, 7).iter().any(|beta| {
                beta.iter().zip(&alpha).all(|(b, a)| b <= a) && member(&j, beta) && {
                    let gamma: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
                    member(&k, &gamma)
                }
            });
            prop_assert_eq!(member(&jk, &alpha), decomposes);
        }
    }

    #[test]
    fn sum_and_intersection_are_pointwise(j in ideal_strategy(3), k in ideal_strategy(3)) {
        let s = j.sum(&k).unwrap();
        let i = j.intersect(&k).unwrap();
        for alpha in box_points(3, 4) {
            prop_assert_eq!(member(&s, &alpha), member(&j, &alpha) || member(&k, &alpha));
            prop_assert_eq!(member(&i, &alpha), member(&j, &alpha) && member(&k, &alpha));
        }
    }

    #[test]
    fn colon_is_pointwise(j in ideal_strategy(2), k in ideal_strategy(2)) {
        let c = j.colon(&k).unwrap();
        for alpha in box_points(2, 4) {
            prop_assert_eq!(member(&c, &alpha), colon_member(&j, &k, &alpha, 8));
        }
    }

    #[test]
    fn colon_adjunction(j in ideal_strategy(3), k in ideal_strategy(3)) {
        let c = j.colon(&k).unwrap();
        prop_assert!(k.product(&c).unwrap().is_subset_of(&j).unwrap());
    }

    #[test]
    fn colon_by_maximal_powers_is_monotone(j in ideal_strategy(3), q in 0u32..5) {
        let lower = j.colon(&maximal_power(3, q)).unwrap();
        let upper = j.colon(&maximal_power(3, q + 1)).unwrap();
        prop_assert!(lower.is_subset_of(&upper).unwrap());
        prop_assert_eq!(j.colon_by_maximal_power(q), lower);
    }

    #[test]
    fn operations_return_normalized_values(j in ideal_strategy(3), k in ideal_strategy(3), n in 0u32..3) {
        for out in [
            j.sum(&k).unwrap(),
            j.product(&k).unwrap(),
            j.intersect(&k).unwrap(),
            j.colon(&k).unwrap(),
            j.power(n),
        ] {
            let again = minimalize(3, out.generators().to_vec()).unwrap();
            prop_assert_eq!(&again, &out);
            for (x, g) in out.generators().iter().enumerate() {
                for (y, h) in out.generators().iter().enumerate() {
                    prop_assert!(x == y || !g.divides(h));
                }
            }
        }
    }

    #[test]
    fn disjoint_supports_intersect_as_product(
        xs in prop::collection::vec(0u32..4, 1..3),
        ys in prop::collection::vec(0u32..4, 1..3),
    ) {
        // generators of J live on x1, x2; generators of K on x3
        let j = MonomialIdeal::from_generators(3, xs.iter().map(|&x| vec![x + 1, 3 - x, 0])).unwrap();
        let k = MonomialIdeal::from_generators(3, ys.iter().map(|&y| vec![0, 0, y + 1])).unwrap();
        prop_assert_eq!(j.intersect(&k).unwrap(), j.product(&k).unwrap());
    }
}
