//! Box model checked against explicit multiplication in `k[x]/(x_i^{a_i})`.

use std::sync::Arc;

use proptest::prelude::*;
use qsocle_core::verify::random_box_ideals;
use qsocle_core::{mbar_power, maximal_power, project, BoxIdeal, BoxSpec, MonomialIdeal};

fn spec(a: &[u32]) -> Arc<BoxSpec> {
    Arc::new(BoxSpec::new(a.to_vec()).unwrap())
}

/// Product of monomials in the box, `None` when it vanishes modulo `Q`.
fn multiply(a: &[u32], x: &[u32], y: &[u32]) -> Option<Vec<u32>> {
    let s: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
    s.iter().zip(a).all(|(v, ai)| v < ai).then_some(s)
}

fn all_points(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ai in a {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..ai).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// `(0) : E` from the multiplication table over every member of `E`.
fn annihilator_by_table(e: &BoxIdeal) -> Vec<Vec<u32>> {
    let a = e.spec().exponents().to_vec();
    let members = e.members();
    let mut out: Vec<Vec<u32>> = all_points(&a)
        .into_iter()
        .filter(|x| members.iter().all(|y| multiply(&a, x, y).is_none()))
        .collect();
    out.sort();
    out
}

fn sorted_members(e: &BoxIdeal) -> Vec<Vec<u32>> {
    let mut m = e.members();
    m.sort();
    m
}

#[test]
fn annihilator_of_x_in_2x2_box() {
    let s = spec(&[2, 2]);
    let e = BoxIdeal::generated_by(Arc::clone(&s), [&[1u32, 0][..]]);
    assert_eq!(annihilator_by_table(&e), vec![vec![1, 0], vec![1, 1]]);
    assert_eq!(e.box_annihilator(), e);
}

#[test]
fn square_of_m_cubed_vanishes_in_3x3_box() {
    let s = spec(&[3, 3]);
    let e = project(&maximal_power(2, 3), &s).unwrap();
    let a = s.exponents().to_vec();
    let members = e.members();
    let survivors = members
        .iter()
        .flat_map(|x| members.iter().map(move |y| (x, y)))
        .filter(|(x, y)| multiply(&a, x, y).is_some())
        .count();
    assert_eq!(survivors, 0);
    assert!(e.box_power(2).is_empty());
    assert_eq!(e.box_power(2), project(&maximal_power(2, 6), &s).unwrap());
}

#[test]
fn socle_duality_on_all_small_boxes() {
    for a in [vec![1, 3], vec![2, 3], vec![4, 4], vec![2, 2, 3], vec![3, 1, 4], vec![2, 2, 2, 2]] {
        let s = spec(&a);
        let rho = s.rho();
        for i in 0..=rho + 1 {
            assert_eq!(
                mbar_power(&s, i).box_annihilator(),
                mbar_power(&s, rho + 1 - i),
                "a={a:?} i={i}"
            );
        }
    }
}

#[test]
fn random_ideals_agree_with_table_annihilator() {
    for e in random_box_ideals(60, 7) {
        assert!(e.is_upward_closed());
        assert_eq!(sorted_members(&e.box_annihilator()), annihilator_by_table(&e));
    }
}

fn small_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..5, 2), 1..4)
        .prop_map(|gens| MonomialIdeal::from_generators(2, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_annihilator_is_identity(a0 in 1u32..5, a1 in 1u32..5, a2 in 1u32..4, pts in prop::collection::vec((0u32..5, 0u32..5, 0u32..4), 0..4)) {
        let s = spec(&[a0, a1, a2]);
        let pts: Vec<Vec<u32>> = pts.into_iter().map(|(x, y, z)| vec![x, y, z]).collect();
        let e = BoxIdeal::generated_by(Arc::clone(&s), pts.iter().map(Vec::as_slice));
        prop_assert_eq!(e.box_annihilator().box_annihilator(), e);
    }

    #[test]
    fn projection_is_multiplicative(j in small_ideal(), k in small_ideal(), a0 in 1u32..6, a1 in 1u32..6) {
        let s = spec(&[a0, a1]);
        let lhs = project(&j.product(&k).unwrap(), &s).unwrap();
        let rhs = project(&j, &s).unwrap().box_product(&project(&k, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_pointwise(j in small_ideal(), a0 in 1u32..6, a1 in 1u32..6) {
        let s = spec(&[a0, a1]);
        let image = project(&j, &s).unwrap();
        prop_assert!(image.is_upward_closed());
        for p in all_points(&[a0, a1]) {
            let alpha = qsocle_core::ExponentVector::new(p.clone()).unwrap();
            prop_assert_eq!(image.contains(&p), j.contains(&alpha).unwrap());
        }
    }
}
