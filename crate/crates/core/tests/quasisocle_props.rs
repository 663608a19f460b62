//! Predictions for the regular model against direct computation.

use std::sync::Arc;

use num_rational::Ratio;
use proptest::prelude::*;
use qsocle_core::quasisocle::{
    expected_quasi_socle, fiber_check, gorenstein_oracle, lemma22_check, mq_equality_check, parameter_ideal,
    reduction_number_oracle, vv_check,
};
use qsocle_core::{
    analyze, compute_i, nilpotency_index, predict, project, AnalyzeOptions, BoxSpec, CaseSpec, ExponentVector,
    MonomialIdeal, DEFAULT_BOX_CAP,
};

fn grid(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=b).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// `α ∈ Q : 𝔪^q` iff `α + β ∈ Q` for every `β` of degree `q`, i.e. no such `β`
/// keeps every coordinate below its `a_i`.
fn colon_oracle(a: &[u32], q: u32, alpha: &[u32]) -> bool {
    let room: u32 = a.iter().zip(alpha).map(|(&ai, &x)| ai.saturating_sub(x + 1)).sum();
    let outside = a.iter().zip(alpha).any(|(&ai, &x)| x >= ai);
    outside || room < q
}

fn brute_force_i(a: &[u32], q: u32) -> MonomialIdeal {
    let pts: Vec<Vec<u32>> = grid(a).into_iter().filter(|p| colon_oracle(a, q, p)).collect();
    MonomialIdeal::from_generators(a.len(), pts).unwrap()
}

fn in_delta(a: &[u32], alpha: &[u32]) -> bool {
    let s: Ratio<u64> = a
        .iter()
        .zip(alpha)
        .map(|(&ai, &x)| Ratio::new(u64::from(x), u64::from(ai)))
        .sum();
    s >= Ratio::from_integer(1)
}

fn all_cases() -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for d in [2usize, 3] {
        for a in grid(&vec![4; d]).into_iter().filter(|a| a.iter().all(|&x| x >= 1)) {
            let rho: u32 = a.iter().map(|x| x - 1).sum();
            for q in 1..=rho + 1 {
                out.push(CaseSpec::regular(a.clone(), q).unwrap());
            }
        }
    }
    out
}

#[test]
fn colon_equals_parameters_plus_power_of_m() {
    for spec in all_cases() {
        let brute = brute_force_i(&spec.a, spec.q);
        assert_eq!(compute_i(&spec).unwrap(), brute, "{}", spec.label());
        assert_eq!(expected_quasi_socle(&spec), brute, "{}", spec.label());
    }
}

#[test]
fn integrality_iff_generators_in_delta() {
    for spec in all_cases() {
        let p = predict(&spec);
        let i = compute_i(&spec).unwrap();
        let all_in = i.generators().iter().all(|g| in_delta(&spec.a, g.coords()));
        if p.improper {
            assert!(i.is_unit());
            assert!(!p.integral);
            continue;
        }
        assert_eq!(p.integral, all_in, "{}", spec.label());
    }
}

#[test]
fn integral_cases_satisfy_every_identity() {
    for spec in all_cases() {
        let p = predict(&spec);
        if !p.integral {
            continue;
        }
        let label = spec.label();
        let r = p.reduction_number.unwrap() as u32;
        let q = i64::from(spec.q);
        assert_eq!(i64::from(r), (q + p.ell - 1) / p.ell, "{label}");
        let qi = parameter_ideal(&spec);
        let i = compute_i(&spec).unwrap();
        assert_eq!(reduction_number_oracle(&qi, &i, r + 3).unwrap(), r, "{label}");
        assert!(mq_equality_check(&spec).unwrap(), "{label}");
        assert!(vv_check(&spec, 1..=r + 2).unwrap(), "{label}");
        assert!(fiber_check(&spec, 1..=r + 2).unwrap(), "{label}");
        assert!(lemma22_check(&spec, r + 1, 2).unwrap(), "{label}");
        assert_eq!(gorenstein_oracle(&spec, DEFAULT_BOX_CAP).unwrap(), q % p.ell == 0, "{label}");
        let boxspec = Arc::new(BoxSpec::new(spec.a.clone()).unwrap());
        assert_eq!(nilpotency_index(&project(&i, &boxspec).unwrap()).unwrap(), r, "{label}");
        assert_eq!(p.rees_cm, Some(true), "{label}");
        // I^{n+1} ⊆ Q iff n ≥ q/ℓ
        for n in 0..=r + 1 {
            let contained = i.power(n + 1).is_subset_of(&qi).unwrap();
            assert_eq!(contained, i64::from(n) * p.ell >= q, "{label} n={n}");
        }
    }
}

#[test]
fn analyze_agrees_everywhere() {
    for spec in all_cases() {
        let r = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        assert!(r.agreement, "{} failed {:?}", spec.label(), r.failed_checks().collect::<Vec<_>>());
    }
}

#[test]
fn worked_examples() {
    let p = predict(&CaseSpec::regular(vec![2, 2, 2], 3).unwrap());
    assert_eq!((p.rho, p.ell, p.integral), (3, 1, false));
    let i = compute_i(&CaseSpec::regular(vec![2, 2, 2], 3).unwrap()).unwrap();
    assert_eq!(i, MonomialIdeal::maximal(3));

    let spec = CaseSpec::regular(vec![4; 5], 8).unwrap();
    let p = predict(&spec);
    assert_eq!((p.rho, p.ell, p.reduction_number), (15, 8, Some(1)));
    assert_eq!(p.rees_gorenstein, Some(false));

    let p = predict(&CaseSpec::regular(vec![3, 3], 2).unwrap());
    assert_eq!((p.rho, p.ell, p.g_gorenstein), (4, 3, Some(false)));

    let r = analyze(&CaseSpec::regular(vec![4, 3], 2).unwrap(), &AnalyzeOptions::default()).unwrap();
    assert!(r.agreement);

    // d = 1: ℓ = a - q < a
    for a in 1..6 {
        for q in 1..=a {
            assert!(!predict(&CaseSpec::regular(vec![a], q).unwrap()).integral);
        }
    }
}

#[test]
fn odd_rho_with_ell_two_is_gorenstein() {
    for a in [vec![2, 2, 2], vec![2, 2, 2, 2, 2], vec![1, 2, 2, 2]] {
        let rho: u32 = a.iter().map(|x| x - 1).sum();
        let spec = CaseSpec::regular(a, rho - 1).unwrap();
        let p = predict(&spec);
        assert_eq!(p.ell, 2);
        assert_eq!(p.g_gorenstein, Some(true));
        assert!(gorenstein_oracle(&spec, DEFAULT_BOX_CAP).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn predictor_fields_are_consistent(a in prop::collection::vec(1u32..9, 1..6), q in 1u32..30, gm in -6i64..6) {
        let spec = CaseSpec::new(a.clone(), q, gm).unwrap();
        let p = predict(&spec);
        let sum: i64 = a.iter().map(|&x| i64::from(x)).sum();
        prop_assert_eq!(p.rho, gm + sum);
        prop_assert_eq!(p.ell, p.rho + 1 - i64::from(q));
        let max_a = i64::from(*a.iter().max().unwrap());
        prop_assert_eq!(p.integral, p.ell >= max_a && p.ell >= 1);
        prop_assert_eq!(p.reduction_number.is_some(), p.integral);
        prop_assert_eq!(p.g_gorenstein.is_some(), p.integral);
        if let Some(r) = p.reduction_number {
            let r = r as i64;
            prop_assert!(r * p.ell >= i64::from(q) && (r - 1) * p.ell < i64::from(q));
            prop_assert_eq!(p.a_invariant, Some(r - a.len() as i64));
            prop_assert_eq!(p.rees_cm, Some(r < a.len() as i64));
        }
    }

    #[test]
    fn non_integral_proper_cases_leave_delta(a in prop::collection::vec(1u32..5, 2..4), q in 1u32..10) {
        let spec = CaseSpec::regular(a.clone(), q).unwrap();
        let p = predict(&spec);
        prop_assume!(!p.improper && !p.integral);
        let i = compute_i(&spec).unwrap();
        prop_assert!(i.generators().iter().any(|g| !in_delta(&a, g.coords())));
    }

    #[test]
    fn membership_in_i_is_pointwise(a in prop::collection::vec(1u32..5, 2..4), q in 1u32..8) {
        let spec = CaseSpec::regular(a.clone(), q).unwrap();
        let i = compute_i(&spec).unwrap();
        let bounds: Vec<u32> = a.iter().map(|x| x + 1).collect();
        for p in grid(&bounds) {
            prop_assert_eq!(i.contains(&ExponentVector::new(p.clone()).unwrap()).unwrap(), colon_oracle(&a, q, &p));
        }
    }
}
