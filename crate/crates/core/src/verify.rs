//! Built-in verification suites: worked examples, exhaustive sweeps, and the
//! duality invariants of the box model. Each suite has a fixed time limit.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boxmodel::{mbar_power, BoxIdeal, BoxSpec};
use crate::closure::{closure_diagonal, corollary41_check, prop42_classify};
use crate::error::Result;
use crate::harness::{run_sweep, Caps, RunOptions, SweepRanges, SweepSpec};
use crate::quasisocle::{analyze, compute_i, predict, predict_only, AnalyzeOptions, CaseSpec};

/// Checks every integral regular case must carry.
pub const REGULAR_INTEGRAL_CHECKS: [&str; 9] = [
    "integrality",
    "mq-equality",
    "reduction-number",
    "valabrega-valla",
    "fiber-cone",
    "power-containment",
    "gorenstein-duality",
    "nilpotency-index",
    "colon-equals-q-plus-m-ell",
];

/// Checks every integral semigroup case must carry.
pub const SEMIGROUP_INTEGRAL_CHECKS: [&str; 4] = [
    "integrality",
    "reduction-number",
    "gorenstein-duality",
    "colon-equals-q-plus-order-ell",
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {}: {} ({:.2?} / limit {:?}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.limit,
            self.detail
        )
    }
}

fn timed(
    id: u8,
    title: &'static str,
    limit_secs: u64,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let (ok, detail) = match body() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let within = elapsed < limit;
    let detail = if within {
        detail
    } else {
        format!("{detail}; exceeded time limit")
    };
    CriterionOutcome {
        id,
        title,
        passed: ok && within,
        detail,
        elapsed,
        limit,
    }
}

/// `a = (2,2,2)`, `q = 3`: `I = 𝔪`, not integral.
pub fn criterion_1() -> CriterionOutcome {
    timed(1, "I = m for a=(2,2,2), q=3, non-integral", 1, || {
        let r = analyze(&CaseSpec::regular(vec![2, 2, 2], 3)?, &AnalyzeOptions::default())?;
        let units = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]];
        let ok = r.generators == units
            && !r.prediction.integral
            && r.integral_oracle == Some(false)
            && r.agreement;
        Ok((ok, format!("generators={:?} integral_oracle={:?}", r.generators, r.integral_oracle)))
    })
}

/// `a = (4,4,4,4,4)`, `q = 8`.
pub fn criterion_2() -> CriterionOutcome {
    timed(2, "a=(4,4,4,4,4), q=8: G(I) Gorenstein, R(I) not", 30, || {
        let r = analyze(&CaseSpec::regular(vec![4; 5], 8)?, &AnalyzeOptions::default())?;
        let p = &r.prediction;
        let ok = p.rho == 15
            && p.ell == 8
            && p.reduction_number == Some(1)
            && r.reduction_number_oracle == Some(1)
            && r.g_gorenstein_oracle == Some(true)
            && p.rees_gorenstein == Some(false)
            && p.rees_cm == Some(true)
            && r.agreement;
        Ok((
            ok,
            format!(
                "rho={} ell={} r={:?}/{:?} duality={:?} rees_gor={:?} rees_cm={:?}",
                p.rho,
                p.ell,
                p.reduction_number,
                r.reduction_number_oracle,
                r.g_gorenstein_oracle,
                p.rees_gorenstein,
                p.rees_cm
            ),
        ))
    })
}

/// `a = (2,2,2)`, `q = 2`: `q = (d-2)ℓ`.
pub fn criterion_3() -> CriterionOutcome {
    timed(3, "a=(2,2,2), q=2: R(I) Gorenstein", 1, || {
        let r = analyze(&CaseSpec::regular(vec![2, 2, 2], 2)?, &AnalyzeOptions::default())?;
        let p = &r.prediction;
        let d = 3;
        let ok = 2 == (d - 2) * p.ell
            && p.rees_gorenstein == Some(true)
            && r.rees_gorenstein_oracle == Some(true)
            && r.reduction_number_oracle == Some(1)
            && r.g_gorenstein_oracle == Some(true)
            && r.agreement;
        Ok((
            ok,
            format!(
                "ell={} rees_gor={:?} r_oracle={:?} duality={:?}",
                p.ell, p.rees_gorenstein, r.reduction_number_oracle, r.g_gorenstein_oracle
            ),
        ))
    })
}

pub fn regular_sweep_spec() -> SweepSpec {
    SweepSpec {
        ranges: SweepRanges::Regular {
            dims: vec![2, 3],
            a: vec![1, 2, 3, 4],
            q: None,
        },
        caps: Caps::default(),
    }
}

/// All regular cases with `d ∈ {2,3}`, `1 ≤ a_i ≤ 4`, `1 ≤ q ≤ ρ`.
pub fn criterion_4() -> CriterionOutcome {
    timed(4, "regular sweep d in {2,3}, a_i <= 4, q <= rho", 300, || {
        let report = run_sweep(&regular_sweep_spec(), &RunOptions::default())?;
        let mut missing = 0;
        let mut integral = 0;
        for c in &report.cases {
            if let Some(r) = c.report() {
                if r.prediction.integral {
                    integral += 1;
                    let names: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
                    missing += REGULAR_INTEGRAL_CHECKS.iter().filter(|n| !names.contains(n)).count();
                }
            }
        }
        let s = report.summary;
        let ok = report.passed() && s.skipped_by_cap == 0 && missing == 0 && s.total > 0;
        Ok((
            ok,
            format!(
                "{} cases ({} integral), {} disagree, {} errors, {} missing checks",
                s.total, integral, s.disagree, s.errors, missing
            ),
        ))
    })
}

/// Exponent vectors and `q` for the classifier sweep: `2 ≤ a_i ≤ 5`, `ℓ ≥ max a_i`.
fn classifier_cases() -> Vec<(Vec<u32>, u32)> {
    let mut out = Vec::new();
    for d in [2usize, 3] {
        let mut tuples = vec![Vec::new()];
        for _ in 0..d {
            tuples = tuples
                .into_iter()
                .flat_map(|t: Vec<u32>| {
                    (2..=5).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        for a in tuples {
            let rho: u32 = a.iter().map(|x| x - 1).sum();
            let max_a = *a.iter().max().expect("d >= 2");
            for q in 1..=rho {
                if rho + 1 - q >= max_a {
                    out.push((a.clone(), q));
                }
            }
        }
    }
    out
}

/// The exponent-pattern classifier against `Q : 𝔪^q == closure(Q)`.
pub fn criterion_5() -> CriterionOutcome {
    timed(5, "classifier for I = closure(Q) over 2 <= a_i <= 5", 120, || {
        let cases = classifier_cases();
        let mut mismatches = Vec::new();
        let mut positives = 0;
        for (a, q) in &cases {
            let spec = CaseSpec::regular(a.clone(), *q)?;
            let oracle = compute_i(&spec)? == closure_diagonal(a)?;
            let classified = prop42_classify(a, *q)?;
            positives += usize::from(oracle);
            if oracle != classified {
                mismatches.push(spec.label());
            }
        }
        Ok((
            mismatches.is_empty() && !cases.is_empty(),
            format!(
                "{} cases, {} with I = closure(Q), mismatches: {:?}",
                cases.len(),
                positives,
                mismatches
            ),
        ))
    })
}

/// Powers of `(x_1^{n-1}) + 𝔪^n` are integrally closed.
pub fn criterion_6() -> CriterionOutcome {
    timed(6, "powers of (x1^(n-1)) + m^n integrally closed", 120, || {
        let mut failures = Vec::new();
        let mut count = 0;
        for d in [2usize, 3] {
            for n in 2..=4 {
                for m in 1..=3 {
                    count += 1;
                    if !corollary41_check(d, n, m)? {
                        failures.push((d, n, m));
                    }
                }
            }
        }
        Ok((failures.is_empty(), format!("{count} triples, failures: {failures:?}")))
    })
}

pub fn semigroup_sweep_spec() -> SweepSpec {
    SweepSpec {
        ranges: SweepRanges::Semigroup {
            a: (2..=12).collect(),
            b: (3..=13).collect(),
            n: (1..=4).collect(),
            q: None,
        },
        caps: Caps::default(),
    }
}

/// All coprime `1 < a < b ≤ 13`, `n ≤ 4`, `1 ≤ q ≤ a+n-2`.
pub fn criterion_7() -> CriterionOutcome {
    timed(7, "semigroup sweep b <= 13, n <= 4", 120, || {
        let report = run_sweep(&semigroup_sweep_spec(), &RunOptions::default())?;
        let mut missing = 0;
        let mut integral = 0;
        for c in &report.cases {
            let Some(r) = c.report() else { continue };
            let names: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
            if !names.contains(&"colon-equals-q-plus-order-ell") || !names.contains(&"integrality") {
                missing += 1;
            }
            if r.prediction.integral {
                integral += 1;
                missing += SEMIGROUP_INTEGRAL_CHECKS.iter().filter(|n| !names.contains(n)).count();
            }
        }
        let s = report.summary;
        Ok((
            report.passed() && s.skipped_by_cap == 0 && missing == 0 && s.total > 0,
            format!(
                "{} cases ({} integral), {} disagree, {} errors, {} missing checks",
                s.total, integral, s.disagree, s.errors, missing
            ),
        ))
    })
}

/// Seed for the random box ideals of criterion 8.
pub const DUALITY_SEED: u64 = 0x5eed_d0a1;

/// Random box ideals generated by up to four random points.
pub fn random_box_ideals(count: usize, seed: u64) -> Vec<BoxIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.random_range(2..=3);
            let a: Vec<u32> = (0..d).map(|_| rng.random_range(1..=5)).collect();
            let spec = Arc::new(BoxSpec::new(a.clone()).expect("small box"));
            let k = rng.random_range(0..=4);
            let points: Vec<Vec<u32>> = (0..k)
                .map(|_| a.iter().map(|&ai| rng.random_range(0..ai)).collect())
                .collect();
            BoxIdeal::generated_by(spec, points.iter().map(Vec::as_slice))
        })
        .collect()
}

/// `(0) : 𝔪̄^i = 𝔪̄^{ρ+1-i}` on every box of the regular sweep, and double
/// annihilators on random ideals.
pub fn criterion_8() -> CriterionOutcome {
    timed(8, "box duality and double annihilator", 60, || {
        let mut specs = 0;
        let mut bad_specs = Vec::new();
        for d in [2usize, 3] {
            let mut tuples = vec![Vec::new()];
            for _ in 0..d {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t: Vec<u32>| {
                        (1..=4).map(move |x| {
                            let mut t = t.clone();
                            t.push(x);
                            t
                        })
                    })
                    .collect();
            }
            for a in tuples {
                specs += 1;
                let spec = Arc::new(BoxSpec::new(a.clone())?);
                let rho = spec.rho();
                let ok = (0..=rho + 1).all(|i| mbar_power(&spec, i).box_annihilator() == mbar_power(&spec, rho + 1 - i));
                if !ok {
                    bad_specs.push(a);
                }
            }
        }
        let ideals = random_box_ideals(100, DUALITY_SEED);
        let bad_random = ideals
            .iter()
            .filter(|e| e.box_annihilator().box_annihilator() != **e)
            .count();
        Ok((
            bad_specs.is_empty() && bad_random == 0,
            format!(
                "{specs} box specs (failures {bad_specs:?}), {} random ideals ({bad_random} failures)",
                ideals.len()
            ),
        ))
    })
}

/// Predictor for `d = 2`, `a = (2,n)`, `q = n`, `a(G(𝔪)) = n - 3`.
pub fn criterion_9() -> CriterionOutcome {
    timed(9, "hypersurface tangent cone predictor, n = 2..6", 1, || {
        let mut bad = Vec::new();
        for n in 2..=6u32 {
            let spec = CaseSpec::new(vec![2, n], n, i64::from(n) - 3)?;
            let report = predict_only(&spec);
            let p = &report.prediction;
            let n64 = i64::from(n);
            let ok = *p == predict(&spec)
                && p.rho == 2 * n64 - 1
                && p.ell == n64
                && p.integral
                && p.reduction_number == Some(1)
                && p.g_gorenstein == Some(true);
            if !ok {
                bad.push(n);
            }
        }
        Ok((bad.is_empty(), format!("failures for n in {bad:?}")))
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
