//! Quasi-socle ideals `I = Q : 𝔪^q` for `Q = (x_1^{a_1}, …, x_d^{a_d})`.
//!
//! [`predict`] evaluates the closed-form verdicts from `ρ = a(G(𝔪)) + Σ a_i` and
//! `ℓ = ρ + 1 - q`. The remaining operations recompute each verdict from scratch
//! in the regular model `G(𝔪) = k[X_1, …, X_d]`, where every ideal involved is
//! monomial, and [`analyze`] compares the two.

use std::sync::Arc;

use serde::Serialize;

use crate::boxmodel::{project, BoxSpec, DEFAULT_BOX_CAP};
use crate::closure::in_closure_diagonal;
use crate::duality::{nilpotency_index, ooishi_gorenstein_check};
use crate::error::{Error, Result};
use crate::exponent::{maximal_power, MonomialIdeal};

/// Parameters of one case: `Q = (x_i^{a_i})`, the power `q`, and `a(G(𝔪))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub a: Vec<u32>,
    pub q: u32,
    pub gm_a_invariant: i64,
}

impl CaseSpec {
    pub fn new(a: Vec<u32>, q: u32, gm_a_invariant: i64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if a.contains(&0) {
            return Err(Error::Invalid("exponents a_i must be positive".into()));
        }
        if q == 0 {
            return Err(Error::Invalid("q must be positive".into()));
        }
        Ok(Self { a, q, gm_a_invariant })
    }

    /// A regular local ring: `a(G(𝔪)) = -d`.
    pub fn regular(a: Vec<u32>, q: u32) -> Result<Self> {
        let d = a.len() as i64;
        Self::new(a, q, -d)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_regular(&self) -> bool {
        self.gm_a_invariant == -(self.a.len() as i64)
    }

    pub fn label(&self) -> String {
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        if self.is_regular() {
            format!("a=({}) q={}", a.join(","), self.q)
        } else {
            format!("a=({}) q={} aG(m)={}", a.join(","), self.q, self.gm_a_invariant)
        }
    }
}

/// Closed-form values. The derived verdicts are present exactly when the case
/// is integral (`ℓ ≥ max a_i`, which forces `ℓ ≥ 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub dim: usize,
    pub rho: i64,
    pub ell: i64,
    /// `q > ρ`, so `I = A`.
    pub improper: bool,
    pub integral: bool,
    pub reduction_number: Option<u64>,
    pub a_invariant: Option<i64>,
    pub rees_cm: Option<bool>,
    pub g_gorenstein: Option<bool>,
    pub rees_gorenstein: Option<bool>,
}

impl Prediction {
    /// Shared arithmetic once `ρ`, `q` and the integrality verdict are known.
    pub(crate) fn from_parts(dim: usize, rho: i64, q: u32, integral: bool, with_rees: bool) -> Self {
        let ell = rho + 1 - i64::from(q);
        let improper = ell <= 0;
        let integral = integral && !improper;
        let mut p = Prediction {
            dim,
            rho,
            ell,
            improper,
            integral,
            reduction_number: None,
            a_invariant: None,
            rees_cm: None,
            g_gorenstein: None,
            rees_gorenstein: None,
        };
        if integral {
            let q = i64::from(q);
            let r = (q + ell - 1) / ell;
            let d = dim as i64;
            p.reduction_number = Some(r as u64);
            p.a_invariant = Some(r - d);
            p.g_gorenstein = Some(q % ell == 0);
            if with_rees {
                p.rees_cm = Some(r < d);
                p.rees_gorenstein = Some(q == (d - 2) * ell);
            }
        }
        p
    }
}

pub fn predict(spec: &CaseSpec) -> Prediction {
    let rho = spec.gm_a_invariant + spec.a.iter().map(|&x| i64::from(x)).sum::<i64>();
    let ell = rho + 1 - i64::from(spec.q);
    let max_a = spec.a.iter().copied().max().map_or(0, i64::from);
    Prediction::from_parts(spec.dim(), rho, spec.q, ell >= max_a, true)
}

fn require_regular(spec: &CaseSpec) -> Result<()> {
    if !spec.is_regular() {
        return Err(Error::Invalid(
            "oracles need the regular model, a(G(m)) = -d".into(),
        ));
    }
    Ok(())
}

fn require_integral(spec: &CaseSpec) -> Result<Prediction> {
    let p = predict(spec);
    if !p.integral {
        return Err(Error::Invalid(format!(
            "{} is not in the integral range ell >= max a_i",
            spec.label()
        )));
    }
    Ok(p)
}

/// The parameter ideal `Q`.
pub fn parameter_ideal(spec: &CaseSpec) -> MonomialIdeal {
    MonomialIdeal::diagonal(&spec.a).expect("validated exponents")
}

/// `Q + 𝔪^ℓ`, with `𝔪^ℓ = A` for `ℓ ≤ 0`.
pub fn expected_quasi_socle(spec: &CaseSpec) -> MonomialIdeal {
    let ell = predict(spec).ell;
    let d = spec.dim();
    if ell <= 0 {
        return MonomialIdeal::unit(d);
    }
    parameter_ideal(spec)
        .sum(&maximal_power(d, ell as u32))
        .expect("same dimension")
}

/// `Q : 𝔪^q` by iterated colon.
pub fn compute_i(spec: &CaseSpec) -> Result<MonomialIdeal> {
    require_regular(spec)?;
    Ok(parameter_ideal(spec).colon_by_maximal_power(spec.q))
}

/// Least `n ≤ n_max` with `I^{n+1} = Q I^n`.
pub fn reduction_number_oracle(q: &MonomialIdeal, i: &MonomialIdeal, n_max: u32) -> Result<u32> {
    if !q.is_subset_of(i)? {
        return Err(Error::Invalid("Q must be contained in I".into()));
    }
    let mut i_n = MonomialIdeal::unit(i.dim());
    for n in 0..=n_max {
        let i_next = i_n.product(i)?;
        if i_next == q.product(&i_n)? {
            return Ok(n);
        }
        i_n = i_next;
    }
    Err(Error::NoStabilization { n_max })
}

/// `𝔪^q I = 𝔪^q Q`.
pub fn mq_equality_check(spec: &CaseSpec) -> Result<bool> {
    let i = compute_i(spec)?;
    let mq = maximal_power(spec.dim(), spec.q);
    Ok(mq.product(&i)? == mq.product(&parameter_ideal(spec))?)
}

/// Powers `I^0, …, I^top`.
fn powers(i: &MonomialIdeal, top: u32) -> Vec<MonomialIdeal> {
    let mut out = vec![MonomialIdeal::unit(i.dim())];
    for k in 1..=top as usize {
        let next = out[k - 1].product(i).expect("same dimension");
        out.push(next);
    }
    out
}

/// `Q ∩ I^n = Q I^{n-1}` for every `n` in `ns` (with `n ≥ 1`).
pub fn vv_check(spec: &CaseSpec, ns: std::ops::RangeInclusive<u32>) -> Result<bool> {
    let q = parameter_ideal(spec);
    let i = compute_i(spec)?;
    let pw = powers(&i, *ns.end());
    for n in ns.filter(|&n| n >= 1) {
        let n = n as usize;
        if q.intersect(&pw[n])? != q.product(&pw[n - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q ∩ 𝔪 I^n = 𝔪 Q I^{n-1}` for every `n` in `ns` (with `n ≥ 1`).
pub fn fiber_check(spec: &CaseSpec, ns: std::ops::RangeInclusive<u32>) -> Result<bool> {
    let q = parameter_ideal(spec);
    let m = MonomialIdeal::maximal(spec.dim());
    let i = compute_i(spec)?;
    let mq = m.product(&q)?;
    let pw = powers(&i, *ns.end());
    for n in ns.filter(|&n| n >= 1) {
        let n = n as usize;
        if q.intersect(&m.product(&pw[n])?)? != mq.product(&pw[n - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q ∩ 𝔪^{nℓ+m} ⊆ 𝔪^m Q I^{n-1}` for `1 ≤ n ≤ n_max`, `0 ≤ m ≤ m_max`.
pub fn lemma22_check(spec: &CaseSpec, n_max: u32, m_max: u32) -> Result<bool> {
    let p = require_integral(spec)?;
    let ell = p.ell as u32;
    let d = spec.dim();
    let q = parameter_ideal(spec);
    let i = compute_i(spec)?;
    let pw = powers(&i, n_max.saturating_sub(1));
    for n in 1..=n_max {
        let q_i = q.product(&pw[n as usize - 1])?;
        for m in 0..=m_max {
            let lhs = q.intersect(&maximal_power(d, n * ell + m))?;
            let rhs = maximal_power(d, m).product(&q_i)?;
            if !lhs.is_subset_of(&rhs)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Duality `(0) : Ī^i = Ī^{r+1-i}` in `Ā = A/Q`.
pub fn gorenstein_oracle(spec: &CaseSpec, box_cap: usize) -> Result<bool> {
    require_integral(spec)?;
    let boxspec = Arc::new(BoxSpec::with_cap(spec.a.clone(), box_cap)?);
    let image = project(&compute_i(spec)?, &boxspec)?;
    ooishi_gorenstein_check(&image)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Regular,
    Semigroup,
    PredictorOnly,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Regular => "regular",
            Model::Semigroup => "semigroup",
            Model::PredictorOnly => "predictor-only",
        }
    }
}

/// One predictor-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub model: Model,
    pub case: String,
    pub prediction: Prediction,
    /// Minimal generators of `I` (exponent vectors, or `[s]` for `t^s`).
    pub generators: Vec<Vec<u32>>,
    pub integral_oracle: Option<bool>,
    pub reduction_number_oracle: Option<u32>,
    pub nilpotency_oracle: Option<u32>,
    pub g_gorenstein_oracle: Option<bool>,
    pub rees_cm_oracle: Option<bool>,
    pub rees_gorenstein_oracle: Option<bool>,
    pub checks: Vec<Check>,
    pub agreement: bool,
}

impl CaseReport {
    pub(crate) fn new(model: Model, case: String, prediction: Prediction) -> Self {
        Self {
            model,
            case,
            prediction,
            generators: Vec::new(),
            integral_oracle: None,
            reduction_number_oracle: None,
            nilpotency_oracle: None,
            g_gorenstein_oracle: None,
            rees_cm_oracle: None,
            rees_gorenstein_oracle: None,
            checks: Vec::new(),
            agreement: true,
        }
    }

    pub(crate) fn check(&mut self, name: &'static str, passed: bool) {
        self.checks.push(Check { name, passed });
        self.agreement &= passed;
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub box_cap: usize,
    /// Overrides the default search limit of the reduction-number oracle.
    pub n_max: Option<u32>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            box_cap: DEFAULT_BOX_CAP,
            n_max: None,
        }
    }
}

/// Predictor-only report for a non-regular tangent cone.
pub fn predict_only(spec: &CaseSpec) -> CaseReport {
    CaseReport::new(Model::PredictorOnly, spec.label(), predict(spec))
}

/// Runs every oracle that applies to the case and compares it with [`predict`].
pub fn analyze(spec: &CaseSpec, opts: &AnalyzeOptions) -> Result<CaseReport> {
    require_regular(spec)?;
    let prediction = predict(spec);
    let d = spec.dim();
    let q = parameter_ideal(spec);
    let i = compute_i(spec)?;
    let mut report = CaseReport::new(Model::Regular, spec.label(), prediction.clone());
    report.generators = i.generators().iter().map(|g| g.coords().to_vec()).collect();

    report.check("colon-equals-q-plus-m-ell", i == expected_quasi_socle(spec));

    let mut integral = true;
    for g in i.generators() {
        integral &= in_closure_diagonal(&spec.a, g.coords())?;
    }
    report.integral_oracle = Some(integral);
    report.check("integrality", integral == prediction.integral);

    let mq = maximal_power(d, spec.q);
    let mq_equal = mq.product(&i)? == mq.product(&q)?;
    report.check("mq-equality", mq_equal == prediction.integral);

    if !prediction.integral {
        return Ok(report);
    }

    let r = prediction.reduction_number.expect("integral") as u32;
    let n_max = opts.n_max.unwrap_or(r + 3);
    let r_oracle = reduction_number_oracle(&q, &i, n_max)?;
    report.reduction_number_oracle = Some(r_oracle);
    report.check("reduction-number", r_oracle == r);

    report.check("valabrega-valla", vv_check(spec, 1..=r + 2)?);
    report.check("fiber-cone", fiber_check(spec, 1..=r + 2)?);
    report.check("power-containment", lemma22_check(spec, r + 1, 2)?);

    let boxspec = Arc::new(BoxSpec::with_cap(spec.a.clone(), opts.box_cap)?);
    let image = project(&i, &boxspec)?;
    let nilpotency = nilpotency_index(&image)?;
    report.nilpotency_oracle = Some(nilpotency);
    report.check("nilpotency-index", nilpotency == r);

    let duality = ooishi_gorenstein_check(&image)?;
    report.g_gorenstein_oracle = Some(duality);
    report.check("gorenstein-duality", Some(duality) == prediction.g_gorenstein);

    let a_g = i64::from(r_oracle) - d as i64;
    let rees_cm = a_g < 0;
    let rees_gor = duality && a_g == -2;
    report.rees_cm_oracle = Some(rees_cm);
    report.rees_gorenstein_oracle = Some(rees_gor);
    report.check("rees-cohen-macaulay", Some(rees_cm) == prediction.rees_cm);
    report.check("rees-gorenstein", Some(rees_gor) == prediction.rees_gorenstein);

    Ok(report)
}
