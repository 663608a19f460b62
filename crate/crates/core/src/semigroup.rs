//! The one-dimensional model `A = k[[t^a, t^b]]` with `Q = (x^n) = (t^{an})`.
//!
//! Monomial ideals of `A` are ideals `E` of the numerical semigroup
//! `S = ⟨a, b⟩` (`E + S ⊆ E`). Every such `E ≠ ∅` contains all integers from
//! `min E + c` on, where `c = (a-1)(b-1)` is the conductor, so its minimal
//! generators lie below `min E + c + a`. Operations that cannot be expressed
//! through generators (intersection, colon) enumerate exactly that window,
//! which makes the truncation exact rather than heuristic.

use serde::Serialize;

use crate::duality::{nilpotency_index, ooishi_gorenstein_check, ArtinianIdeal};
use crate::error::{Error, Result};
use crate::quasisocle::{CaseReport, Model, Prediction};

/// `S = ⟨a, b⟩` with `1 < a < b` coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NumericalSemigroup {
    a: u32,
    b: u32,
    /// `b^{-1} mod a`, used to read off the normal form of an element.
    b_inv: u32,
}

impl NumericalSemigroup {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if !(1 < a && a < b) {
            return Err(Error::Invalid(format!("need 1 < a < b, got a={a}, b={b}")));
        }
        if num_integer::gcd(a, b) != 1 {
            return Err(Error::Invalid(format!("gcd({a}, {b}) != 1")));
        }
        let b_inv = (1..a).find(|&j| (u64::from(j) * u64::from(b)) % u64::from(a) == 1).unwrap_or(0);
        Ok(Self { a, b, b_inv })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `(a-1)(b-1)`: every integer from here on lies in `S`.
    pub fn conductor(&self) -> u32 {
        (self.a - 1) * (self.b - 1)
    }

    pub fn frobenius(&self) -> i64 {
        i64::from(self.a) * i64::from(self.b) - i64::from(self.a) - i64::from(self.b)
    }

    /// The unique `(i, j)` with `s = ia + jb` and `0 ≤ j < a`, if `s ∈ S`.
    pub fn normal_form(&self, s: u32) -> Option<(u32, u32)> {
        let (a, b) = (u64::from(self.a), u64::from(self.b));
        let j = (u64::from(s) % a) * u64::from(self.b_inv) % a;
        let jb = j * b;
        let s = u64::from(s);
        (s >= jb).then(|| (((s - jb) / a) as u32, j as u32))
    }

    pub fn contains(&self, s: u32) -> bool {
        self.normal_form(s).is_some()
    }

    /// `𝔪`-order of `t^s`: the largest `k` with `s` a sum of `k` nonzero
    /// elements of `S`. Among the representations `s = ia + jb` the one with
    /// `j < a` has the most summands, since trading `a` copies of `b` for `b`
    /// copies of `a` adds `b - a` summands.
    pub fn order(&self, s: u32) -> Option<u32> {
        self.normal_form(s).map(|(i, j)| i + j)
    }

    /// Orders of `0, …, bound` by dynamic programming over the last summand.
    pub fn order_table(&self, bound: u32) -> Vec<Option<u32>> {
        let mut table: Vec<Option<u32>> = vec![None; bound as usize + 1];
        table[0] = Some(0);
        for s in 1..=bound as usize {
            let via = |step: u32| s.checked_sub(step as usize).and_then(|t| table[t]).map(|k| k + 1);
            table[s] = via(self.a).max(via(self.b));
        }
        table
    }
}

/// Elements of `⟨a, b⟩` up to `bound`, by sieving `s - a` and `s - b`.
pub fn semigroup_members(a: u32, b: u32, bound: u32) -> Result<Vec<u32>> {
    NumericalSemigroup::new(a, b)?;
    let mut member = vec![false; bound as usize + 1];
    member[0] = true;
    for s in 1..=bound as usize {
        member[s] = (s >= a as usize && member[s - a as usize]) || (s >= b as usize && member[s - b as usize]);
    }
    Ok((0..=bound).filter(|&s| member[s as usize]).collect())
}

/// An ideal of `S`, stored as its minimal generators in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupIdeal {
    sg: NumericalSemigroup,
    gens: Vec<u32>,
}

impl SemigroupIdeal {
    pub fn zero(sg: NumericalSemigroup) -> Self {
        Self { sg, gens: Vec::new() }
    }

    pub fn unit(sg: NumericalSemigroup) -> Self {
        Self { sg, gens: vec![0] }
    }

    /// Ideal generated by the given elements; all must lie in `S`.
    pub fn generated_by<I: IntoIterator<Item = u32>>(sg: NumericalSemigroup, elems: I) -> Result<Self> {
        let mut gens: Vec<u32> = elems.into_iter().collect();
        if let Some(&bad) = gens.iter().find(|&&s| !sg.contains(s)) {
            return Err(Error::Invalid(format!("{bad} is not in <{}, {}>", sg.a, sg.b)));
        }
        gens.sort_unstable();
        gens.dedup();
        let mut kept: Vec<u32> = Vec::new();
        for g in gens {
            if !kept.iter().any(|&k| sg.contains(g - k)) {
                kept.push(g);
            }
        }
        Ok(Self { sg, gens: kept })
    }

    /// `𝔪^k`, generated by `ia + jb` with `i + j = k`.
    pub fn maximal_power(sg: NumericalSemigroup, k: u32) -> Self {
        let elems = (0..=k).map(|j| (k - j) * sg.a + j * sg.b);
        Self::generated_by(sg, elems).expect("sums of generators lie in S")
    }

    pub fn maximal(sg: NumericalSemigroup) -> Self {
        Self::maximal_power(sg, 1)
    }

    /// The principal ideal `(t^s)`.
    pub fn principal(sg: NumericalSemigroup, s: u32) -> Result<Self> {
        Self::generated_by(sg, [s])
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        self.sg
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&0)
    }

    pub fn min(&self) -> Option<u32> {
        self.gens.first().copied()
    }

    pub fn contains(&self, s: u32) -> bool {
        self.gens.iter().take_while(|&&g| g <= s).any(|&g| self.sg.contains(s - g))
    }

    /// Members up to and including `bound`.
    pub fn members_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&s| self.contains(s)).collect()
    }

    /// Exclusive upper limit below which every generator of an ideal whose
    /// minimum is at most `min` must lie.
    fn window(&self, min: u32) -> u32 {
        min + self.sg.conductor() + self.sg.a
    }

    fn from_predicate(sg: NumericalSemigroup, window: u32, pred: impl Fn(u32) -> bool) -> Self {
        let members = (0..window).filter(|&s| sg.contains(s) && pred(s));
        Self::generated_by(sg, members).expect("members lie in S")
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.sg != other.sg {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.gens.iter().all(|&g| other.contains(g)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Self::generated_by(self.sg, self.gens.iter().chain(&other.gens).copied())
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let sums = self.gens.iter().flat_map(|&g| other.gens.iter().map(move |&h| g + h));
        Self::generated_by(self.sg, sums)
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.sg);
        for _ in 0..n {
            acc = acc.product(self).expect("same semigroup");
        }
        acc
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (Some(x), Some(y)) = (self.min(), other.min()) else {
            return Ok(Self::zero(self.sg));
        };
        let window = self.window(x.max(y));
        Ok(Self::from_predicate(self.sg, window, |s| self.contains(s) && other.contains(s)))
    }

    /// `self : other = {s ∈ S : s + f ∈ self for every generator f of other}`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Err(Error::ColonByZero);
        }
        let Some(x) = self.min() else {
            return Ok(Self::zero(self.sg));
        };
        // self : other ⊇ self, so its minimum is at most min(self).
        let window = self.window(x);
        Ok(Self::from_predicate(self.sg, window, |s| {
            other.gens.iter().all(|&f| self.contains(s + f))
        }))
    }

    /// `self : 𝔪^q` by `q` successive colons by `𝔪`.
    pub fn colon_by_maximal_power(&self, q: u32) -> Self {
        let m = Self::maximal(self.sg);
        let mut acc = self.clone();
        for _ in 0..q {
            if acc.is_unit() {
                break;
            }
            acc = acc.colon(&m).expect("𝔪 is nonzero");
        }
        acc
    }
}

/// One case: `S = ⟨a, b⟩`, `Q = (t^{an})`, `I = Q : 𝔪^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemigroupSpec {
    pub a: u32,
    pub b: u32,
    pub n: u32,
    pub q: u32,
}

impl SemigroupSpec {
    pub fn new(a: u32, b: u32, n: u32, q: u32) -> Result<Self> {
        NumericalSemigroup::new(a, b)?;
        if n == 0 || q == 0 {
            return Err(Error::Invalid("n and q must be positive".into()));
        }
        Ok(Self { a, b, n, q })
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        NumericalSemigroup::new(self.a, self.b).expect("validated")
    }

    pub fn parameter_ideal(&self) -> SemigroupIdeal {
        SemigroupIdeal::principal(self.semigroup(), self.a * self.n).expect("an lies in S")
    }

    pub fn label(&self) -> String {
        format!("S=<{},{}> n={} q={}", self.a, self.b, self.n, self.q)
    }
}

/// `ρ = a + n - 2`, `ℓ = a + n - 1 - q`, integral iff `q < a`.
pub fn sg_predict(spec: &SemigroupSpec) -> Prediction {
    let rho = i64::from(spec.a) + i64::from(spec.n) - 2;
    Prediction::from_parts(1, rho, spec.q, spec.q < spec.a, false)
}

/// `closure(Q) = {s ∈ S : s ≥ an}`.
pub fn sg_closure(spec: &SemigroupSpec) -> SemigroupIdeal {
    let sg = spec.semigroup();
    let an = spec.a * spec.n;
    SemigroupIdeal::from_predicate(sg, an + sg.conductor() + sg.a, |s| s >= an)
}

/// `Q : 𝔪^q`.
pub fn sg_compute_i(spec: &SemigroupSpec) -> SemigroupIdeal {
    spec.parameter_ideal().colon_by_maximal_power(spec.q)
}

/// `Q + {s ∈ S : ord(s) ≥ ℓ}`, with the order taken from the dynamic-programming table.
pub fn sg_expected_quasi_socle(spec: &SemigroupSpec) -> SemigroupIdeal {
    let sg = spec.semigroup();
    let ell = sg_predict(spec).ell;
    if ell <= 0 {
        return SemigroupIdeal::unit(sg);
    }
    let q = spec.parameter_ideal();
    let window = spec.a * spec.n + sg.conductor() + sg.a;
    let orders = sg.order_table(window);
    SemigroupIdeal::from_predicate(sg, window, |s| {
        q.contains(s) || orders[s as usize].is_some_and(|k| i64::from(k) >= ell)
    })
}

/// Least `n ≤ n_max` with `I^{n+1} = Q I^n`.
pub fn sg_reduction_number_oracle(q: &SemigroupIdeal, i: &SemigroupIdeal, n_max: u32) -> Result<u32> {
    if !q.is_subset_of(i)? {
        return Err(Error::Invalid("Q must be contained in I".into()));
    }
    let mut i_n = SemigroupIdeal::unit(i.semigroup());
    for n in 0..=n_max {
        let i_next = i_n.product(i)?;
        if i_next == q.product(&i_n)? {
            return Ok(n);
        }
        i_n = i_next;
    }
    Err(Error::NoStabilization { n_max })
}

/// The finite quotient `Ā = A/(t^{an})`: the elements of `S` outside `an + S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinianQuotient {
    sg: NumericalSemigroup,
    an: u32,
    elements: Vec<u32>,
    /// `index[s]` is the position of `s` in `elements`.
    index: Vec<Option<usize>>,
}

impl ArtinianQuotient {
    pub fn new(spec: &SemigroupSpec) -> Self {
        let sg = spec.semigroup();
        let an = spec.a * spec.n;
        let limit = an + sg.conductor() + sg.a;
        let elements: Vec<u32> = (0..limit)
            .filter(|&s| sg.contains(s) && !(s >= an && sg.contains(s - an)))
            .collect();
        let mut index = vec![None; limit as usize];
        for (k, &s) in elements.iter().enumerate() {
            index[s as usize] = Some(k);
        }
        Self { sg, an, elements, index }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    fn position(&self, s: u32) -> Option<usize> {
        self.index.get(s as usize).copied().flatten()
    }

    /// Image of an ideal of `A`.
    pub fn image(&self, ideal: &SemigroupIdeal) -> QuotientIdeal<'_> {
        QuotientIdeal {
            quotient: self,
            members: self.elements.iter().map(|&s| ideal.contains(s)).collect(),
        }
    }
}

/// An ideal of [`ArtinianQuotient`] as a membership mask over its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientIdeal<'q> {
    quotient: &'q ArtinianQuotient,
    members: Vec<bool>,
}

impl QuotientIdeal<'_> {
    pub fn members(&self) -> Vec<u32> {
        self.quotient
            .elements
            .iter()
            .zip(&self.members)
            .filter(|(_, &m)| m)
            .map(|(&s, _)| s)
            .collect()
    }

    /// Adds `s + a` and `s + b` for every member `s` until stable, in one
    /// ascending pass. A member that lands in `Q` stays zero in `Ā`.
    fn close(&mut self) {
        let q = self.quotient;
        for k in 0..q.elements.len() {
            if self.members[k] {
                continue;
            }
            let s = q.elements[k];
            let from = |step: u32| {
                s.checked_sub(step)
                    .and_then(|t| q.position(t))
                    .is_some_and(|p| self.members[p])
            };
            if from(q.sg.a) || from(q.sg.b) {
                self.members[k] = true;
            }
        }
    }
}

impl ArtinianIdeal for QuotientIdeal<'_> {
    fn whole(&self) -> Self {
        Self {
            quotient: self.quotient,
            members: vec![true; self.members.len()],
        }
    }

    fn is_zero(&self) -> bool {
        !self.members.contains(&true)
    }

    fn is_whole(&self) -> bool {
        self.members.iter().all(|&m| m)
    }

    fn product(&self, other: &Self) -> Result<Self> {
        if self.quotient != other.quotient {
            return Err(Error::SpecMismatch);
        }
        let q = self.quotient;
        let mut members = vec![false; self.members.len()];
        for x in self.members() {
            for y in other.members() {
                if let Some(p) = q.position(x + y) {
                    members[p] = true;
                }
            }
        }
        let mut out = Self { quotient: q, members };
        out.close();
        Ok(out)
    }

    fn annihilator(&self) -> Self {
        let q = self.quotient;
        let mine = self.members();
        let members = q
            .elements
            .iter()
            .map(|&x| mine.iter().all(|&y| q.position(x + y).is_none()))
            .collect();
        Self { quotient: q, members }
    }
}

/// Every predictor-versus-oracle comparison for one semigroup case.
pub fn sg_analyze(spec: &SemigroupSpec) -> Result<CaseReport> {
    let prediction = sg_predict(spec);
    let q = spec.parameter_ideal();
    let i = sg_compute_i(spec);
    let mut report = CaseReport::new(Model::Semigroup, spec.label(), prediction.clone());
    report.generators = i.generators().iter().map(|&s| vec![s]).collect();

    report.check("colon-equals-q-plus-order-ell", i == sg_expected_quasi_socle(spec));

    let closure = sg_closure(spec);
    let integral = i.is_subset_of(&closure)?;
    report.integral_oracle = Some(integral);
    report.check("integrality", integral == prediction.integral);

    let mq = SemigroupIdeal::maximal_power(spec.semigroup(), spec.q);
    let mq_equal = mq.product(&i)? == mq.product(&q)?;
    report.check("mq-equality", mq_equal == prediction.integral);

    if !prediction.integral {
        return Ok(report);
    }

    let r = prediction.reduction_number.expect("integral") as u32;
    let r_oracle = sg_reduction_number_oracle(&q, &i, r + 3)?;
    report.reduction_number_oracle = Some(r_oracle);
    report.check("reduction-number", r_oracle == r);

    let m = SemigroupIdeal::maximal(spec.semigroup());
    let mut i_prev = SemigroupIdeal::unit(spec.semigroup());
    let (mut vv, mut fiber) = (true, true);
    for _ in 1..=r + 2 {
        let i_n = i_prev.product(&i)?;
        vv &= q.intersect(&i_n)? == q.product(&i_prev)?;
        fiber &= q.intersect(&m.product(&i_n)?)? == m.product(&q)?.product(&i_prev)?;
        i_prev = i_n;
    }
    report.check("valabrega-valla", vv);
    report.check("fiber-cone", fiber);

    let quotient = ArtinianQuotient::new(spec);
    let image = quotient.image(&i);
    let nilpotency = nilpotency_index(&image)?;
    report.nilpotency_oracle = Some(nilpotency);
    report.check("nilpotency-index", nilpotency == r);

    let duality = ooishi_gorenstein_check(&image)?;
    report.g_gorenstein_oracle = Some(duality);
    report.check("gorenstein-duality", Some(duality) == prediction.g_gorenstein);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(a: u32, b: u32) -> NumericalSemigroup {
        NumericalSemigroup::new(a, b).unwrap()
    }

    #[test]
    fn semigroup_validation() {
        assert!(NumericalSemigroup::new(1, 3).is_err());
        assert!(NumericalSemigroup::new(4, 6).is_err());
        assert!(NumericalSemigroup::new(5, 3).is_err());
        assert!(SemigroupSpec::new(3, 5, 0, 1).is_err());
    }

    #[test]
    fn members_examples() {
        assert_eq!(semigroup_members(2, 3, 6).unwrap(), vec![0, 2, 3, 4, 5, 6]);
        let s = semigroup_members(3, 5, 20).unwrap();
        let gaps: Vec<u32> = (0..=20).filter(|x| !s.contains(x)).collect();
        assert_eq!(gaps, vec![1, 2, 4, 7]);
        assert_eq!(sg(3, 5).frobenius(), 7);
        let s = semigroup_members(3, 4, 10).unwrap();
        assert!(!s.contains(&5) && s.contains(&6));
    }

    #[test]
    fn normal_form_agrees_with_sieve() {
        for (a, b) in [(2, 3), (3, 5), (4, 7), (5, 13), (12, 13)] {
            let g = sg(a, b);
            let sieve = semigroup_members(a, b, 400).unwrap();
            for s in 0..=400 {
                assert_eq!(g.contains(s), sieve.binary_search(&s).is_ok(), "{a},{b},{s}");
            }
        }
    }

    #[test]
    fn order_closed_form_matches_table() {
        for (a, b) in [(2, 3), (3, 5), (4, 9), (7, 11)] {
            let g = sg(a, b);
            let table = g.order_table(300);
            for s in 0..=300 {
                assert_eq!(g.order(s), table[s as usize], "{a},{b},{s}");
            }
        }
    }

    #[test]
    fn ideal_ops() {
        let g = sg(3, 5);
        let unit = SemigroupIdeal::unit(g);
        let e = SemigroupIdeal::generated_by(g, [5, 6]).unwrap();
        assert_eq!(e.colon(&unit).unwrap(), e);
        assert_eq!(e.colon(&SemigroupIdeal::zero(g)).unwrap_err(), Error::ColonByZero);
        assert!(SemigroupIdeal::generated_by(g, [7]).is_err());
        assert_eq!(SemigroupIdeal::generated_by(g, [6, 10, 11]).unwrap().generators(), &[6, 10]);
        let m = SemigroupIdeal::maximal(g);
        assert_eq!(m.generators(), &[3, 5]);
        assert_eq!(m.power(2), SemigroupIdeal::maximal_power(g, 2));
        let x = SemigroupIdeal::principal(g, 3).unwrap();
        let y = SemigroupIdeal::principal(g, 5).unwrap();
        let xy = x.intersect(&y).unwrap();
        for s in 0..40 {
            assert_eq!(xy.contains(s), x.contains(s) && y.contains(s));
        }
    }

    #[test]
    fn predict_examples() {
        let p = sg_predict(&SemigroupSpec::new(3, 5, 2, 2).unwrap());
        assert_eq!((p.rho, p.ell), (3, 2));
        assert!(p.integral);
        assert_eq!(p.reduction_number, Some(1));
        assert_eq!(p.g_gorenstein, Some(true));
        assert_eq!(p.rees_cm, None);

        let p = sg_predict(&SemigroupSpec::new(3, 5, 2, 3).unwrap());
        assert!(!p.integral);

        // q = a - 1 and n | q
        for (a, b, n) in [(5, 7, 2), (5, 7, 4), (7, 9, 3), (7, 10, 6)] {
            let p = sg_predict(&SemigroupSpec::new(a, b, n, a - 1).unwrap());
            assert_eq!(p.g_gorenstein, Some(true), "{a},{b},{n}");
        }
    }

    #[test]
    fn quasi_socle_and_closure() {
        let spec = SemigroupSpec::new(3, 5, 2, 2).unwrap();
        let i = sg_compute_i(&spec);
        assert_eq!(i, sg_expected_quasi_socle(&spec));
        let closure = sg_closure(&spec);
        assert_eq!(closure.members_up_to(12), vec![6, 8, 9, 10, 11, 12]);
        assert!(closure.contains(6));
        assert!(i.is_subset_of(&closure).unwrap());

        let g = spec.semigroup();
        let rho = 3 + 2 - 2;
        assert!(SemigroupIdeal::maximal_power(g, rho + 1).is_subset_of(&spec.parameter_ideal()).unwrap());
    }

    #[test]
    fn quotient_model() {
        let spec = SemigroupSpec::new(3, 5, 2, 2).unwrap();
        let quotient = ArtinianQuotient::new(&spec);
        assert_eq!(quotient.elements().len(), 6);
        let m = quotient.image(&SemigroupIdeal::maximal(spec.semigroup()));
        assert_eq!(nilpotency_index(&m).unwrap(), 3);
        assert!(ooishi_gorenstein_check(&m).unwrap());
    }

    #[test]
    fn analyze_examples() {
        let r = sg_analyze(&SemigroupSpec::new(3, 5, 2, 2).unwrap()).unwrap();
        assert!(r.agreement, "{:?}", r.checks);
        let r = sg_analyze(&SemigroupSpec::new(2, 3, 1, 1).unwrap()).unwrap();
        assert!(r.agreement, "{:?}", r.checks);
        assert_eq!((r.prediction.rho, r.prediction.ell), (1, 1));
        assert_eq!(r.reduction_number_oracle, Some(1));
        assert_eq!(r.g_gorenstein_oracle, Some(true));
        let r = sg_analyze(&SemigroupSpec::new(3, 5, 2, 3).unwrap()).unwrap();
        assert!(r.agreement);
        assert_eq!(r.integral_oracle, Some(false));
        assert!(!r.prediction.integral);
    }
}
