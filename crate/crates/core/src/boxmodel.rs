//! The artinian quotient `Ā = A/Q` for `Q = (x_1^{a_1}, …, x_d^{a_d})`.
//!
//! The monomials surviving in `Ā` are the lattice points of the box
//! `B = ∏ [0, a_i - 1]`, and a monomial ideal of `Ā` is an upward-closed subset
//! of `B`. Subsets are dense bitsets in mixed-radix order with the last
//! coordinate varying fastest, so `α - e_i` always has a smaller index than `α`.

use std::sync::Arc;

use crate::duality::ArtinianIdeal;
use crate::error::{Error, Result};
use crate::exponent::MonomialIdeal;

/// Default limit on `∏ a_i`.
pub const DEFAULT_BOX_CAP: usize = 1_000_000;

/// Exponents `a_1, …, a_d` of the parameter ideal, with the derived box layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    a: Vec<u32>,
    strides: Vec<usize>,
    points: usize,
}

impl BoxSpec {
    pub fn new(a: Vec<u32>) -> Result<Self> {
        Self::with_cap(a, DEFAULT_BOX_CAP)
    }

    pub fn with_cap(a: Vec<u32>, cap: usize) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if a.contains(&0) {
            return Err(Error::Invalid("box exponents must be positive".into()));
        }
        let points: u128 = a.iter().map(|&x| u128::from(x)).product();
        if points > cap as u128 {
            return Err(Error::BoxCapExceeded { points, cap });
        }
        let mut strides = vec![1usize; a.len()];
        for i in (0..a.len() - 1).rev() {
            strides[i] = strides[i + 1] * a[i + 1] as usize;
        }
        Ok(Self {
            a,
            strides,
            points: points as usize,
        })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    /// Index of nilpotency of `𝔪̄`: `Σ (a_i - 1)`, the top degree of the box.
    pub fn rho(&self) -> u64 {
        self.a.iter().map(|&x| u64::from(x) - 1).sum()
    }

    pub fn contains_point(&self, alpha: &[u32]) -> bool {
        alpha.len() == self.a.len() && alpha.iter().zip(&self.a).all(|(x, a)| x < a)
    }

    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        if !self.contains_point(alpha) {
            return None;
        }
        Some(alpha.iter().zip(&self.strides).map(|(&x, s)| x as usize * s).sum())
    }

    pub fn point_at(&self, mut index: usize) -> Vec<u32> {
        self.strides
            .iter()
            .map(|s| {
                let c = index / s;
                index %= s;
                c as u32
            })
            .collect()
    }

    /// All points of the box in index order.
    pub fn points(&self) -> Points<'_> {
        Points {
            spec: self,
            next: Some(vec![0; self.a.len()]),
        }
    }
}

/// Odometer over the box in index order.
pub struct Points<'a> {
    spec: &'a BoxSpec,
    next: Option<Vec<u32>>,
}

impl Iterator for Points<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.spec.a[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// An upward-closed subset of the box: the image of a monomial ideal in `Ā`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxIdeal {
    spec: Arc<BoxSpec>,
    bits: Vec<u64>,
}

impl BoxIdeal {
    pub fn empty(spec: Arc<BoxSpec>) -> Self {
        let words = spec.points.div_ceil(64);
        Self {
            spec,
            bits: vec![0; words],
        }
    }

    pub fn full(spec: Arc<BoxSpec>) -> Self {
        let mut e = Self::empty(spec);
        for i in 0..e.spec.points {
            e.set(i);
        }
        e
    }

    /// Smallest box ideal containing the given points; points outside the box are ignored.
    pub fn generated_by<'a, I>(spec: Arc<BoxSpec>, points: I) -> Self
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut e = Self::empty(spec);
        for p in points {
            if let Some(i) = e.spec.index_of(p) {
                e.set(i);
            }
        }
        e.close_upward();
        e
    }

    pub fn spec(&self) -> &Arc<BoxSpec> {
        &self.spec
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, alpha: &[u32]) -> bool {
        self.spec.index_of(alpha).is_some_and(|i| self.get(i))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.spec.points
    }

    /// Member points in index order.
    pub fn members(&self) -> Vec<Vec<u32>> {
        (0..self.spec.points)
            .filter(|&i| self.get(i))
            .map(|i| self.spec.point_at(i))
            .collect()
    }

    fn close_upward(&mut self) {
        let spec = Arc::clone(&self.spec);
        for (idx, alpha) in spec.points().enumerate() {
            if self.get(idx) {
                continue;
            }
            let below = (0..alpha.len()).any(|i| alpha[i] > 0 && self.get(idx - spec.strides[i]));
            if below {
                self.set(idx);
            }
        }
    }

    pub fn is_upward_closed(&self) -> bool {
        self.spec.points().enumerate().all(|(idx, alpha)| {
            !self.get(idx)
                || (0..alpha.len()).all(|i| alpha[i] + 1 >= self.spec.a[i] || self.get(idx + self.spec.strides[i]))
        })
    }

    /// Minimal elements, the generators of the ideal in `Ā`.
    pub fn minimal_elements(&self) -> Vec<Vec<u32>> {
        self.spec
            .points()
            .enumerate()
            .filter(|(idx, alpha)| {
                self.get(*idx) && (0..alpha.len()).all(|i| alpha[i] == 0 || !self.get(idx - self.spec.strides[i]))
            })
            .map(|(_, alpha)| alpha)
            .collect()
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn box_product(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        let mine = self.minimal_elements();
        let theirs = other.minimal_elements();
        let mut out = Self::empty(Arc::clone(&self.spec));
        let mut sum = vec![0u32; self.spec.dim()];
        for b in &mine {
            for c in &theirs {
                for i in 0..sum.len() {
                    sum[i] = b[i] + c[i];
                }
                if let Some(idx) = self.spec.index_of(&sum) {
                    out.set(idx);
                }
            }
        }
        out.close_upward();
        Ok(out)
    }

    pub fn box_power(&self, n: u32) -> Self {
        ArtinianIdeal::power(self, n).expect("same spec")
    }

    /// `(0) : E`: points `α` with `α + β ∉ B` for every minimal `β` of `E`.
    pub fn box_annihilator(&self) -> Self {
        let mins = self.minimal_elements();
        let a = &self.spec.a;
        let mut out = Self::empty(Arc::clone(&self.spec));
        for (idx, alpha) in self.spec.points().enumerate() {
            let kills_all = mins
                .iter()
                .all(|beta| alpha.iter().zip(beta).zip(a).any(|((x, y), a)| x + y >= *a));
            if kills_all {
                out.set(idx);
            }
        }
        out
    }
}

impl ArtinianIdeal for BoxIdeal {
    fn whole(&self) -> Self {
        Self::full(Arc::clone(&self.spec))
    }

    fn is_zero(&self) -> bool {
        self.is_empty()
    }

    fn is_whole(&self) -> bool {
        self.is_full()
    }

    fn product(&self, other: &Self) -> Result<Self> {
        self.box_product(other)
    }

    fn annihilator(&self) -> Self {
        self.box_annihilator()
    }
}

/// Image of `J` in `Ā`: `{α ∈ B : x^α ∈ J}`.
pub fn project(ideal: &MonomialIdeal, spec: &Arc<BoxSpec>) -> Result<BoxIdeal> {
    if ideal.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: ideal.dim(),
        });
    }
    Ok(BoxIdeal::generated_by(
        Arc::clone(spec),
        ideal.generators().iter().map(|g| g.coords()),
    ))
}

/// `𝔪̄^n = {α ∈ B : |α| ≥ n}`.
pub fn mbar_power(spec: &Arc<BoxSpec>, n: u64) -> BoxIdeal {
    let mut e = BoxIdeal::empty(Arc::clone(spec));
    for (idx, alpha) in spec.points().enumerate() {
        if alpha.iter().map(|&x| u64::from(x)).sum::<u64>() >= n {
            e.set(idx);
        }
    }
    e
}
