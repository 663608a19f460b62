//! Monomial ideal calculus over exponent vectors.
//!
//! A monomial `x^α` in `d` variables is identified with its exponent vector
//! `α ∈ ℤ^d_{≥0}`, and a monomial ideal with the antichain of its minimal
//! generators. Every constructor and operation returns a normalized value:
//! generators are pairwise non-divisible and sorted lexicographically, so two
//! ideals are equal exactly when their generator lists are.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A lattice point of `ℤ^d_{≥0}`, read as the monomial `x^α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(coords))
    }

    /// The constant monomial `1`.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        Self(vec![0; dim])
    }

    /// The standard basis vector `e_i`, i.e. the variable `x_{i+1}`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Monomial product.
    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Least common multiple (componentwise max).
    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `max(self - other, 0)` componentwise: the generator of `(x^self) : x^other`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal in `d` variables, stored as its minimal generators.
///
/// The empty generator list is the zero ideal; the single zero vector is the
/// unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

/// Reduces `gens` to its `≤`-minimal antichain, sorted lexicographically.
pub fn minimalize(dim: usize, gens: Vec<ExponentVector>) -> Result<MonomialIdeal> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    for g in &gens {
        g.check_dim(dim)?;
    }
    Ok(MonomialIdeal {
        dim,
        gens: minimal_antichain(gens),
    })
}

fn minimal_antichain(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    // A divisor never has larger degree, and distinct vectors of equal degree
    // never divide each other, so one pass in degree order suffices.
    let mut keyed: Vec<(u64, ExponentVector)> = gens.drain(..).map(|g| (g.degree(), g)).collect();
    keyed.sort_unstable();
    keyed.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    let mut lower_degree_end = 0;
    let mut current_degree = None;
    for (deg, g) in keyed {
        if current_degree != Some(deg) {
            lower_degree_end = kept.len();
            current_degree = Some(deg);
        }
        if !kept[..lower_degree_end].iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable();
    kept
}

impl MonomialIdeal {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        Self { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            gens: vec![ExponentVector::zero(dim)],
        }
    }

    /// Ideal generated by the given exponent vectors.
    pub fn from_generators<I>(dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let gens = gens
            .into_iter()
            .map(ExponentVector::new)
            .collect::<Result<Vec<_>>>()?;
        minimalize(dim, gens)
    }

    /// The parameter ideal `(x_1^{a_1}, …, x_d^{a_d})`.
    pub fn diagonal(a: &[u32]) -> Result<Self> {
        let dim = a.len();
        let gens = (0..dim).map(|i| {
            let mut v = vec![0; dim];
            v[i] = a[i];
            v
        });
        Self::from_generators(dim, gens)
    }

    /// The maximal ideal `𝔪 = (x_1, …, x_d)`.
    pub fn maximal(dim: usize) -> Self {
        maximal_power(dim, 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Whether `x^α` lies in the ideal.
    pub fn contains(&self, alpha: &ExponentVector) -> Result<bool> {
        alpha.check_dim(self.dim)?;
        Ok(self.contains_unchecked(alpha))
    }

    pub(crate) fn contains_unchecked(&self, alpha: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(alpha))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_same_dim(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        minimalize(self.dim, gens)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.add(h)))
            .collect();
        minimalize(self.dim, gens)
    }

    /// `self^n` by repeated multiplication; `self^0` is the unit ideal.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.dim);
        for _ in 0..n {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|g| other.gens.iter().map(move |h| g.lcm(h)))
            .collect();
        minimalize(self.dim, gens)
    }

    /// `self : x^k`.
    pub fn colon_monomial(&self, k: &ExponentVector) -> Result<Self> {
        k.check_dim(self.dim)?;
        let gens = self.gens.iter().map(|g| g.saturating_sub(k)).collect();
        minimalize(self.dim, gens)
    }

    /// `self : other`, the intersection of the colons by each generator of `other`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(Error::ColonByZero)?;
        let mut acc = self.colon_monomial(first)?;
        for k in gens {
            if acc.is_zero() {
                break;
            }
            acc = acc.intersect(&self.colon_monomial(k)?)?;
        }
        Ok(acc)
    }

    /// `self : 𝔪^q`, computed as `q` successive colons by `𝔪`.
    pub fn colon_by_maximal_power(&self, q: u32) -> Self {
        let m = Self::maximal(self.dim);
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

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// `𝔪^q` in `dim` variables: all exponent vectors of total degree `q`.
pub fn maximal_power(dim: usize, q: u32) -> MonomialIdeal {
    assert!(dim >= 1, "ambient dimension must be at least 1");
    let mut gens = Vec::new();
    let mut current = vec![0u32; dim];
    compositions(&mut current, 0, q, &mut gens);
    MonomialIdeal {
        dim,
        gens: minimal_antichain(gens),
    }
}

fn compositions(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(ExponentVector(current.clone()));
        return;
    }
    for c in 0..=remaining {
        current[pos] = c;
        compositions(current, pos + 1, remaining - c, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(dim, gens.iter().map(|g| g.to_vec())).unwrap()
    }

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        let j = ideal(2, &[&[2, 0], &[3, 1], &[0, 2]]);
        assert_eq!(j, ideal(2, &[&[2, 0], &[0, 2]]));
        assert!(minimalize(2, vec![]).unwrap().is_zero());
        assert!(ideal(2, &[&[0, 0], &[1, 2]]).is_unit());
    }

    #[test]
    fn minimalize_rejects_mixed_dimensions() {
        let err = minimalize(2, vec![ev(&[1, 0]), ev(&[1, 0, 0])]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn membership() {
        let j = ideal(2, &[&[2, 0], &[0, 2]]);
        assert!(j.contains(&ev(&[2, 1])).unwrap());
        assert!(!j.contains(&ev(&[1, 1])).unwrap());
        assert!(MonomialIdeal::unit(2).contains(&ev(&[0, 0])).unwrap());
        assert!(j.contains(&ev(&[1])).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let i = ideal(2, &[&[2, 0]]).intersect(&ideal(2, &[&[0, 3]])).unwrap();
        assert_eq!(i, ideal(2, &[&[2, 3]]));

        let m3 = MonomialIdeal::maximal(2).power(3);
        assert_eq!(m3, ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
        assert_eq!(m3, maximal_power(2, 3));

        let j = ideal(2, &[&[2, 1], &[0, 4]]);
        assert_eq!(j.product(&MonomialIdeal::unit(2)).unwrap(), j);
        assert!(j.power(0).is_unit());
    }

    #[test]
    fn zero_ideal_conventions() {
        let j = ideal(2, &[&[1, 2]]);
        let zero = MonomialIdeal::zero(2);
        assert_eq!(zero.sum(&j).unwrap(), j);
        assert!(zero.product(&j).unwrap().is_zero());
        assert!(zero.intersect(&j).unwrap().is_zero());
        assert_eq!(j.colon(&zero).unwrap_err(), Error::ColonByZero);
    }

    #[test]
    fn maximal_power_examples() {
        assert_eq!(maximal_power(2, 2), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(maximal_power(3, 1), ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(maximal_power(2, 0).is_unit());
    }

    #[test]
    fn colon_examples() {
        let q = MonomialIdeal::diagonal(&[2, 2, 2]).unwrap();
        assert_eq!(q.colon(&maximal_power(3, 3)).unwrap(), MonomialIdeal::maximal(3));

        let q = MonomialIdeal::diagonal(&[3, 3]).unwrap();
        assert_eq!(q.colon(&maximal_power(2, 2)).unwrap(), maximal_power(2, 3));
        assert_eq!(q.colon_by_maximal_power(2), maximal_power(2, 3));

        let q = MonomialIdeal::diagonal(&[2, 2]).unwrap();
        assert!(q.colon(&maximal_power(2, 5)).unwrap().is_unit());

        let j = ideal(2, &[&[1, 3]]);
        assert_eq!(j.colon(&MonomialIdeal::unit(2)).unwrap(), j);
    }

    #[test]
    fn colon_by_iteration_matches_generator_colon() {
        for a in [[1, 3, 2], [2, 2, 4], [3, 1, 1]] {
            let q = MonomialIdeal::diagonal(&a).unwrap();
            for p in 0..8 {
                let direct = q.colon(&maximal_power(3, p)).unwrap();
                assert_eq!(q.colon_by_maximal_power(p), direct, "a={a:?} q={p}");
            }
        }
    }

    #[test]
    fn disjoint_support_intersection_is_product() {
        let j = ideal(3, &[&[2, 0, 0], &[1, 1, 0]]);
        let k = ideal(3, &[&[0, 0, 3]]);
        assert_eq!(j.intersect(&k).unwrap(), j.product(&k).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(ideal(2, &[&[0, 2], &[1, 0]]).to_string(), "[(0,2) (1,0)]");
    }
}
