//! Nilpotency and Gorenstein duality checks shared by the finite artinian models.

use crate::error::{Error, Result};

/// An ideal of a finite artinian quotient `Ā`, closed under multiplication by `Ā`.
pub trait ArtinianIdeal: Clone + PartialEq + Sized {
    /// The unit ideal `Ā` of the same quotient.
    fn whole(&self) -> Self;

    fn is_zero(&self) -> bool;

    fn is_whole(&self) -> bool;

    /// Product of two ideals of the same quotient.
    fn product(&self, other: &Self) -> Result<Self>;

    /// `(0) : self`.
    fn annihilator(&self) -> Self;

    /// `self^n`, with `self^0 = Ā`.
    fn power(&self, n: u32) -> Result<Self> {
        let mut acc = self.whole();
        for _ in 0..n {
            if acc.is_zero() {
                break;
            }
            acc = acc.product(self)?;
        }
        Ok(acc)
    }
}

/// `max{n ≥ 0 : E^n ≠ 0}`. The zero ideal has index 0.
pub fn nilpotency_index<E: ArtinianIdeal>(ideal: &E) -> Result<u32> {
    if ideal.is_whole() {
        return Err(Error::UnitIdeal);
    }
    let mut n = 0;
    let mut current = ideal.whole();
    loop {
        let next = current.product(ideal)?;
        if next.is_zero() {
            return Ok(n);
        }
        n += 1;
        current = next;
    }
}

/// Whether `(0) : E^i = E^{r+1-i}` holds for every `0 ≤ i ≤ r+1`, where `r` is
/// the nilpotency index of `E`.
///
/// Outside that range both sides are fixed by convention (`E^i = Ā` for
/// `i ≤ 0` and `(0) : Ā = 0`), so the finite range decides the whole family.
pub fn ooishi_gorenstein_check<E: ArtinianIdeal>(ideal: &E) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let r = nilpotency_index(ideal)?;
    let mut powers = Vec::with_capacity(r as usize + 2);
    powers.push(ideal.whole());
    for i in 1..=(r + 1) as usize {
        let next = powers[i - 1].product(ideal)?;
        powers.push(next);
    }
    let top = r as usize + 1;
    Ok((0..=top).all(|i| powers[i].annihilator() == powers[top - i]))
}
