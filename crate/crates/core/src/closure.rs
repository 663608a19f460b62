//! Integral closure of monomial ideals.
//!
//! The closure of a monomial ideal `J` is spanned by the lattice points of its
//! Newton polyhedron `conv(gens J) + ℝ^d_{≥0}`. Diagonal ideals
//! `(x_1^{a_1}, …, x_d^{a_d})` admit the closed form `Σ α_i / a_i ≥ 1`; general
//! ideals are decided by exact Fourier–Motzkin elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::boxmodel::DEFAULT_BOX_CAP;
use crate::error::{Error, Result};
use crate::exponent::{maximal_power, minimalize, ExponentVector, MonomialIdeal};

/// A membership query `x^α ∈ closure(J)`.
#[derive(Debug, Clone)]
pub struct ClosureQuery {
    pub ideal: MonomialIdeal,
    pub point: ExponentVector,
}

impl ClosureQuery {
    pub fn new(ideal: MonomialIdeal, point: ExponentVector) -> Result<Self> {
        if ideal.dim() != point.dim() {
            return Err(Error::DimensionMismatch {
                expected: ideal.dim(),
                found: point.dim(),
            });
        }
        Ok(Self { ideal, point })
    }

    pub fn evaluate(&self) -> Result<bool> {
        in_closure_general(&self.ideal, &self.point)
    }
}

/// `Σ α_i / a_i ≥ 1`, decided over a common denominator.
pub fn in_closure_diagonal(a: &[u32], alpha: &[u32]) -> Result<bool> {
    if a.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: alpha.len(),
        });
    }
    if a.contains(&0) {
        return Err(Error::Invalid("diagonal exponents must be positive".into()));
    }
    let denom = a.iter().fold(1u128, |acc, &x| acc.lcm(&u128::from(x)));
    let numer: u128 = alpha
        .iter()
        .zip(a)
        .map(|(&x, &ai)| u128::from(x) * (denom / u128::from(ai)))
        .sum();
    Ok(numer >= denom)
}

/// Minimal generators of the closure of `(x_1^{a_1}, …, x_d^{a_d})`.
///
/// Every minimal element lies in `∏ [0, a_i]`, which is enumerated exhaustively.
pub fn closure_diagonal(a: &[u32]) -> Result<MonomialIdeal> {
    let bounds: Vec<u32> = a.to_vec();
    let points = box_points(&bounds)?;
    let mut gens = Vec::new();
    for p in points {
        if in_closure_diagonal(a, &p)? {
            gens.push(ExponentVector::new(p)?);
        }
    }
    minimalize(a.len(), gens)
}

/// Whether `α` lies in the Newton polyhedron of `J`, i.e. whether convex weights
/// `λ_g ≥ 0` with `Σ λ_g = 1` and `Σ λ_g g ≤ α` exist.
pub fn in_closure_general(ideal: &MonomialIdeal, alpha: &ExponentVector) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.dim() != alpha.dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.dim(),
            found: alpha.dim(),
        });
    }
    let gens = ideal.generators();
    if gens.iter().any(|g| g.divides(alpha)) {
        return Ok(true);
    }
    if gens.len() == 1 {
        return Ok(false);
    }

    // Substitute λ_k = 1 - Σ_{j<k} λ_j and keep λ_1 … λ_{k-1} as unknowns.
    let vars = gens.len() - 1;
    let last = gens[vars].coords();
    let mut rows = Vec::with_capacity(vars + 1 + alpha.dim());
    for j in 0..vars {
        let mut coeffs = vec![BigInt::zero(); vars];
        coeffs[j] = BigInt::from(-1);
        rows.push(Row {
            coeffs,
            bound: BigInt::zero(),
        });
    }
    rows.push(Row {
        coeffs: vec![BigInt::from(1); vars],
        bound: BigInt::from(1),
    });
    for (i, (&x, &l)) in alpha.coords().iter().zip(last.iter()).enumerate() {
        let coeffs = gens[..vars]
            .iter()
            .map(|g| BigInt::from(i64::from(g.coords()[i]) - i64::from(l)))
            .collect();
        let bound = BigInt::from(i64::from(x) - i64::from(l));
        rows.push(Row { coeffs, bound });
    }
    Ok(fourier_motzkin_feasible(rows, vars))
}

/// `Σ coeffs_j x_j ≤ bound`.
#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

impl Row {
    fn normalize(&mut self) {
        let mut g = self.bound.abs();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if !g.is_zero() && g != BigInt::from(1) {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.bound /= &g;
        }
    }
}

fn fourier_motzkin_feasible(rows: Vec<Row>, vars: usize) -> bool {
    let mut rows = match prune(rows) {
        Some(r) => r,
        None => return false,
    };
    for var in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            match row.coeffs[var].sign() {
                num_bigint::Sign::Plus => pos.push(row),
                num_bigint::Sign::Minus => neg.push(row),
                num_bigint::Sign::NoSign => rest.push(row),
            }
        }
        for p in &pos {
            for n in &neg {
                let up = -&n.coeffs[var];
                let un = p.coeffs[var].clone();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(cp, cn)| cp * &up + cn * &un)
                    .collect();
                let bound = &p.bound * &up + &n.bound * &un;
                rest.push(Row { coeffs, bound });
            }
        }
        rows = match prune(rest) {
            Some(r) => r,
            None => return false,
        };
    }
    true
}

/// Normalizes rows, keeps the tightest bound per coefficient vector and checks
/// constant rows. `None` means a constant row `0 ≤ b` with `b < 0` was found.
fn prune(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vec<BigInt>, BigInt> = HashMap::new();
    for mut row in rows {
        row.normalize();
        if row.coeffs.iter().all(Zero::is_zero) {
            if row.bound.is_negative() {
                return None;
            }
            continue;
        }
        best.entry(row.coeffs)
            .and_modify(|b| {
                if row.bound < *b {
                    *b = row.bound.clone();
                }
            })
            .or_insert(row.bound);
    }
    Some(
        best.into_iter()
            .map(|(coeffs, bound)| Row { coeffs, bound })
            .collect(),
    )
}

/// Minimal generators of `closure(J)`, searched in `∏ [0, max_g g_i + 1]`.
pub fn closure_generators(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let dim = ideal.dim();
    let maxes: Vec<u32> = (0..dim)
        .map(|i| ideal.generators().iter().map(|g| g.coords()[i]).max().unwrap_or(0))
        .collect();
    let bounds: Vec<u32> = maxes.iter().map(|m| m + 1).collect();
    let mut gens = Vec::new();
    for p in box_points(&bounds)? {
        let p = ExponentVector::new(p)?;
        if in_closure_general(ideal, &p)? {
            gens.push(p);
        }
    }
    let closure = minimalize(dim, gens)?;
    for g in closure.generators() {
        if g.coords().iter().zip(&maxes).any(|(c, m)| c > m) {
            return Err(Error::Invalid(format!(
                "closure generator {g} lies on the search boundary"
            )));
        }
    }
    Ok(closure)
}

/// Lattice points of `∏ [0, bounds_i]`.
fn box_points(bounds: &[u32]) -> Result<Vec<Vec<u32>>> {
    if bounds.is_empty() {
        return Err(Error::ZeroDimension);
    }
    let count: u128 = bounds.iter().map(|&b| u128::from(b) + 1).product();
    if count > DEFAULT_BOX_CAP as u128 {
        return Err(Error::BoxCapExceeded {
            points: count,
            cap: DEFAULT_BOX_CAP,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0u32; bounds.len()];
    loop {
        out.push(cur.clone());
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// For `𝔮 = (x_1^{n-1}, x_2^n, …, x_d^n)` and `J = 𝔮 + 𝔪^n`, checks pointwise on
/// `∏ [0, mn]` that `closure(𝔮) = J` and that `J^m` equals the closure of
/// `K = (x_1^{m(n-1)}, x_2^{mn}, …, x_d^{mn})`.
pub fn corollary41_check(d: usize, n: u32, m: u32) -> Result<bool> {
    if d < 2 || n < 2 || m < 1 {
        return Err(Error::Invalid(format!(
            "need d >= 2, n >= 2, m >= 1 (got d={d}, n={n}, m={m})"
        )));
    }
    let mut qa = vec![n; d];
    qa[0] = n - 1;
    let small = MonomialIdeal::diagonal(&qa)?;
    let j = small.sum(&maximal_power(d, n))?;
    let ka: Vec<u32> = qa.iter().map(|x| x * m).collect();
    let k = MonomialIdeal::diagonal(&ka)?;
    let jm = j.power(m);

    for p in box_points(&vec![m * n; d])? {
        let p = ExponentVector::new(p)?;
        if in_closure_general(&small, &p)? != j.contains(&p)? {
            return Ok(false);
        }
        if in_closure_general(&k, &p)? != jm.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Q : 𝔪^q` equals the closure of `Q = (x_1^{a_1}, …, x_d^{a_d})`, by the
/// exponent pattern: with `ℓ = Σ a_i - d + 1 - q`, either every `a_i = ℓ`, or
/// exactly one `a_j = ℓ - 1` and all others equal `ℓ`.
pub fn prop42_classify(a: &[u32], q: u32) -> Result<bool> {
    if a.len() < 2 {
        return Err(Error::OutsideHypothesis("needs d >= 2".into()));
    }
    if a.iter().any(|&x| x < 2) {
        return Err(Error::OutsideHypothesis("needs every a_i >= 2".into()));
    }
    let rho: i64 = a.iter().map(|&x| i64::from(x) - 1).sum();
    let ell = rho + 1 - i64::from(q);
    let all_ell = a.iter().all(|&x| i64::from(x) == ell);
    let off_by_one = a.iter().filter(|&&x| i64::from(x) == ell - 1).count() == 1
        && a.iter().filter(|&&x| i64::from(x) == ell).count() == a.len() - 1;
    Ok(all_ell || off_by_one)
}
