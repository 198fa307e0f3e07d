//! Closed forms for total and refined counts, all in exact arithmetic.

use num_bigint::BigInt;
use num_traits::One;

use super::{RefinedTable, SymmetryClass};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial_ratio, to_integer, BigRat};

/// `A_{n+1} / A_n = C(3n+1, n) / C(2n, n)`
pub fn asm_step_ratio(n: u64) -> BigRat {
    BigRat::new(binomial(3 * n + 1, n as i64), binomial(2 * n, n as i64))
}

/// `H_{2n+2} / H_{2n} = 4 C(3n,n) C(3n+3,n+1) / (3 C(2n,n) C(2n+2,n+1))`
pub fn ht_step_ratio(n: u64) -> BigRat {
    let top = BigInt::from(4) * binomial(3 * n, n as i64) * binomial(3 * n + 3, n as i64 + 1);
    let bottom = BigInt::from(3) * binomial(2 * n, n as i64) * binomial(2 * n + 2, n as i64 + 1);
    BigRat::new(top, bottom)
}

/// Number of ASMs of order `n`, by the ratio chain from `A_1 = 1`.
pub fn asm_total(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::OutOfRange("order must be positive".into()));
    }
    let mut acc = BigRat::one();
    for k in 1..n as u64 {
        acc *= asm_step_ratio(k);
    }
    to_integer(&acc)
}

/// `H_2`, confirmed by enumeration: the two permutation matrices of order two.
pub const HT_BASE: i64 = 2;

/// Number of half-turn symmetric ASMs of even `order`, by the ratio chain
/// from `H_2 = 2`.
pub fn ht_total(order: usize) -> Result<BigInt> {
    if order == 0 || order % 2 == 1 {
        return Err(Error::OddOrderForHalfTurn(order));
    }
    let mut acc = BigRat::from_integer(HT_BASE.into());
    for k in 1..(order / 2) as u64 {
        acc *= ht_step_ratio(k);
    }
    to_integer(&acc)
}

/// `A_n(r) / A_n`
pub fn refined_asm_ratio(n: usize, r: usize) -> Result<BigRat> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::OutOfRange(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let (n, r) = (n as i64, r as i64);
    factorial_ratio(
        &[2 * n - 1, n + r - 2, 2 * n - r - 1],
        &[n - 1, 3 * n - 2, r - 1, n - r],
    )
}

/// `A_n(r)`: ASMs of order `n` whose leftmost column has its one in row `r`.
pub fn refined_asm(n: usize, r: usize) -> Result<BigInt> {
    to_integer(&(refined_asm_ratio(n, r)? * BigRat::from_integer(asm_total(n)?)))
}

/// The `s`-th summand shared by the refined half-turn count and `ℬ_n`:
/// `(n² − ns + (s−1)²)(n+s−3)!(2n−s−1)! / ((s−1)!(n−s+1)!)`.
pub(crate) fn ht_kernel(n: i64, s: i64) -> Result<BigRat> {
    let poly = BigRat::from_integer((n * n - n * s + (s - 1) * (s - 1)).into());
    Ok(poly * factorial_ratio(&[n + s - 3, 2 * n - s - 1], &[s - 1, n - s + 1])?)
}

/// `H_{2n}(r) / H_{2n}` for `1 <= r <= 2n`, the upper half by mirror symmetry.
///
/// The double-factorial sum needs `n >= 2`: at `n = 1` the summand contains
/// `(−1)!`, so that order is refused rather than continued.
pub fn refined_ht_ratio(n: usize, r: usize) -> Result<BigRat> {
    if n < 2 {
        return Err(Error::DegenerateOrder(2 * n));
    }
    if r == 0 || r > 2 * n {
        return Err(Error::OutOfRange(format!("need 1 <= r <= 2n, got n={n}, r={r}")));
    }
    let r = if r > n { 2 * n + 1 - r } else { r };
    let (n, r) = (n as i64, r as i64);
    let prefactor = factorial_ratio(
        &[2 * n - 1, 2 * n - 1],
        &[n - 1, n - 1, 3 * n - 3, 3 * n - 1],
    )?;
    let mut sum = BigRat::from_integer(0.into());
    for s in 1..=r {
        let tail = factorial_ratio(&[n + r - s - 1, 2 * n - r + s - 2], &[r - s, n - r + s - 1])?;
        sum += ht_kernel(n, s)? * tail;
    }
    Ok(prefactor * sum)
}

/// `H_{2n}(r)`
pub fn refined_ht(n: usize, r: usize) -> Result<BigInt> {
    let total = ht_total(2 * n)?;
    to_integer(&(refined_ht_ratio(n, r)? * BigRat::from_integer(total)))
}

pub fn refined_asm_table(n: usize) -> Result<RefinedTable> {
    let counts = (1..=n).map(|r| refined_asm(n, r)).collect::<Result<Vec<_>>>()?;
    Ok(RefinedTable::new(n, SymmetryClass::Plain, counts))
}

/// Refined half-turn table of order `2n` from the closed form (`n >= 2`).
pub fn refined_ht_table(n: usize) -> Result<RefinedTable> {
    let counts = (1..=2 * n).map(|r| refined_ht(n, r)).collect::<Result<Vec<_>>>()?;
    Ok(RefinedTable::new(2 * n, SymmetryClass::HalfTurn, counts))
}
