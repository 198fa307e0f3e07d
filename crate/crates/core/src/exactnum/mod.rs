//! Arithmetic substrate: big rationals, factorials, dense rational
//! polynomials, Laurent polynomials and the two non-standard scalar types.

mod cyclo;
mod ddouble;
mod laurent;
mod ratpoly;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclo::Cyclo;
pub use ddouble::DoubleDouble;
pub use laurent::{Coefficient, LaurentPoly, DEFAULT_FLOOR};
pub use ratpoly::{poly_mul, RationalPoly};

use crate::error::{Error, Result};

/// Exact rational, always reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

pub const DEFAULT_FACTORIAL_CAP: usize = 512;

/// Factorials `0!..=cap!` computed once; larger arguments are built on demand
/// from the last cached entry.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Factorials {
    pub fn with_cap(cap: usize) -> Self {
        let mut table = Vec::with_capacity(cap + 1);
        let mut acc = BigInt::one();
        table.push(acc.clone());
        for k in 1..=cap {
            acc *= k;
            table.push(acc.clone());
        }
        Factorials { table }
    }

    pub fn cap(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, n: usize) -> BigInt {
        if let Some(v) = self.table.get(n) {
            return v.clone();
        }
        let mut acc = self.table[self.cap()].clone();
        for k in self.cap() + 1..=n {
            acc *= k;
        }
        acc
    }
}

fn default_factorials() -> &'static Factorials {
    static TABLE: OnceLock<Factorials> = OnceLock::new();
    TABLE.get_or_init(|| Factorials::with_cap(DEFAULT_FACTORIAL_CAP))
}

pub fn factorial(n: usize) -> BigInt {
    default_factorials().get(n)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `Π numer[i]! / Π denom[j]!` as an exact rational.
///
/// Every argument must be nonnegative; a negative one is reported rather than
/// continued analytically.
pub fn factorial_ratio(numer: &[i64], denom: &[i64]) -> Result<BigRat> {
    let table = default_factorials();
    let mut top = BigInt::one();
    let mut bottom = BigInt::one();
    for &a in numer {
        if a < 0 {
            return Err(Error::NegativeFactorial(a));
        }
        top *= table.get(a as usize);
    }
    for &a in denom {
        if a < 0 {
            return Err(Error::NegativeFactorial(a));
        }
        bottom *= table.get(a as usize);
    }
    Ok(BigRat::new(top, bottom))
}

pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// Returns the numerator if `q` is an integer.
pub fn to_integer(q: &BigRat) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.numer().clone())
    } else {
        Err(Error::NonIntegerResult(q.to_string()))
    }
}

pub(crate) fn rat_to_f64(q: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    if q.is_zero() {
        return 0.0;
    }
    // keep ~64 significant bits in an integer quotient, then rescale
    let shift = 64 - (q.numer().bits() as i64 - q.denom().bits() as i64);
    let num = q.numer().abs();
    let quotient = if shift >= 0 {
        (num << shift as u64) / q.denom()
    } else {
        num / (q.denom() << (-shift) as u64)
    };
    let v = quotient.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if q.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 1), BigInt::from(4));
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn ratio_of_binomials_for_asm_step() {
        // C(10,3)/C(6,3) = 120/20
        let q = BigRat::new(binomial(10, 3), binomial(6, 3));
        assert_eq!(q, rat(6, 1));
        // (3n+1 choose n)/(2n choose n) at n = 2: C(7,2)/C(4,2) = 21/6
        let q = BigRat::new(binomial(7, 2), binomial(4, 2));
        assert_eq!(q, rat(7, 2));
    }

    #[test]
    fn factorial_ratio_refined_asm_order_three() {
        // (2n-1)!(n+r-2)!(2n-r-1)! / ((n-1)!(3n-2)!(r-1)!(n-r)!) at n=3
        let r1 = factorial_ratio(&[5, 2, 4], &[2, 7, 0, 2]).unwrap();
        assert_eq!(r1, rat(2, 7));
        let r2 = factorial_ratio(&[5, 3, 3], &[2, 7, 1, 1]).unwrap();
        assert_eq!(r2, rat(3, 7));
        let trivial = factorial_ratio(&[1, 0, 0], &[0, 1, 0, 0]).unwrap();
        assert_eq!(trivial, rat(1, 1));
    }

    #[test]
    fn negative_factorial_is_rejected() {
        assert_eq!(
            factorial_ratio(&[2, -1], &[1]),
            Err(Error::NegativeFactorial(-1))
        );
    }

    #[test]
    fn factorials_beyond_cap() {
        let small = Factorials::with_cap(5);
        assert_eq!(small.get(5), BigInt::from(120));
        assert_eq!(small.get(8), BigInt::from(40320));
        assert_eq!(factorial(600), small.get(600));
    }

    #[test]
    fn rat_to_f64_handles_huge_values() {
        let big = BigRat::new(factorial(400), factorial(399));
        assert!((rat_to_f64(&big) - 400.0).abs() < 1e-9);
        let tiny = BigRat::new(BigInt::from(-1), BigInt::from(3));
        assert!((rat_to_f64(&tiny) + 1.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn binomial_symmetry_and_pascal(n in 1u64..80, k in 0i64..80) {
            prop_assume!(k as u64 <= n);
            prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
