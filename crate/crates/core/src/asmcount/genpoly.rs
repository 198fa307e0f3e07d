//! Generating polynomials `𝒜_n(t)`, `ℋ_{2n}(t)`, `ℬ_n(t)` and the identity
//! tying them together.

use num_bigint::BigInt;

use super::closed::{asm_total, ht_kernel, ht_total, refined_asm_table, refined_ht_table};
use super::{brute_refined, RefinedTable, SymmetryClass};
use crate::error::{Error, Result};
use crate::exactnum::{factorial_ratio, rat, BigRat, RationalPoly};

fn table_poly(table: &RefinedTable) -> RationalPoly {
    RationalPoly::new(table.counts().iter().map(|c| BigRat::from_integer(c.clone())).collect())
}

/// `𝒜_n(t) = Σ_r A_n(r) t^{r−1}`
pub fn gen_poly_a(n: usize) -> Result<RationalPoly> {
    Ok(table_poly(&refined_asm_table(n)?))
}

/// `ℋ_{2n}(t) = Σ_r H_{2n}(r) t^{r−1}`; order two is enumerated, since the
/// closed form does not cover it.
pub fn gen_poly_h(n: usize) -> Result<RationalPoly> {
    match n {
        0 => Err(Error::OutOfRange("order must be positive".into())),
        1 => Ok(table_poly(&brute_refined(2, SymmetryClass::HalfTurn, 2)?)),
        _ => Ok(table_poly(&refined_ht_table(n)?)),
    }
}

/// `ℬ_n(t)`, the factor with `ℋ_{2n}/H_{2n} = (𝒜_n/A_n) ℬ_n`.
pub fn gen_poly_b(n: usize) -> Result<RationalPoly> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    let ni = n as i64;
    let prefactor = BigRat::from_integer((3 * ni - 2).into())
        * factorial_ratio(&[2 * ni - 1], &[ni - 1, 3 * ni - 1])?;
    let coeffs = (1..=ni + 1)
        .map(|r| Ok(&prefactor * ht_kernel(ni, r)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalPoly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HtIdentityReport {
    pub n: usize,
    /// `ℋ_{2n}(t) / H_{2n}`
    pub lhs: RationalPoly,
    /// Residual of the form with the `(t²−t+1)` denominator.
    pub residual_quotient_form: RationalPoly,
    /// Residual of the `ℬ_n` form.
    pub residual_b_form: RationalPoly,
}

impl HtIdentityReport {
    pub fn holds(&self) -> bool {
        self.residual_quotient_form.is_zero() && self.residual_b_form.is_zero()
    }
}

fn normalized(p: RationalPoly, total: BigInt) -> RationalPoly {
    p.scale(&BigRat::new(1.into(), total))
}

/// Checks both forms of the half-turn generating-function identity exactly.
///
/// The first form's right side must be divisible by `t² − t + 1`; a nonzero
/// remainder is folded into its residual.
pub fn verify_ht_identity(n: usize) -> Result<HtIdentityReport> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    let lhs = normalized(gen_poly_h(n)?, ht_total(2 * n)?);
    let an = normalized(gen_poly_a(n)?, asm_total(n)?);
    let an1 = normalized(gen_poly_a(n + 1)?, asm_total(n + 1)?);

    let ni = n as i64;
    let t_minus_1 = RationalPoly::from_ints(&[-1, 1]);
    let first = (&t_minus_1 * &t_minus_1).scale(&rat(9 * (3 * ni + 1), 4 * (2 * ni + 1)));
    let cubic = &(&RationalPoly::from_ints(&[1, 1]) * &RationalPoly::from_ints(&[-2, 1]))
        * &RationalPoly::from_ints(&[-1, 2]);
    let bracket = &(&first * &an1) - &(&cubic.scale(&rat(1, 2)) * &an);
    let (quot, rem) = (&an * &bracket)
        .div_rem(&RationalPoly::from_ints(&[1, -1, 1]))
        .expect("nonzero divisor");
    let residual_quotient_form = &(&lhs - &quot) + &rem;

    let residual_b_form = &lhs - &(&an * &gen_poly_b(n)?);
    let report = HtIdentityReport {
        n,
        lhs,
        residual_quotient_form,
        residual_b_form,
    };
    if !report.holds() {
        return Err(Error::IdentityFailed(format!(
            "n={n}: residuals {} and {}",
            report.residual_quotient_form, report.residual_b_form
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_polynomials() {
        assert_eq!(gen_poly_a(2).unwrap(), RationalPoly::from_ints(&[1, 1]));
        assert_eq!(gen_poly_h(1).unwrap(), RationalPoly::from_ints(&[1, 1]));
        assert_eq!(gen_poly_h(2).unwrap(), RationalPoly::from_ints(&[2, 3, 3, 2]));
        let b2 = gen_poly_b(2).unwrap();
        assert_eq!(b2, RationalPoly::new(vec![rat(2, 5), rat(1, 5), rat(2, 5)]));
        assert_eq!(b2.to_string(), "(2 + t + 2t^2)/5");
        assert!(gen_poly_b(1).is_err());
    }

    #[test]
    fn identity_order_four() {
        let r = verify_ht_identity(2).unwrap();
        assert_eq!(r.lhs, RationalPoly::from_ints(&[2, 3, 3, 2]).scale(&rat(1, 10)));
        assert!(r.residual_quotient_form.is_zero());
        assert!(r.residual_b_form.is_zero());
    }

    #[test]
    fn identity_through_ten() {
        for n in 2..=10 {
            assert!(verify_ht_identity(n).unwrap().holds(), "n={n}");
        }
    }
}
