use num_bigint::BigInt;

use super::normalized::{z_from_refined, zv_from_refined};
use crate::asmcount::{asm_total, ht_total};
use crate::error::Result;
use crate::exactnum::{BigRat, Coefficient, LaurentPoly};

/// `A_n` and `H_{2n}` for `n = 0..=max`, with `A_0 = H_0 = 1`.
///
/// Entries can be overridden to test that the recurrence notices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalCounts {
    asm: Vec<BigInt>,
    ht: Vec<BigInt>,
}

impl TotalCounts {
    pub fn closed_form(max: usize) -> Result<Self> {
        let mut asm = vec![BigInt::from(1)];
        let mut ht = vec![BigInt::from(1)];
        for n in 1..=max {
            asm.push(asm_total(n)?);
            ht.push(ht_total(2 * n)?);
        }
        Ok(TotalCounts { asm, ht })
    }

    pub fn asm(&self, n: usize) -> &BigInt {
        &self.asm[n]
    }

    pub fn ht(&self, n: usize) -> &BigInt {
        &self.ht[n]
    }

    pub fn with_asm(mut self, n: usize, value: BigInt) -> Self {
        self.asm[n] = value;
        self
    }

    pub fn with_ht(mut self, n: usize, value: BigInt) -> Self {
        self.ht[n] = value;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousReport {
    pub n: usize,
    /// Max coefficient difference between both sides, relative to the left.
    pub residual: f64,
}

fn weight_power<C: Coefficient>(e: usize) -> C {
    let root = C::sqrt3() * C::from_ratio(1, 2);
    (0..e).fold(C::one(), |acc, _| acc * root.clone())
}

/// `Z_k = (√3/2)^{k²} A_k`
fn z_const<C: Coefficient>(t: &TotalCounts, k: usize) -> C {
    weight_power::<C>(k * k) * C::from_rat(&BigRat::from_integer(t.asm(k).clone()))
}

/// `V_k = Z_k V_k / Z_k = (√3/2)^{k²} H_{2k} / A_k`
fn v_const<C: Coefficient>(t: &TotalCounts, k: usize) -> C {
    weight_power::<C>(k * k) * C::from_rat(&BigRat::new(t.ht(k).clone(), t.asm(k).clone()))
}

/// Checks
/// `Z_{n+1}(u) = 9 Z_n (Z_n V_n(u) − cos3u V_n Z_n(u)) / (16 (V_n Z_{n−1} + Z_n V_{n−1}) sin²u)`
/// as a Laurent-polynomial identity, with `z_n`, `z_{n+1}` from the refined
/// ASM counts, `v_n = (z_n v_n)/z_n` from the refined half-turn counts, and
/// the constants from `totals`.
pub fn check_homogeneous_recurrence<C: Coefficient>(
    n: usize,
    totals: &TotalCounts,
    tol: f64,
) -> Result<HomogeneousReport> {
    let z = z_from_refined::<C>(n)?;
    let v = zv_from_refined::<C>(n)?.div_exact(&z, tol)?;
    let (zn, vn) = (z_const::<C>(totals, n), v_const::<C>(totals, n));
    let (zp, vp) = (z_const::<C>(totals, n - 1), v_const::<C>(totals, n - 1));

    let numerator = (&v - &(&LaurentPoly::cos3u() * &z)).scale(&(zn.clone() * vn.clone()));
    let denominator = (vn * zp + zn.clone() * vp) * C::from_ratio(16, 9);
    let inv = denominator.inverse().ok_or(crate::error::Error::DivisionByZero)?;
    let rhs = numerator
        .div_exact(&LaurentPoly::sin_squared(), tol)?
        .scale(&(zn * inv));
    let lhs = z_from_refined::<C>(n + 1)?.scale(&z_const::<C>(totals, n + 1));
    Ok(HomogeneousReport {
        n,
        residual: lhs.max_diff(&rhs) / lhs.max_magnitude().max(f64::MIN_POSITIVE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Cyclo;
    use num_complex::Complex64;

    #[test]
    fn holds_exactly() {
        let totals = TotalCounts::closed_form(8).unwrap();
        for n in 1..=7 {
            let r = check_homogeneous_recurrence::<Cyclo>(n, &totals, 0.0).unwrap();
            assert_eq!(r.residual, 0.0, "n={n}");
        }
    }

    #[test]
    fn holds_in_doubles_and_detects_corruption() {
        let totals = TotalCounts::closed_form(4).unwrap();
        for n in 2..=3 {
            let r = check_homogeneous_recurrence::<Complex64>(n, &totals, 1e-9).unwrap();
            assert!(r.residual < 1e-10, "n={n}: {}", r.residual);
        }
        let bad = totals.with_asm(4, BigInt::from(41));
        let r = check_homogeneous_recurrence::<Complex64>(3, &bad, 1e-9).unwrap();
        assert!(r.residual > 1e-3);
    }
}
