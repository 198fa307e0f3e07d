use num_complex::Complex64;

use crate::asmcount::{asm_total, gen_poly_a, gen_poly_h, ht_total};
use crate::error::{Error, Result};
use crate::exactnum::{BigRat, Coefficient, LaurentPoly, RationalPoly};

/// Normalized `z_n(u) = Z_n(u)/Z_n` and `v_n(u) = V_n(u)/V_n`, all other
/// spectral parameters at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ZVPair<C: Coefficient> {
    pub n: usize,
    pub z: LaurentPoly<C>,
    pub v: LaurentPoly<C>,
}

fn bounded(p: &LaurentPoly<impl Coefficient>, degree: usize) -> bool {
    let d = degree as i32;
    p.min_exponent().is_none_or(|k| k >= -d) && p.max_exponent().is_none_or(|k| k <= d)
}

fn is_one<C: Coefficient>(c: C, tol: f64) -> bool {
    let d = c - C::one();
    if C::EXACT {
        d.is_zero()
    } else {
        d.magnitude() <= tol
    }
}

impl<C: Coefficient> ZVPair<C> {
    /// `z_1 = 1`, `v_1 = cos u`.
    pub fn initial() -> Self {
        ZVPair {
            n: 1,
            z: LaurentPoly::one(),
            v: LaurentPoly::cos_u(),
        }
    }

    /// Evenness, value one at `u = 0`, and degrees `n−1` and `n`.
    pub fn check(&self, tol: f64) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolated(format!("n={}: {what}", self.n)));
        if !self.z.is_even(tol) || !self.v.is_even(tol) {
            return fail("not even in u");
        }
        if !is_one(self.z.value_at_zero(), tol) || !is_one(self.v.value_at_zero(), tol) {
            return fail("not normalized at u = 0");
        }
        if !bounded(&self.z, self.n - 1) || !bounded(&self.v, self.n) {
            return fail("degree out of range");
        }
        Ok(())
    }

    /// One step of the normalized recurrence. The division by `sin²u` is an
    /// exact polynomial division; in the double regime `tol` bounds its
    /// remainder and the invariant checks. The result is checked, never
    /// renormalized.
    pub fn step(&self, tol: f64) -> Result<Self> {
        let n = self.n as i64;
        let cos3 = LaurentPoly::<C>::cos3u();
        let sin2 = LaurentPoly::<C>::sin_squared();
        let num_z = &self.v - &(&cos3 * &self.z);
        let num_v = &self.z - &(&cos3 * &self.v);
        let z = num_z
            .div_exact(&sin2, tol)?
            .scale(&C::from_ratio(2 * n + 1, 3 * (3 * n + 1)));
        let v = num_v
            .div_exact(&sin2, tol)?
            .scale(&C::from_ratio(2 * n + 1, 3 * (3 * n + 2)));
        let next = ZVPair { n: self.n + 1, z, v };
        next.check(tol)?;
        Ok(next)
    }
}

/// Pairs for orders `1..=n`, each checked.
pub fn iterate_zv<C: Coefficient>(n: usize, tol: f64) -> Result<Vec<ZVPair<C>>> {
    if n == 0 {
        return Err(Error::OutOfRange("order must be positive".into()));
    }
    let mut out = vec![ZVPair::<C>::initial()];
    out[0].check(tol)?;
    while out.len() < n {
        let next = out.last().expect("nonempty").step(tol)?;
        out.push(next);
    }
    Ok(out)
}

/// `(√3/2)^{1−m} Σ_r p_r a(u)^{r−1} b(u)^{m−r}` for weights `p_1..p_m`, with
/// `a(u) = sin(π/3 + u)`, `b(u) = sin(π/3 − u)`.
pub fn refined_poly<C: Coefficient>(weights: &[BigRat]) -> LaurentPoly<C> {
    let m = weights.len();
    if m == 0 {
        return LaurentPoly::zero();
    }
    let a = LaurentPoly::<C>::sin_affine(2, 1);
    let b = LaurentPoly::<C>::sin_affine(2, -1);
    let mut a_pow = vec![LaurentPoly::<C>::one()];
    let mut b_pow = vec![LaurentPoly::<C>::one()];
    for _ in 1..m {
        a_pow.push(a_pow.last().unwrap() * &a);
        b_pow.push(b_pow.last().unwrap() * &b);
    }
    let mut sum = LaurentPoly::<C>::zero();
    for (r, w) in weights.iter().enumerate() {
        let term = (&a_pow[r] * &b_pow[m - 1 - r]).scale(&C::from_rat(w));
        sum = &sum + &term;
    }
    let two_over_root3 = C::sqrt3() * C::from_ratio(2, 3);
    let mut factor = C::one();
    for _ in 1..m {
        factor = factor * two_over_root3.clone();
    }
    sum.scale(&factor)
}

fn normalized_coeffs(p: &RationalPoly, total: num_bigint::BigInt) -> Vec<BigRat> {
    let inv = BigRat::new(1.into(), total);
    p.coeffs().iter().map(|c| c * &inv).collect()
}

/// `z_n(u)` from the refined ASM counts.
pub fn z_from_refined<C: Coefficient>(n: usize) -> Result<LaurentPoly<C>> {
    Ok(refined_poly(&normalized_coeffs(&gen_poly_a(n)?, asm_total(n)?)))
}

/// `z_n(u) v_n(u)` from the refined half-turn counts of order `2n`.
pub fn zv_from_refined<C: Coefficient>(n: usize) -> Result<LaurentPoly<C>> {
    Ok(refined_poly(&normalized_coeffs(&gen_poly_h(n)?, ht_total(2 * n)?)))
}

/// Recovers `A_n(r)/A_n`, `r = 1..n`, from `z_n(u)`.
///
/// With `σ = s²` the sum over `r` is a polynomial in `σ`, and the Möbius
/// substitution `σ = (ω + ω̄τ)/(ωτ + ω̄)`, `ω = e^{iπ/3}`, sends
/// `a^{r−1} b^{n−r}` to a multiple of `τ^{n−r}`. Modes of `z_n` outside
/// `s^{−(n−1)}, s^{−(n−3)}, ..., s^{n−1}` must vanish.
pub fn refined_ratios_from_z<C: Coefficient>(z: &LaurentPoly<C>, n: usize, tol: f64) -> Result<Vec<C>> {
    if n == 0 {
        return Err(Error::OutOfRange("order must be positive".into()));
    }
    let top = n as i32 - 1;
    let stray = z
        .terms()
        .filter(|(k, _)| k.abs() > top || (k + top) % 2 != 0)
        .map(|(_, c)| c.magnitude())
        .fold(0.0, f64::max);
    let stray_ok = if C::EXACT { stray == 0.0 } else { stray <= tol };
    if !stray_ok {
        return Err(Error::InvariantViolated(format!(
            "z_{n} has modes outside its support (max {stray:.3e})"
        )));
    }
    let omega = C::zeta12(2);
    let omega_bar = C::zeta12(-2);
    let x = LaurentPoly::from_terms([(0, omega.clone()), (1, omega_bar.clone())]);
    let y = LaurentPoly::from_terms([(0, omega_bar), (1, omega)]);
    let mut t = LaurentPoly::<C>::zero();
    for k in 0..n {
        let c = z.coeff(2 * k as i32 - top);
        if c.is_zero() {
            continue;
        }
        let term = (&x.pow(k as u32) * &y.pow((n - 1 - k) as u32)).scale(&c);
        t = &t + &term;
    }
    Ok((1..=n).map(|r| t.coeff((n - r) as i32)).collect())
}

/// Max relative deviation of `z_n v_n` from the refined half-turn sum over
/// the sample points, with `z_n`, `v_n` from the recurrence.
pub fn zv_product_check<C: Coefficient>(n: usize, samples: &[f64], tol: f64) -> Result<f64> {
    let pair = iterate_zv::<C>(n, tol)?.pop().expect("nonempty");
    let product = (&pair.z * &pair.v).to_complex();
    let target = zv_from_refined::<C>(n)?.to_complex();
    let diff = |u: f64| -> (f64, f64) {
        let t: Complex64 = target.eval_at(u);
        ((product.eval_at(u) - t).norm(), t.norm())
    };
    let (worst, scale) = samples
        .iter()
        .map(|&u| diff(u))
        .fold((0.0f64, 0.0f64), |(w, s), (d, t)| (w.max(d), s.max(t)));
    Ok(worst / scale.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asmcount::refined_asm_ratio;
    use crate::exactnum::{rat, Cyclo};

    fn samples() -> Vec<f64> {
        (0..16).map(|k| -1.4 + 0.19 * k as f64).collect()
    }

    #[test]
    fn first_steps_by_hand() {
        let pairs = iterate_zv::<Cyclo>(2, 0.0).unwrap();
        assert_eq!(pairs[1].z, LaurentPoly::cos_u());
        // v_2 = 1 − (4/5) sin²u
        let expect = &LaurentPoly::one() - &LaurentPoly::sin_squared().scale(&Cyclo::rational(rat(4, 5)));
        assert_eq!(pairs[1].v, expect);
    }

    #[test]
    fn recurrence_matches_refined_counts_exactly() {
        let pairs = iterate_zv::<Cyclo>(8, 0.0).unwrap();
        for p in &pairs {
            assert_eq!(p.z, z_from_refined::<Cyclo>(p.n).unwrap(), "n={}", p.n);
            let ratios = refined_ratios_from_z(&p.z, p.n, 0.0).unwrap();
            for (r, got) in ratios.iter().enumerate() {
                let want = Cyclo::rational(refined_asm_ratio(p.n, r + 1).unwrap());
                assert_eq!(got, &want);
            }
            assert_eq!(&p.z * &p.v, zv_from_refined::<Cyclo>(p.n).unwrap());
        }
    }

    #[test]
    fn double_regime() {
        let pairs = iterate_zv::<Complex64>(10, 1e-9).unwrap();
        let z10 = &pairs[9].z;
        assert!(z10.max_diff(&z_from_refined::<Complex64>(10).unwrap()) < 1e-10);
        let ratios = refined_ratios_from_z(z10, 10, 1e-9).unwrap();
        for (r, got) in ratios.iter().enumerate() {
            let want = crate::exactnum::rat_to_f64(&refined_asm_ratio(10, r + 1).unwrap());
            assert!((got - want).norm() < 1e-10);
        }
        assert!(zv_product_check::<Complex64>(3, &samples(), 1e-9).unwrap() < 1e-10);
    }

    #[test]
    fn inexact_division_is_reported() {
        let bad = ZVPair::<Cyclo> {
            n: 1,
            z: LaurentPoly::one(),
            v: LaurentPoly::constant(Cyclo::rational(rat(2, 1))),
        };
        assert!(matches!(bad.step(0.0), Err(Error::InexactDivision { .. })));
    }
}
