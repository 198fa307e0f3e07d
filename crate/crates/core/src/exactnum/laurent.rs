use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{rat_to_f64, BigRat, Cyclo};
use crate::error::{Error, Result};

/// Coefficient magnitude below which a double-regime coefficient is dropped.
pub const DEFAULT_FLOOR: f64 = 1e-12;

/// Scalar ring for [`LaurentPoly`] coefficients.
///
/// Two regimes exist: complex doubles, compared against a floor, and the exact
/// cyclotomic field where only true zeros are dropped.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const EXACT: bool;

    fn magnitude(&self) -> f64;
    fn from_rat(q: &BigRat) -> Self;
    /// `e^{ikπ/6}`
    fn zeta12(k: i64) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rat(&super::rat(num, den))
    }

    fn sqrt3() -> Self {
        Self::zeta12(1) + Self::zeta12(-1)
    }
}

impl Coefficient for Complex64 {
    const EXACT: bool = false;

    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn from_rat(q: &BigRat) -> Self {
        Complex64::new(rat_to_f64(q), 0.0)
    }
    fn zeta12(k: i64) -> Self {
        Complex64::from_polar(1.0, k as f64 * std::f64::consts::PI / 6.0)
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.inv())
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn sqrt3() -> Self {
        Complex64::new(3f64.sqrt(), 0.0)
    }
}

impl Coefficient for Cyclo {
    const EXACT: bool = true;

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
    fn from_rat(q: &BigRat) -> Self {
        Cyclo::rational(q.clone())
    }
    fn zeta12(k: i64) -> Self {
        Cyclo::zeta_pow(k)
    }
    fn inverse(&self) -> Option<Self> {
        Cyclo::inverse(self)
    }
    fn to_complex(&self) -> Complex64 {
        Cyclo::to_complex(self)
    }
}

/// Finite Laurent polynomial `Σ c_k s^k` in `s = e^{iu}`.
///
/// Coefficients with magnitude at or below `floor` are never stored; in the
/// exact regime the floor is ignored and only true zeros are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C: Coefficient> {
    terms: BTreeMap<i32, C>,
    floor: f64,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self::zero_with_floor(DEFAULT_FLOOR)
    }

    pub fn zero_with_floor(floor: f64) -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
            floor,
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(k: i32, c: C) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p.prune();
        p
    }

    /// Builds without pruning anything but exact zeros; used for sampled
    /// reconstructions whose small coefficients are themselves the signal.
    pub fn from_terms_unpruned(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero_with_floor(0.0);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p.prune();
        p
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self.prune();
        self
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    fn add_term(&mut self, k: i32, c: C) {
        match self.terms.remove(&k) {
            Some(old) => {
                self.terms.insert(k, old + c);
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn prune(&mut self) {
        let floor = self.floor;
        self.terms.retain(|_, c| {
            if C::EXACT {
                !c.is_zero()
            } else {
                !c.is_zero() && c.magnitude() > floor
            }
        });
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i32) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn support(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(C::magnitude).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_with_floor(self.floor);
        for (&k, v) in &self.terms {
            out.terms.insert(k, v.clone() * c.clone());
        }
        out.prune();
        out
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            floor: self.floor,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one().with_floor(self.floor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_complex() * s.powi(k))
            .sum()
    }

    /// Value at angle `u`, i.e. at `s = e^{iu}`.
    pub fn eval_at(&self, u: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, u))
    }

    /// Value at `u = 0`: the sum of all coefficients.
    pub fn value_at_zero(&self) -> C {
        self.terms.values().cloned().fold(C::zero(), |a, b| a + b)
    }

    /// Largest `|c_k − c_{−k}|` over the support; zero iff the function is even
    /// in `u`.
    pub fn evenness_defect(&self) -> f64 {
        self.terms
            .keys()
            .map(|&k| (self.coeff(k) - self.coeff(-k)).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn is_even(&self, tol: f64) -> bool {
        if C::EXACT {
            self.terms.keys().all(|&k| self.coeff(k) == self.coeff(-k))
        } else {
            self.evenness_defect() <= tol * self.max_magnitude().max(f64::MIN_POSITIVE)
        }
    }

    /// `sin(kπ/6 + sign·u)` as `(ζ^k s^{sign} − ζ^{−k} s^{−sign}) / 2i`.
    pub fn sin_affine(k: i64, sign: i32) -> Self {
        let half = C::from_ratio(1, 2);
        Self::from_terms([
            (sign, -(C::zeta12(k + 3) * half.clone())),
            (-sign, C::zeta12(3 - k) * half),
        ])
    }

    /// `cos u`
    pub fn cos_u() -> Self {
        Self::from_terms([(1, C::from_ratio(1, 2)), (-1, C::from_ratio(1, 2))])
    }

    /// `cos 3u = (s³ + s⁻³)/2`
    pub fn cos3u() -> Self {
        Self::from_terms([(3, C::from_ratio(1, 2)), (-3, C::from_ratio(1, 2))])
    }

    /// `sin²u = −(s − s⁻¹)²/4`
    pub fn sin_squared() -> Self {
        Self::from_terms([
            (2, C::from_ratio(-1, 4)),
            (0, C::from_ratio(1, 2)),
            (-2, C::from_ratio(-1, 4)),
        ])
    }

    /// Exact division `self / den`.
    ///
    /// Long division from the top exponent down. The remainder must vanish:
    /// exactly in the exact regime, and up to `tol · max|self|` otherwise.
    pub fn div_exact(&self, den: &Self, tol: f64) -> Result<Self> {
        let (dl, dh) = match (den.min_exponent(), den.max_exponent()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Err(Error::DivisionByZero),
        };
        let (nl, nh) = match (self.min_exponent(), self.max_exponent()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Ok(Self::zero_with_floor(self.floor)),
        };
        let dense_den: Vec<C> = (dl..=dh).map(|k| den.coeff(k)).collect();
        let mut rem: Vec<C> = (nl..=nh).map(|k| self.coeff(k)).collect();
        let lead_inv = dense_den
            .last()
            .and_then(C::inverse)
            .ok_or(Error::DivisionByZero)?;
        let dlen = dense_den.len();
        let mut quotient = Self::zero_with_floor(self.floor);
        if rem.len() >= dlen {
            for top in (0..=rem.len() - dlen).rev() {
                let q = rem[top + dlen - 1].clone() * lead_inv.clone();
                if q.is_zero() {
                    continue;
                }
                for (j, d) in dense_den.iter().enumerate() {
                    let v = rem[top + j].clone() - q.clone() * d.clone();
                    rem[top + j] = v;
                }
                rem[top + dlen - 1] = C::zero();
                quotient.terms.insert(nl + top as i32 - dl, q);
            }
        }
        let scale = self.max_magnitude();
        let worst = rem.iter().map(C::magnitude).fold(0.0, f64::max);
        let exact_ok = rem.iter().all(C::is_zero);
        let ok = if C::EXACT { exact_ok } else { worst <= tol * scale };
        if !ok {
            return Err(Error::InexactDivision {
                remainder: worst,
                bound: if C::EXACT { 0.0 } else { tol * scale },
            });
        }
        quotient.prune();
        Ok(quotient)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms_unpruned(self.terms.iter().map(|(&k, c)| (k, f(c))))
            .with_floor(self.floor)
    }

    pub fn to_complex(&self) -> LaurentPoly<Complex64> {
        self.map_coeffs(C::to_complex)
    }

    /// Largest coefficient difference against `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|&k| (self.coeff(k) - other.coeff(k)).magnitude())
            .fold(0.0, f64::max)
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.floor = self.floor.min(rhs.floor);
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out.prune();
        out
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
            floor: self.floor,
        }
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero_with_floor(self.floor.min(rhs.floor));
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, a.clone() * b.clone());
            }
        }
        out.prune();
        out
    }
}

macro_rules! forward_owned {
    ($imp:ident, $method:ident) => {
        impl<C: Coefficient> $imp for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("[{c}]s^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    type CPoly = LaurentPoly<Complex64>;
    type QPoly = LaurentPoly<Cyclo>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weight_polynomials_evaluate_correctly() {
        for &u in &[0.0, 0.3, -1.1, 2.5] {
            let a: CPoly = LaurentPoly::sin_affine(2, 1);
            let b: CPoly = LaurentPoly::sin_affine(2, -1);
            let pi3 = std::f64::consts::FRAC_PI_3;
            assert!((a.eval_at(u) - c((pi3 + u).sin(), 0.0)).norm() < 1e-14);
            assert!((b.eval_at(u) - c((pi3 - u).sin(), 0.0)).norm() < 1e-14);
            let s2: CPoly = LaurentPoly::sin_squared();
            assert!((s2.eval_at(u).re - u.sin().powi(2)).abs() < 1e-14);
            let c3: CPoly = LaurentPoly::cos3u();
            assert!((c3.eval_at(u).re - (3.0 * u).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn exact_and_double_weights_agree() {
        let a: QPoly = LaurentPoly::sin_affine(2, 1);
        let ac: CPoly = LaurentPoly::sin_affine(2, 1);
        assert!(a.to_complex().max_diff(&ac) < 1e-15);
    }

    #[test]
    fn divide_square_by_itself() {
        let d: CPoly = LaurentPoly::from_terms([(1, c(1.0, 0.0)), (-1, c(-1.0, 0.0))]);
        let sq = &d * &d;
        let q = sq.div_exact(&sq, 1e-12).unwrap();
        assert_eq!(q.support(), vec![0]);
        assert!((q.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn f1_divided_by_its_root_factor_is_sin_eta() {
        // f_1(u) = sin η · sin(u − u_1); dividing by sin(u − u_1) leaves sin η
        let eta = 2.0 * std::f64::consts::FRAC_PI_3;
        let u1: f64 = 0.27;
        let root: CPoly = LaurentPoly::from_terms([
            (1, c(0.0, -0.5) * Complex64::from_polar(1.0, -u1)),
            (-1, c(0.0, 0.5) * Complex64::from_polar(1.0, u1)),
        ]);
        let f1 = root.scale(&c(eta.sin(), 0.0));
        let q = f1.div_exact(&root, 1e-12).unwrap();
        assert_eq!(q.support(), vec![0]);
        assert!((q.coeff(0).re - eta.sin()).abs() < 1e-14);
    }

    #[test]
    fn non_divisible_pair_is_reported() {
        let num: CPoly = LaurentPoly::monomial(1, c(1.0, 0.0));
        let den: CPoly = LaurentPoly::from_terms([(1, c(1.0, 0.0)), (-1, c(-1.0, 0.0))]);
        assert!(matches!(
            num.div_exact(&den, 1e-12),
            Err(Error::InexactDivision { .. })
        ));
        let numq: QPoly = LaurentPoly::monomial(1, Cyclo::one());
        let denq: QPoly = LaurentPoly::from_terms([(1, Cyclo::one()), (-1, -Cyclo::one())]);
        assert!(numq.div_exact(&denq, 0.0).is_err());
        assert_eq!(num.div_exact(&CPoly::zero(), 1e-12), Err(Error::DivisionByZero));
    }

    #[test]
    fn exact_sin_squared_division() {
        // 1 − cos 3u · cos u = sin²u (5 − 4 sin²u)
        let one: QPoly = LaurentPoly::one();
        let num = &one - &(&LaurentPoly::cos3u() * &LaurentPoly::cos_u());
        let q = num.div_exact(&LaurentPoly::sin_squared(), 0.0).unwrap();
        let s2: QPoly = LaurentPoly::sin_squared();
        let expect = &LaurentPoly::constant(Cyclo::rational(rat(5, 1)))
            - &s2.scale(&Cyclo::rational(rat(4, 1)));
        assert_eq!(q, expect);
    }

    #[test]
    fn floor_prunes_small_coefficients() {
        let p: CPoly = LaurentPoly::from_terms([(0, c(1.0, 0.0)), (2, c(1e-14, 0.0))]);
        assert_eq!(p.support(), vec![0]);
        let raw: CPoly = LaurentPoly::from_terms_unpruned([(0, c(1.0, 0.0)), (2, c(1e-14, 0.0))]);
        assert_eq!(raw.support(), vec![0, 2]);
    }

    fn arb_cpoly() -> impl Strategy<Value = CPoly> {
        prop::collection::vec((-5i32..5, -1.0f64..1.0, -1.0f64..1.0), 1..10).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(k, re, im)| (k, c(re, im))))
        })
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-4i32..4, -5i64..5, -5i64..5), 1..8).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(k, a, b)| {
                (k, Cyclo::from_ints([a, 0, b, 0]))
            }))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn division_recovers_quotient(q in arb_cpoly(), d in arb_cpoly()) {
            prop_assume!(!q.is_zero() && d.max_magnitude() > 0.1);
            // keep the leading coefficient away from zero so long division is stable
            let top = d.max_exponent().unwrap();
            prop_assume!(d.coeff(top).norm() > 0.3);
            let prod = &q * &d;
            let back = prod.div_exact(&d, 1e-9).unwrap();
            prop_assert!(back.max_diff(&q) <= 1e-8 * q.max_magnitude().max(1.0));
        }

        #[test]
        fn exact_division_is_exact(q in arb_qpoly(), d in arb_qpoly()) {
            prop_assume!(!q.is_zero() && !d.is_zero());
            let prod = &q * &d;
            let back = prod.div_exact(&d, 0.0).unwrap();
            prop_assert_eq!(back, q);
        }
    }
}
