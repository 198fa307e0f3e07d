use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` of two doubles, about 32 significant digits.
///
/// Used where a determinant has to be evaluated with nearly coincident
/// spectral parameters and plain doubles cancel away every digit.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

// π/2 split into three doubles
const HALF_PI: [f64; 3] = [
    std::f64::consts::FRAC_PI_2,
    6.123233995736766e-17,
    -1.4973849048591698e-33,
];

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn half_pi() -> Self {
        DoubleDouble::new(HALF_PI[0], HALF_PI[1])
    }

    pub fn pi() -> Self {
        Self::half_pi().mul_f64(2.0)
    }

    /// `(sin r, cos r)` by Taylor series, valid for `|r| <= π/4`.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut term = r;
        let mut sin = r;
        let mut k = 1.0;
        while term.hi.abs() > 1e-36 {
            term = -(term * r2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
            sin = sin + term;
            k += 2.0;
        }
        let mut term = DoubleDouble::ONE;
        let mut cos = DoubleDouble::ONE;
        let mut k = 0.0;
        while term.hi.abs() > 1e-36 {
            term = -(term * r2) / DoubleDouble::from_f64((k + 1.0) * (k + 2.0));
            cos = cos + term;
            k += 2.0;
        }
        (sin, cos)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let q = (self.hi / HALF_PI[0]).round();
        // three-part Cody-Waite reduction keeps r accurate for moderate |x|
        let r = self - DoubleDouble::from_f64(q * HALF_PI[0])
            - DoubleDouble::from_f64(q).mul_f64(HALF_PI[1])
            - DoubleDouble::from_f64(q).mul_f64(HALF_PI[2]);
        let (s, c) = Self::sin_cos_reduced(r);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        // two Newton-style correction steps on the quotient
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(s: &str) -> DoubleDouble {
        // parse a decimal literal exactly enough for reference values
        let x: f64 = s.parse().unwrap();
        let mut acc = DoubleDouble::ZERO;
        let (mant, exp) = match s.split_once('e') {
            Some((m, e)) => (m, e.parse::<i32>().unwrap()),
            None => (s, 0),
        };
        let neg = mant.starts_with('-');
        let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let point = mant.trim_start_matches('-').find('.').unwrap_or(digits.len()) as i32;
        for ch in digits.chars() {
            acc = acc.mul_f64(10.0) + DoubleDouble::from_f64(ch.to_digit(10).unwrap() as f64);
        }
        let scale = exp + point - digits.len() as i32;
        for _ in 0..scale.max(0) {
            acc = acc.mul_f64(10.0);
        }
        for _ in 0..(-scale).max(0) {
            acc = acc / DoubleDouble::from_f64(10.0);
        }
        let acc = if neg { -acc } else { acc };
        assert!((acc.to_f64() - x).abs() <= 1e-15 * x.abs().max(1e-300));
        acc
    }

    fn rel(a: DoubleDouble, b: DoubleDouble) -> f64 {
        ((a - b).to_f64() / b.to_f64()).abs()
    }

    #[test]
    fn arithmetic_is_double_double_accurate() {
        let third = DoubleDouble::ONE / DoubleDouble::from_f64(3.0);
        let back = third * DoubleDouble::from_f64(3.0) - DoubleDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        // (1 + 2^-60) - 1 survives
        let tiny = 2f64.powi(-60);
        let x = DoubleDouble::ONE + DoubleDouble::from_f64(tiny) - DoubleDouble::ONE;
        assert_eq!(x.to_f64(), tiny);
    }

    #[test]
    fn trig_reference_values() {
        // 32-digit references
        let sin1 = dd("0.84147098480789650665250232163029899962");
        let cos1 = dd("0.54030230586813971740093660744297660373");
        let (s, c) = DoubleDouble::ONE.sin_cos();
        assert!(rel(s, sin1) < 1e-30, "{}", rel(s, sin1));
        assert!(rel(c, cos1) < 1e-30);
        let sin3 = dd("0.14112000805986722210074480280811027984");
        assert!(rel(DoubleDouble::from_f64(3.0).sin(), sin3) < 1e-29);
        let sin_m2 = dd("-0.90929742682568169539601986591174484270");
        assert!(rel(DoubleDouble::from_f64(-2.0).sin(), sin_m2) < 1e-30);
    }

    #[test]
    fn small_argument_sine_keeps_relative_accuracy() {
        let x = DoubleDouble::from_f64(1e-5);
        // sin x = x - x^3/6 + x^5/120
        let expect = x - x * x * x / DoubleDouble::from_f64(6.0)
            + x * x * x * x * x / DoubleDouble::from_f64(120.0);
        assert!(rel(x.sin(), expect) < 1e-30);
    }

    #[test]
    fn pi_identities() {
        let pi = DoubleDouble::pi();
        assert!(pi.sin().to_f64().abs() < 1e-31);
        assert!((pi.cos() + DoubleDouble::ONE).to_f64().abs() < 1e-31);
    }
}
