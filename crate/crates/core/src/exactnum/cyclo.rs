use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{rat_to_f64, BigRat};

/// Element of the cyclotomic field `Q(ζ)`, `ζ = e^{iπ/6}`, stored on the
/// basis `1, ζ, ζ², ζ³` with `ζ⁴ = ζ² − 1`.
///
/// At crossing parameter `2π/3` every vertex weight, `√3`, `i` and
/// `e^{±iπ/3}` live here, so trigonometric polynomials built from them can be
/// manipulated without rounding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    c: [BigRat; 4],
}

fn reduce(mut c: [BigRat; 7]) -> [BigRat; 4] {
    for k in (4..7).rev() {
        let top = std::mem::take(&mut c[k]);
        if top.is_zero() {
            continue;
        }
        c[k - 2] += &top;
        c[k - 4] -= &top;
    }
    let [c0, c1, c2, c3, ..] = c;
    [c0, c1, c2, c3]
}

impl Cyclo {
    pub fn new(c: [BigRat; 4]) -> Self {
        Cyclo { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclo {
            c: c.map(|x| BigRat::from_integer(x.into())),
        }
    }

    pub fn rational(q: BigRat) -> Self {
        Cyclo {
            c: [q, BigRat::zero(), BigRat::zero(), BigRat::zero()],
        }
    }

    pub fn components(&self) -> &[BigRat; 4] {
        &self.c
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        let (sign, k) = if k >= 6 { (-1, k - 6) } else { (1, k) };
        let mut c: [BigRat; 7] = Default::default();
        c[k] = BigRat::from_integer(sign.into());
        Cyclo { c: reduce(c) }
    }

    pub fn sqrt3() -> Self {
        // ζ + ζ⁻¹ = 2 cos(π/6)
        Self::zeta_pow(1) + Self::zeta_pow(-1)
    }

    pub fn i() -> Self {
        Self::zeta_pow(3)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRat> {
        self.is_rational().then_some(&self.c[0])
    }

    /// Image under the field automorphism `ζ ↦ ζ^k`, `gcd(k, 12) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let mut acc = Cyclo::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            acc = acc + Self::zeta_pow(j as i64 * k).scale(cj);
        }
        acc
    }

    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        Cyclo {
            c: [&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q],
        }
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRat {
        let prod = self.clone() * self.galois(5) * self.galois(7) * self.galois(11);
        debug_assert!(prod.is_rational());
        prod.c[0].clone()
    }

    pub fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            return None;
        }
        let others = self.galois(5) * self.galois(7) * self.galois(11);
        let n = (self.clone() * others.clone()).c[0].clone();
        Some(others.scale(&n.recip()))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.c
            .iter()
            .enumerate()
            .map(|(j, cj)| {
                Complex64::from_polar(1.0, j as f64 * std::f64::consts::PI / 6.0) * rat_to_f64(cj)
            })
            .sum()
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo {
            c: Default::default(),
        }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Self::rational(BigRat::one())
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        Cyclo {
            c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3],
        }
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self + (-rhs)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            c: self.c.map(|x| -x),
        }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        let mut out: [BigRat; 7] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Cyclo { c: reduce(out) }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (c, name) in self.c.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
