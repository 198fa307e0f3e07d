//! Dense determinants by LU factorization with partial pivoting.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::exactnum::DoubleDouble;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Magnitude used only to choose pivots.
    fn pivot_size(&self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn pivot_size(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn pivot_size(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble::ZERO
    }
    fn one() -> Self {
        DoubleDouble::ONE
    }
    fn pivot_size(&self) -> f64 {
        self.hi.abs()
    }
}

/// Square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    /// Determinant; returns exact zero when a column has no nonzero pivot.
    pub fn determinant(&self) -> T {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let (pivot, size) = (col..n)
                .map(|r| (r, a[r * n + col].pivot_size()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if size == 0.0 {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det = det * p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                for j in col + 1..n {
                    a[r * n + j] = a[r * n + j] - factor * a[col * n + j];
                }
            }
        }
        det
    }
}

pub fn determinant<T: Scalar>(n: usize, f: impl FnMut(usize, usize) -> T) -> T {
    Matrix::from_fn(n, f).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion, independent of elimination.
    fn leibniz(n: usize, m: &dyn Fn(usize, usize) -> f64) -> f64 {
        fn perms(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    perms(k, used, cur, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut all = Vec::new();
        perms(n, &mut vec![false; n], &mut Vec::new(), &mut all);
        all.iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                sign * (0..n).map(|i| m(i, p[i])).product::<f64>()
            })
            .sum()
    }

    #[test]
    fn matches_leibniz_expansion() {
        let m = |i: usize, j: usize| ((i * 7 + j * 3) as f64 * 0.37).sin() + if i == j { 0.5 } else { 0.0 };
        for n in 1..=5 {
            let lu = determinant(n, m);
            let reference = leibniz(n, &m);
            assert!((lu - reference).abs() < 1e-12, "n={n}: {lu} vs {reference}");
        }
    }

    #[test]
    fn singular_and_permutation() {
        assert_eq!(determinant(2, |i, _| i as f64), 0.0);
        // anti-diagonal of order 3 is an odd permutation
        assert_eq!(determinant(3, |i, j| if i + j == 2 { 1.0 } else { 0.0 }), -1.0);
    }

    #[test]
    fn complex_vandermonde() {
        let t = [Complex64::new(0.3, 1.0), Complex64::new(-1.0, 0.2), Complex64::new(0.5, -0.5)];
        let det = determinant(3, |i, j| t[j].powi(i as i32));
        let expect = (t[1] - t[0]) * (t[2] - t[0]) * (t[2] - t[1]);
        assert!((det - expect).norm() < 1e-14);
    }

    #[test]
    fn double_double_matches_f64_on_benign_input() {
        let m = |i: usize, j: usize| 1.0 / (1.0 + i as f64 + j as f64);
        let d = determinant(4, |i, j| DoubleDouble::from_f64(1.0) / DoubleDouble::from_f64(1.0 + i as f64 + j as f64));
        let f = determinant(4, m);
        // Hilbert determinant of order 4 is 1/6048000
        assert!((d.mul_f64(6048000.0) - DoubleDouble::ONE).to_f64().abs() < 1e-28);
        assert!((f * 6048000.0 - 1.0).abs() < 1e-9);
    }
}
