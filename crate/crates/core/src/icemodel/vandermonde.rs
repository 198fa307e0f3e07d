use num_complex::Complex64;

use super::SpectralConfig;
use crate::error::{Error, Result};
use crate::linalg::determinant;

const DEGENERATE: f64 = 1e-14;

/// Exponents `3n − 2k`, `1 <= k <= 3n−1`, `k` not a multiple of 3, in
/// descending order.
pub fn p_exponents(n: usize) -> Vec<i32> {
    let n = n as i32;
    (1..3 * n).filter(|k| k % 3 != 0).map(|k| 3 * n - 2 * k).collect()
}

/// Exponents `3n − 2k + 1`, `1 <= k <= 3n`, `k ≢ 2 (mod 3)`, descending.
pub fn r_exponents(n: usize) -> Vec<i32> {
    let n = n as i32;
    (1..=3 * n).filter(|k| k % 3 != 2).map(|k| 3 * n - 2 * k + 1).collect()
}

/// `det[t_j^e] / Π_{j<j'} sin(u_j − u_j')` with rows running over
/// `exponents`, rotated by `(−i)^n` onto the real axis.
fn power_determinant(cfg: &SpectralConfig, exponents: &[i32], tol: f64) -> Result<f64> {
    let u = cfg.u();
    let m = u.len();
    debug_assert_eq!(exponents.len(), m);
    let mut denominator = 1.0;
    for j in 0..m {
        for k in j + 1..m {
            let d = (u[j] - u[k]).sin();
            if d.abs() < DEGENERATE {
                return Err(Error::SingularConfiguration(format!(
                    "u_{j} and u_{k} coincide modulo π"
                )));
            }
            denominator *= d;
        }
    }
    let det = determinant(m, |r, j| Complex64::from_polar(1.0, exponents[r] as f64 * u[j]));
    let phase = Complex64::new(0.0, -1.0).powu(cfg.order() as u32);
    let value = det * phase / denominator;
    if value.im.abs() > tol * value.norm().max(f64::MIN_POSITIVE) {
        return Err(Error::NonRealResult {
            real: value.re,
            imag: value.im,
        });
    }
    Ok(value.re)
}

/// `Z_n` up to its constant factor, from the power determinant `P`.
pub fn vandermonde_z(cfg: &SpectralConfig, tol: f64) -> Result<f64> {
    power_determinant(cfg, &p_exponents(cfg.order()), tol)
}

/// `V_n` up to its constant factor, from the power determinant `R`.
pub fn vandermonde_v(cfg: &SpectralConfig, tol: f64) -> Result<f64> {
    power_determinant(cfg, &r_exponents(cfg.order()), tol)
}
