use super::{Family, SpectralConfig};
use crate::error::{Error, Result};
use crate::exactnum::DoubleDouble;
use crate::linalg::{determinant, Scalar};

/// Below this magnitude a sine in a denominator is treated as zero.
const DEGENERATE: f64 = 1e-14;

/// Default spread of the perturbed homogeneous point.
pub const HOMOGENEOUS_SPREAD: f64 = 1e-3;

trait Real: Scalar + From<f64> {
    fn sin(self) -> Self;
    fn approx(self) -> f64;
}

impl Real for DoubleDouble {
    fn sin(self) -> Self {
        DoubleDouble::sin(self)
    }
    fn approx(self) -> f64 {
        self.to_f64()
    }
}

fn determinant_form<T: Real>(cfg: &SpectralConfig, family: Family) -> Result<T> {
    let n = cfg.order();
    let eta = T::from(cfg.eta());
    let half = T::from(cfg.eta() / 2.0);
    let x: Vec<T> = cfg.x().iter().map(|&v| T::from(v)).collect();
    let y: Vec<T> = cfg.y().iter().map(|&v| T::from(v)).collect();

    let mut a = Vec::with_capacity(n * n);
    let mut b = Vec::with_capacity(n * n);
    let mut prefactor = T::one();
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            let d = xi - yj;
            let (wa, wb) = ((half + d).sin(), (half - d).sin());
            if wa.approx().abs() < DEGENERATE || wb.approx().abs() < DEGENERATE {
                return Err(Error::PoleInEntries(format!("weight vanishes at row {i}, column {j}")));
            }
            prefactor = prefactor * wa * wb;
            a.push(wa);
            b.push(wb);
        }
    }

    let mut denominator = T::one();
    for i in 0..n {
        for k in i + 1..n {
            let dx = (x[i] - x[k]).sin();
            let dy = (y[k] - y[i]).sin();
            if dx.approx().abs() < DEGENERATE || dy.approx().abs() < DEGENERATE {
                return Err(Error::SingularConfiguration(format!(
                    "coincident parameters among rows or columns {i} and {k}"
                )));
            }
            denominator = denominator * dx * dy;
        }
    }

    let sin_eta = eta.sin();
    let det = determinant(n, |i, j| {
        let (wa, wb) = (a[i * n + j], b[i * n + j]);
        match family {
            Family::Z => sin_eta / (wa * wb),
            Family::V => T::one() / wa + T::one() / wb,
        }
    });
    Ok(prefactor * det / denominator)
}

/// `Z_n` from the Izergin-Korepin determinant.
///
/// Entries and elimination are carried in double-double; only the result is
/// rounded.
pub fn ik_determinant(cfg: &SpectralConfig) -> Result<f64> {
    evaluate(cfg, Family::Z)
}

/// `V_n`, the same construction with entries `1/a + 1/b`.
pub fn kuperberg_companion(cfg: &SpectralConfig) -> Result<f64> {
    evaluate(cfg, Family::V)
}

pub fn evaluate(cfg: &SpectralConfig, family: Family) -> Result<f64> {
    determinant_form::<DoubleDouble>(cfg, family).map(DoubleDouble::to_f64)
}

/// [`ik_determinant`] carried out in double-double arithmetic.
pub fn ik_determinant_dd(cfg: &SpectralConfig) -> Result<DoubleDouble> {
    determinant_form(cfg, Family::Z)
}

pub fn kuperberg_companion_dd(cfg: &SpectralConfig) -> Result<DoubleDouble> {
    determinant_form(cfg, Family::V)
}

pub fn evaluate_dd(cfg: &SpectralConfig, family: Family) -> Result<DoubleDouble> {
    determinant_form(cfg, family)
}

/// Value at `u_0 = ... = u_{2n-1} = 0`, approached through distinct points.
///
/// The parameters are placed at `spread * (j - (2n-1)/2)`. The point set is
/// symmetric under negation, so at `η = 2π/3`, where both functions are
/// symmetric in all arguments, the value is even in `spread` and one
/// Richardson step removes the quadratic term. Cancellation in the
/// determinant grows like `spread^(2-2n)`, hence double-double throughout.
pub fn homogeneous_limit(n: usize, eta: f64, family: Family, spread: f64) -> Result<f64> {
    let at = |eps: f64| -> Result<DoubleDouble> {
        let u = (0..2 * n).map(|j| eps * (j as f64 - (2 * n - 1) as f64 / 2.0)).collect();
        evaluate_dd(&SpectralConfig::new(eta, u)?, family)
    };
    let coarse = at(spread)?;
    let fine = at(spread / 2.0)?;
    Ok(((fine.mul_f64(4.0) - coarse) / DoubleDouble::from_f64(3.0)).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icemodel::{partition_bruteforce, ETA_COMBINATORIAL};

    #[test]
    fn order_one() {
        let cfg = SpectralConfig::new(1.2, vec![0.3, -0.25]).unwrap();
        assert!((ik_determinant(&cfg).unwrap() - 1.2f64.sin()).abs() < 1e-15);
        let v1 = 2.0 * 0.6f64.sin() * 0.55f64.cos();
        assert!((kuperberg_companion(&cfg).unwrap() - v1).abs() < 1e-15);
    }

    #[test]
    fn matches_state_sum_at_generic_eta() {
        let cfg = SpectralConfig::from_xy(1.1, &[0.1, -0.3, 0.25], &[0.05, 0.35, -0.2]).unwrap();
        let det = ik_determinant(&cfg).unwrap();
        let sum = partition_bruteforce(&cfg, 6).unwrap();
        assert!((det - sum).abs() < 1e-12 * sum.abs(), "{det} vs {sum}");
        let dd = ik_determinant_dd(&cfg).unwrap().to_f64();
        assert!((dd - sum).abs() < 1e-12 * sum.abs());
    }

    #[test]
    fn degenerate_inputs() {
        let cfg = SpectralConfig::from_xy(1.0, &[0.1, 0.1], &[0.2, 0.3]).unwrap();
        assert!(matches!(ik_determinant(&cfg), Err(Error::SingularConfiguration(_))));
        let cfg = SpectralConfig::from_xy(1.0, &[0.1, 0.7], &[0.2, 0.3]).unwrap();
        assert!(matches!(ik_determinant(&cfg), Err(Error::PoleInEntries(_))));
    }

    #[test]
    fn homogeneous_values() {
        let root = 3f64.sqrt() / 2.0;
        let z2 = homogeneous_limit(2, ETA_COMBINATORIAL, Family::Z, HOMOGENEOUS_SPREAD).unwrap();
        assert!((z2 - 1.125).abs() < 1e-9);
        let v2 = homogeneous_limit(2, ETA_COMBINATORIAL, Family::V, HOMOGENEOUS_SPREAD).unwrap();
        assert!((v2 - 2.8125).abs() < 1e-9, "{v2}");
        let z4 = homogeneous_limit(4, ETA_COMBINATORIAL, Family::Z, HOMOGENEOUS_SPREAD).unwrap();
        let expect = root.powi(16) * 42.0;
        assert!((z4 - expect).abs() < 1e-6 * expect, "{z4} vs {expect}");
    }
}
