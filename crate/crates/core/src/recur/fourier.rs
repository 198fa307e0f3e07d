use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;
use crate::icemodel::{evaluate, Family, SpectralConfig};

/// Phase of the first sample point.
pub const SAMPLE_OFFSET: f64 = 0.123;

const RESAMPLE_STEP: f64 = 0.0731;
const RESAMPLE_ATTEMPTS: usize = 4;
/// Samples closer than this to a row parameter (mod π) count as poles.
const NEAR_POLE: f64 = 1e-6;

/// `Z_n(u)` or `V_n(u)` times `Π sin(u − u_i)`, i.e. `f_n(u)` or `g_n(u)`.
pub(crate) fn trig_value(family: Family, u: f64, rest: &[f64], eta: f64) -> Result<f64> {
    let n = rest.len().div_ceil(2);
    // u replaces x_1; the other row parameters are rest[..n-1]
    if rest[..n - 1].iter().any(|&x| (u - x).sin().abs() < NEAR_POLE) {
        return Err(Error::SamplingSingularity(u));
    }
    let cfg = SpectralConfig::with_rest(eta, u, rest)?;
    let value = evaluate(&cfg, family).map_err(|e| match e {
        Error::SingularConfiguration(_) | Error::PoleInEntries(_) => Error::SamplingSingularity(u),
        other => other,
    })?;
    Ok(value * rest.iter().map(|&r| (u - r).sin()).product::<f64>())
}

/// Reconstructs `f_n` (family `Z`) or `g_n` (family `V`) as a Laurent
/// polynomial in `s = e^{iu}` from `8n` equispaced samples.
///
/// All `8n` recovered modes are kept, including the ones that should vanish,
/// so the support can be inspected afterwards.
pub fn trig_poly(family: Family, rest: &[f64], eta: f64) -> Result<LaurentPoly<Complex64>> {
    if rest.is_empty() || rest.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "need 2n-1 fixed parameters, got {}",
            rest.len()
        )));
    }
    let n = rest.len().div_ceil(2);
    let m = 8 * n;
    let mut last = Error::SamplingSingularity(SAMPLE_OFFSET);
    'attempt: for attempt in 0..RESAMPLE_ATTEMPTS {
        let offset = SAMPLE_OFFSET + attempt as f64 * RESAMPLE_STEP;
        let mut samples = Vec::with_capacity(m);
        for k in 0..m {
            let u = offset + 2.0 * PI * k as f64 / m as f64;
            match trig_value(family, u, rest, eta) {
                Ok(v) => samples.push((u, v)),
                Err(e @ Error::SamplingSingularity(_)) => {
                    last = e;
                    continue 'attempt;
                }
                Err(e) => return Err(e),
            }
        }
        let half = (m / 2) as i32;
        let terms = (1 - half..=half).map(|e| {
            let c: Complex64 = samples
                .iter()
                .map(|&(u, v)| Complex64::from_polar(v, -(e as f64) * u))
                .sum();
            (e, c / m as f64)
        });
        return Ok(LaurentPoly::from_terms_unpruned(terms));
    }
    Err(last)
}

/// `f_n(u) = Z_n(u) Π_{i=1}^{2n-1} sin(u − u_i)`
pub fn f_poly(rest: &[f64], eta: f64) -> Result<LaurentPoly<Complex64>> {
    trig_poly(Family::Z, rest, eta)
}

/// `g_n(u) = V_n(u) Π_{i=1}^{2n-1} sin(u − u_i)`
pub fn g_poly(rest: &[f64], eta: f64) -> Result<LaurentPoly<Complex64>> {
    trig_poly(Family::V, rest, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icemodel::ETA_COMBINATORIAL;
    use crate::recur::FourierSupportSpec;

    #[test]
    fn order_one() {
        let u1 = 0.27;
        let f = f_poly(&[u1], ETA_COMBINATORIAL).unwrap();
        // sin η sin(u − u1) has modes ±1 only
        let expect_plus = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, -u1) * 0.5
            * ETA_COMBINATORIAL.sin();
        assert!((f.coeff(1) - expect_plus).norm() < 1e-14);
        assert!(FourierSupportSpec::new(1, Family::Z).excluded_ratio(&f) < 1e-13);
        let g = g_poly(&[u1], ETA_COMBINATORIAL).unwrap();
        assert!(FourierSupportSpec::new(1, Family::V).excluded_ratio(&g) < 1e-13);
    }

    #[test]
    fn order_two_support_and_roots() {
        let rest = [0.11, -0.3, 0.37];
        let f = f_poly(&rest, ETA_COMBINATORIAL).unwrap();
        let g = g_poly(&rest, ETA_COMBINATORIAL).unwrap();
        assert!(FourierSupportSpec::new(2, Family::Z).excluded_ratio(&f) < 1e-9);
        assert!(FourierSupportSpec::new(2, Family::V).excluded_ratio(&g) < 1e-9);
        for &r in &rest {
            assert!(f.eval_at(r).norm() < 1e-9 * f.max_magnitude());
            assert!(g.eval_at(r).norm() < 1e-9 * g.max_magnitude());
        }
        // reconstruction reproduces direct values off the grid
        let direct = trig_value(Family::Z, 1.0, &rest, ETA_COMBINATORIAL).unwrap();
        assert!((f.eval_at(1.0).re - direct).abs() < 1e-12);
    }

    #[test]
    fn even_parameter_count_rejected() {
        assert!(f_poly(&[0.1, 0.2], ETA_COMBINATORIAL).is_err());
    }
}
