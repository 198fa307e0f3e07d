use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::icemodel::{evaluate, Family, SpectralConfig, ETA_COMBINATORIAL};

const PROBE_GUARD: f64 = 1e-6;

fn order_of(rest: &[f64]) -> Result<usize> {
    if rest.is_empty() || rest.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "need 2n-1 fixed parameters, got {}",
            rest.len()
        )));
    }
    Ok(rest.len().div_ceil(2))
}

fn value_at(family: Family, u0: f64, rest: &[f64]) -> Result<f64> {
    evaluate(&SpectralConfig::with_rest(ETA_COMBINATORIAL, u0, rest)?, family)
}

/// `S_n(u_1..u_{2n-1})` from the probe form at the point `a`; the value does
/// not depend on `a`.
pub fn s_function(rest: &[f64], a: f64) -> Result<f64> {
    let n = order_of(rest)?;
    let weights: f64 = rest.iter().map(|&u| (PI / 3.0 + a - u).sin()).product();
    let row_params = &rest[..n - 1];
    let shifted = a + 2.0 * PI / 3.0;
    let near_row = |p: f64| row_params.iter().any(|&x| (p - x).sin().abs() < PROBE_GUARD);
    if weights.abs() < PROBE_GUARD || near_row(a) || near_row(shifted) {
        return Err(Error::ProbePole(a));
    }
    let eval = |family, p| {
        value_at(family, p, rest).map_err(|e| match e {
            Error::SingularConfiguration(_) | Error::PoleInEntries(_) => Error::ProbePole(a),
            other => other,
        })
    };
    let bracket = eval(Family::V, a)? * eval(Family::Z, shifted)?
        - eval(Family::Z, a)? * eval(Family::V, shifted)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * 16.0 / 3.0 * bracket / weights)
}

/// `S_n` from the closed form at `a = u_{2n-1}`, with `Z_0 = V_0 = 1`.
pub fn s_function_alt(rest: &[f64]) -> Result<f64> {
    let n = order_of(rest)?;
    let last = rest[2 * n - 2];
    let (z_prev, v_prev) = if n == 1 {
        (1.0, 1.0)
    } else {
        let cfg = SpectralConfig::new(ETA_COMBINATORIAL, rest[..2 * n - 2].to_vec())?;
        (evaluate(&cfg, Family::Z)?, evaluate(&cfg, Family::V)?)
    };
    Ok(16.0 / 3.0 * (value_at(Family::V, last, rest)? * z_prev + value_at(Family::Z, last, rest)? * v_prev))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_value() {
        let s = s_function_alt(&[0.3]).unwrap();
        assert!((s - 8.0 * 3f64.sqrt()).abs() < 1e-12);
        let p = s_function(&[0.3], 0.9).unwrap();
        assert!((p - s).abs() < 1e-12 * s.abs());
    }

    #[test]
    fn probe_independence_and_agreement() {
        let rest = [0.12, -0.31, 0.27, 0.05, -0.18];
        for n in 2..=3 {
            let r = &rest[..2 * n - 1];
            let alt = s_function_alt(r).unwrap();
            for a in [0.7, 1.9, -1.1] {
                let s = s_function(r, a).unwrap();
                assert!((s - alt).abs() < 1e-8 * alt.abs(), "n={n}, a={a}: {s} vs {alt}");
            }
        }
    }

    #[test]
    fn pole_probe() {
        let rest = [0.12, -0.31, 0.27];
        assert_eq!(s_function(&rest, 0.12 - PI / 3.0), Err(Error::ProbePole(0.12 - PI / 3.0)));
    }
}
