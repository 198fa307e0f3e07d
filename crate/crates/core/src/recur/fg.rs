use std::f64::consts::PI;

use num_complex::Complex64;

use super::fourier::{f_poly, g_poly, trig_value};
use crate::error::{Error, Result};
use crate::exactnum::LaurentPoly;
use crate::icemodel::Family;

/// `f_n` and `g_n` for one choice of the fixed parameters `u_1..u_{2n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FgInputs {
    pub f: LaurentPoly<Complex64>,
    pub g: LaurentPoly<Complex64>,
}

impl FgInputs {
    /// Scales the largest coefficient of `g` by `1 + rel`.
    pub fn perturb_g(&mut self, rel: f64) {
        let (k, c) = self
            .g
            .terms()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(k, c)| (k, *c))
            .expect("g_n is not identically zero");
        self.g = &self.g + &LaurentPoly::from_terms_unpruned([(k, c * rel)]);
    }
}

pub fn fg_inputs(rest: &[f64], eta: f64) -> Result<FgInputs> {
    Ok(FgInputs {
        f: f_poly(rest, eta)?,
        g: g_poly(rest, eta)?,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FgReport {
    pub n: usize,
    /// Fitted multiplier and max relative residual for `f_{n+1}`.
    pub constant_f: Complex64,
    pub residual_f: f64,
    /// The same for `g_{n+1}`, with the roles of `f` and `g` exchanged.
    pub constant_g: Complex64,
    pub residual_g: f64,
    pub samples: usize,
}

impl FgReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_f.max(self.residual_g)
    }
}

/// `det [[cos3w·p(w)], [sin3w·p(w)], [q(w)]]` over the columns
/// `w = u, u_{2n}, u_{2n+1}`.
fn three_column(p: &LaurentPoly<Complex64>, q: &LaurentPoly<Complex64>, w: [f64; 3]) -> Complex64 {
    let col = |x: f64| {
        let pv = p.eval_at(x);
        [(3.0 * x).cos() * pv, (3.0 * x).sin() * pv, q.eval_at(x)]
    };
    let [c0, c1, c2] = w.map(col);
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

/// Least-squares multiplier `c` with `target ≈ c·model`, and the max residual
/// relative to the largest target value.
fn fit(target: &[f64], model: &[Complex64]) -> Result<(Complex64, f64)> {
    let scale = target.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let norm: f64 = model.iter().map(|m| m.norm_sqr()).sum();
    if scale < 1e-300 || norm < 1e-300 {
        return Err(Error::DegenerateFit);
    }
    let c: Complex64 = model.iter().zip(target).map(|(m, &t)| m.conj() * t).sum::<Complex64>() / norm;
    let worst = model
        .iter()
        .zip(target)
        .map(|(&m, &t)| (c * m - t).norm())
        .fold(0.0, f64::max);
    Ok((c, worst / scale))
}

/// Test points for the free variable, kept away from the fixed parameters.
fn probe_points(fixed: &[f64], count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count {
        let u = 0.37 + k as f64 * 2.0 * PI / (count as f64 + 1.0) + 0.011 * k as f64;
        if fixed.iter().all(|&x| (u - x).sin().abs() > 1e-3) {
            out.push(u);
        }
        k += 1;
    }
    out
}

/// Checks `f_{n+1} ∝ det(...)` and its `f ↔ g` partner using the given
/// `f_n`, `g_n`; `fixed` holds `u_1..u_{2n+1}`.
pub fn check_fg_recurrence_from(
    inputs: &FgInputs,
    fixed: &[f64],
    eta: f64,
    samples: usize,
) -> Result<FgReport> {
    if fixed.len() < 3 || fixed.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "need 2n+1 fixed parameters, got {}",
            fixed.len()
        )));
    }
    let n = (fixed.len() - 1) / 2;
    let (a, b) = (fixed[2 * n - 1], fixed[2 * n]);
    let points = probe_points(fixed, samples.max(12));
    let mut f_next = Vec::new();
    let mut g_next = Vec::new();
    let mut det_f = Vec::new();
    let mut det_g = Vec::new();
    for &u in &points {
        f_next.push(trig_value(Family::Z, u, fixed, eta)?);
        g_next.push(trig_value(Family::V, u, fixed, eta)?);
        det_f.push(three_column(&inputs.f, &inputs.g, [u, a, b]));
        det_g.push(three_column(&inputs.g, &inputs.f, [u, a, b]));
    }
    let (constant_f, residual_f) = fit(&f_next, &det_f)?;
    let (constant_g, residual_g) = fit(&g_next, &det_g)?;
    Ok(FgReport {
        n,
        constant_f,
        residual_f,
        constant_g,
        residual_g,
        samples: points.len(),
    })
}

/// [`check_fg_recurrence_from`] with `f_n`, `g_n` reconstructed from
/// `u_1..u_{2n-1}`.
pub fn check_fg_recurrence(fixed: &[f64], eta: f64, samples: usize) -> Result<FgReport> {
    if fixed.len() < 3 || fixed.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "need 2n+1 fixed parameters, got {}",
            fixed.len()
        )));
    }
    let inputs = fg_inputs(&fixed[..fixed.len() - 2], eta)?;
    check_fg_recurrence_from(&inputs, fixed, eta, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icemodel::ETA_COMBINATORIAL;

    #[test]
    fn holds_for_small_orders() {
        let fixed = [0.21, -0.33, 0.05, 0.38, -0.12, 0.29, -0.04];
        for n in 1..=3 {
            let r = check_fg_recurrence(&fixed[..2 * n + 1], ETA_COMBINATORIAL, 12).unwrap();
            assert!(r.max_residual() < 1e-8, "n={n}: {r:?}");
        }
    }

    #[test]
    fn perturbed_input_fails() {
        let fixed = [0.21, -0.33, 0.05, 0.38, -0.12];
        let mut inputs = fg_inputs(&fixed[..3], ETA_COMBINATORIAL).unwrap();
        inputs.perturb_g(0.01);
        let r = check_fg_recurrence_from(&inputs, &fixed, ETA_COMBINATORIAL, 12).unwrap();
        assert!(r.residual_f > 1e-3, "{r:?}");
    }

    #[test]
    fn degenerate_fit() {
        assert_eq!(fit(&[0.0, 0.0], &[Complex64::new(1.0, 0.0); 2]), Err(Error::DegenerateFit));
    }
}
