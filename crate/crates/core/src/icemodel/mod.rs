//! Six-vertex model with domain wall boundary conditions.
//!
//! Spectral parameters are stored as the union `u_0, ..., u_{2n-1}`: the
//! first `n` entries are the row parameters `x_1..x_n` and the last `n` the
//! column parameters `y_1..y_n`.

mod brute;
mod det;
mod sample;
mod vandermonde;
mod vertex;

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub use brute::{partition_bruteforce, state_weight, BRUTE_CAP_DEFAULT, BRUTE_CAP_MAX};
pub use det::{
    evaluate, evaluate_dd, homogeneous_limit, ik_determinant, ik_determinant_dd,
    kuperberg_companion, kuperberg_companion_dd, HOMOGENEOUS_SPREAD,
};
pub use sample::ConfigSampler;
pub use vandermonde::{p_exponents, r_exponents, vandermonde_v, vandermonde_z};
pub use vertex::{asm_to_vertex_grid, VertexGrid, VertexKind};

/// The combinatorial point `η = 2π/3`.
pub const ETA_COMBINATORIAL: f64 = 2.0 * PI / 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    A,
    B,
    C,
}

pub fn boltzmann_weight(kind: WeightKind, x: f64, y: f64, eta: f64) -> f64 {
    match kind {
        WeightKind::A => (eta / 2.0 + x - y).sin(),
        WeightKind::B => (eta / 2.0 - x + y).sin(),
        WeightKind::C => eta.sin(),
    }
}

/// Which of the two determinant families to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// The domain-wall state sum `Z_n`.
    Z,
    /// Its companion `V_n`.
    V,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralConfig {
    eta: f64,
    u: Vec<f64>,
}

impl SpectralConfig {
    pub fn new(eta: f64, u: Vec<f64>) -> Result<Self> {
        if u.len() < 2 || u.len() % 2 == 1 {
            return Err(Error::InvalidConfig(format!(
                "need an even number (>= 2) of spectral parameters, got {}",
                u.len()
            )));
        }
        if !eta.is_finite() || u.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        Ok(SpectralConfig { eta, u })
    }

    pub fn from_xy(eta: f64, x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidConfig(format!(
                "{} row parameters but {} column parameters",
                x.len(),
                y.len()
            )));
        }
        Self::new(eta, x.iter().chain(y).copied().collect())
    }

    /// All parameters at `u = 0`; the determinant forms are singular there.
    pub fn homogeneous(n: usize, eta: f64) -> Result<Self> {
        Self::new(eta, vec![0.0; 2 * n])
    }

    pub fn order(&self) -> usize {
        self.u.len() / 2
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// `x_1..x_n`
    pub fn x(&self) -> &[f64] {
        &self.u[..self.order()]
    }

    /// `y_1..y_n`
    pub fn y(&self) -> &[f64] {
        &self.u[self.order()..]
    }

    /// Same configuration with the first argument `u_0` replaced.
    pub fn with_first(&self, u0: f64) -> Self {
        let mut u = self.u.clone();
        u[0] = u0;
        SpectralConfig { eta: self.eta, u }
    }

    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut u = self.u.clone();
        u.swap(i, j);
        SpectralConfig { eta: self.eta, u }
    }

    /// Configuration `(u0, rest...)`; `rest` must have odd length.
    pub fn with_rest(eta: f64, u0: f64, rest: &[f64]) -> Result<Self> {
        let mut u = Vec::with_capacity(rest.len() + 1);
        u.push(u0);
        u.extend_from_slice(rest);
        Self::new(eta, u)
    }
}
