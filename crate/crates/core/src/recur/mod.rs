//! Recurrences in the order `n` at the combinatorial point `η = 2π/3`.
//!
//! Two layers: sampled functions of the spectral parameters (`f_n`, `g_n`,
//! the three-column determinant relations, `S_n`), and the normalized
//! one-variable functions `z_n(u)`, `v_n(u)` obtained when every parameter
//! but the first is zero.

mod fg;
mod fourier;
mod homogeneous;
mod normalized;
mod sfun;

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::exactnum::LaurentPoly;
use crate::icemodel::{p_exponents, r_exponents, Family};

pub use fg::{check_fg_recurrence, check_fg_recurrence_from, fg_inputs, FgInputs, FgReport};
pub use fourier::{f_poly, g_poly, trig_poly, SAMPLE_OFFSET};
pub use homogeneous::{check_homogeneous_recurrence, HomogeneousReport, TotalCounts};
pub use normalized::{
    iterate_zv, refined_poly, refined_ratios_from_z, z_from_refined, zv_from_refined,
    zv_product_check, ZVPair,
};
pub use sfun::{s_function, s_function_alt};

/// Allowed Fourier exponents of `f_n` or `g_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSupportSpec {
    n: usize,
    family: Family,
    exponents: BTreeSet<i32>,
}

impl FourierSupportSpec {
    pub fn new(n: usize, family: Family) -> Self {
        let list = match family {
            Family::Z => p_exponents(n),
            Family::V => r_exponents(n),
        };
        let exponents: BTreeSet<i32> = list.into_iter().collect();
        assert_eq!(exponents.len(), 2 * n);
        FourierSupportSpec { n, family, exponents }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn exponents(&self) -> &BTreeSet<i32> {
        &self.exponents
    }

    pub fn contains(&self, k: i32) -> bool {
        self.exponents.contains(&k)
    }

    /// Largest coefficient of `p` outside the support, relative to the
    /// largest coefficient overall.
    pub fn excluded_ratio(&self, p: &LaurentPoly<Complex64>) -> f64 {
        let outside = p
            .terms()
            .filter(|(k, _)| !self.contains(*k))
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max);
        outside / p.max_magnitude().max(f64::MIN_POSITIVE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supports() {
        let f3 = FourierSupportSpec::new(3, Family::Z);
        assert_eq!(f3.exponents().iter().copied().collect::<Vec<_>>(), vec![-7, -5, -1, 1, 5, 7]);
        assert!(!f3.contains(3) && !f3.contains(-3));
        let g2 = FourierSupportSpec::new(2, Family::V);
        assert_eq!(g2.exponents().iter().copied().collect::<Vec<_>>(), vec![-5, -1, 1, 5]);
    }
}
