use rayon::prelude::*;

use super::{boltzmann_weight, SpectralConfig, VertexKind, WeightKind};
use crate::asmcount::{generate_asms_with_first_one, Asm};
use crate::error::{Error, Result};

pub const BRUTE_CAP_DEFAULT: usize = 6;
/// Largest order the state sum will ever enumerate.
pub const BRUTE_CAP_MAX: usize = 7;

struct WeightTable {
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: f64,
}

impl WeightTable {
    fn new(cfg: &SpectralConfig) -> Self {
        let (x, y, eta) = (cfg.x(), cfg.y(), cfg.eta());
        let n = cfg.order();
        let mut a = Vec::with_capacity(n * n);
        let mut b = Vec::with_capacity(n * n);
        for &xi in x {
            for &yj in y {
                a.push(boltzmann_weight(WeightKind::A, xi, yj, eta));
                b.push(boltzmann_weight(WeightKind::B, xi, yj, eta));
            }
        }
        WeightTable {
            n,
            a,
            b,
            c: boltzmann_weight(WeightKind::C, 0.0, 0.0, eta),
        }
    }

    fn state(&self, m: &Asm) -> f64 {
        let n = self.n;
        let mut col = vec![0u8; n];
        let mut w = 1.0;
        for i in 0..n {
            let mut h = 0u8;
            for j in 0..n {
                let kind = VertexKind::from_state(h, col[j], m.get(i, j)).expect("valid ASM");
                w *= match kind.weight_kind() {
                    WeightKind::A => self.a[i * n + j],
                    WeightKind::B => self.b[i * n + j],
                    WeightKind::C => self.c,
                };
                let (_, r, _, bottom) = kind.edges();
                h = r;
                col[j] = bottom;
            }
        }
        w
    }
}

/// Weight of the lattice state encoded by `m`; vertex `(i, j)` uses `(x_i, y_j)`.
pub fn state_weight(cfg: &SpectralConfig, m: &Asm) -> Result<f64> {
    if m.order() != cfg.order() {
        return Err(Error::InvalidConfig(format!(
            "matrix of order {} against configuration of order {}",
            m.order(),
            cfg.order()
        )));
    }
    Ok(WeightTable::new(cfg).state(m))
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        len => pairwise_sum(&v[..len / 2]) + pairwise_sum(&v[len / 2..]),
    }
}

/// State sum over all ASMs of the configuration's order.
///
/// The enumeration is split by the first row's one, each branch summed in
/// stream order, and the branch totals combined pairwise, so the result does
/// not depend on the thread count.
pub fn partition_bruteforce(cfg: &SpectralConfig, cap: usize) -> Result<f64> {
    let cap = cap.min(BRUTE_CAP_MAX);
    let n = cfg.order();
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, cap });
    }
    let table = WeightTable::new(cfg);
    let branches = (0..n)
        .into_par_iter()
        .map(|k| {
            let stream = generate_asms_with_first_one(n, k, cap)?;
            Ok(stream.map(|m| table.state(&m)).sum::<f64>())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&branches))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icemodel::ETA_COMBINATORIAL;

    #[test]
    fn order_one_is_c_weight() {
        let cfg = SpectralConfig::new(1.3, vec![0.2, -0.1]).unwrap();
        assert!((partition_bruteforce(&cfg, 6).unwrap() - 1.3f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_order_two() {
        let cfg = SpectralConfig::homogeneous(2, ETA_COMBINATORIAL).unwrap();
        assert!((partition_bruteforce(&cfg, 6).unwrap() - 1.125).abs() < 1e-14);
    }

    #[test]
    fn order_two_by_hand() {
        // identity carries b on its off-diagonal, the anti-identity a on its diagonal
        let (x, y, eta) = ([0.1, -0.2], [0.05, 0.3], 0.9);
        let cfg = SpectralConfig::from_xy(eta, &x, &y).unwrap();
        let a = |i: usize, j: usize| boltzmann_weight(WeightKind::A, x[i], y[j], eta);
        let b = |i: usize, j: usize| boltzmann_weight(WeightKind::B, x[i], y[j], eta);
        let c = eta.sin();
        let expect = c * c * (b(0, 1) * b(1, 0) + a(0, 0) * a(1, 1));
        let got = partition_bruteforce(&cfg, 6).unwrap();
        assert!((got - expect).abs() < 1e-15, "{got} vs {expect}");
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SpectralConfig::homogeneous(7, 1.0).unwrap();
        assert!(matches!(
            partition_bruteforce(&cfg, 6),
            Err(Error::OrderTooLarge { order: 7, cap: 6 })
        ));
        let cfg = SpectralConfig::homogeneous(8, 1.0).unwrap();
        assert!(matches!(
            partition_bruteforce(&cfg, 8),
            Err(Error::OrderTooLarge { order: 8, cap: 7 })
        ));
    }
}
