use rand::Rng;

use super::SpectralConfig;
use crate::error::Result;

/// Draws admissible spectral parameters by rejection.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSampler {
    pub low: f64,
    pub high: f64,
    /// Minimum pairwise distance between parameters.
    pub min_separation: f64,
    /// Minimum magnitude of every sine that ends up in a denominator.
    pub min_denominator: f64,
}

impl Default for ConfigSampler {
    fn default() -> Self {
        ConfigSampler {
            low: -0.4,
            high: 0.4,
            min_separation: 1e-3,
            min_denominator: 1e-4,
        }
    }
}

impl ConfigSampler {
    fn separated(&self, u: &[f64]) -> bool {
        u.iter().enumerate().all(|(j, &a)| {
            u[j + 1..].iter().all(|&b| {
                (a - b).abs() >= self.min_separation && (a - b).sin().abs() >= self.min_denominator
            })
        })
    }

    /// `count` parameters, pairwise separated.
    pub fn params<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<f64> {
        loop {
            let u: Vec<f64> = (0..count).map(|_| rng.gen_range(self.low..=self.high)).collect();
            if self.separated(&u) {
                return u;
            }
        }
    }

    /// A configuration of order `n` whose weights also stay clear of zero,
    /// so every entry of the determinant matrices is finite.
    pub fn config<R: Rng + ?Sized>(&self, n: usize, eta: f64, rng: &mut R) -> Result<SpectralConfig> {
        loop {
            let cfg = SpectralConfig::new(eta, self.params(2 * n, rng))?;
            let clear = cfg.x().iter().all(|&x| {
                cfg.y().iter().all(|&y| {
                    (eta / 2.0 + x - y).sin().abs() >= self.min_denominator
                        && (eta / 2.0 - x + y).sin().abs() >= self.min_denominator
                })
            });
            if clear {
                return Ok(cfg);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_admissible_and_reproducible() {
        let s = ConfigSampler::default();
        let mut r1 = ChaCha8Rng::seed_from_u64(5);
        let mut r2 = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5 {
            let a = s.config(n, 2.0, &mut r1).unwrap();
            assert_eq!(a, s.config(n, 2.0, &mut r2).unwrap());
            assert!(a.u().iter().all(|v| (-0.4..=0.4).contains(v)));
            assert!(s.separated(a.u()));
        }
    }
}
