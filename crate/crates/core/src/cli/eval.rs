use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::format::{pretty, sig};
use super::{CliError, Outcome, OutputFormat, RunConfig};
use crate::icemodel::{
    ik_determinant, kuperberg_companion, partition_bruteforce, ConfigSampler, SpectralConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    #[value(name = "Z")]
    Z,
    #[value(name = "V")]
    V,
    #[value(name = "f")]
    F,
    #[value(name = "g")]
    G,
}

impl EvalTarget {
    fn name(self) -> &'static str {
        match self {
            EvalTarget::Z => "Z",
            EvalTarget::V => "V",
            EvalTarget::F => "f",
            EvalTarget::G => "g",
        }
    }
}

pub(crate) fn cmd_eval(
    what: EvalTarget,
    n: Option<usize>,
    eta: f64,
    u: Option<Vec<f64>>,
    bruteforce: bool,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let spectral = match u {
        Some(u) => {
            if let Some(n) = n {
                if u.len() != 2 * n {
                    return Err(CliError::Usage(format!(
                        "--n {n} needs {} values in --u, got {}",
                        2 * n,
                        u.len()
                    )));
                }
            }
            SpectralConfig::new(eta, u)?
        }
        None => {
            let n = n.unwrap_or(1);
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            ConfigSampler::default().config(n, eta, &mut rng)?
        }
    };
    let uses_v = matches!(what, EvalTarget::V | EvalTarget::G);
    if bruteforce && uses_v {
        return Err(CliError::Usage(format!("--bruteforce has no state sum for {}", what.name())));
    }
    let base = if bruteforce {
        partition_bruteforce(&spectral, cfg.brute_cap)?
    } else if uses_v {
        kuperberg_companion(&spectral)?
    } else {
        ik_determinant(&spectral)?
    };
    let value = match what {
        EvalTarget::Z | EvalTarget::V => base,
        EvalTarget::F | EvalTarget::G => {
            let u = spectral.u();
            base * u[1..].iter().map(|&ui| (u[0] - ui).sin()).product::<f64>()
        }
    };
    let text = match cfg.format {
        OutputFormat::Text => format!("{}\n", sig(value, 12)),
        OutputFormat::Json => pretty(&json!({
            "what": what.name(),
            "n": spectral.order(),
            "eta": spectral.eta(),
            "u": spectral.u(),
            "evaluator": if bruteforce { "state-sum" } else { "determinant" },
            "value": value,
        })),
        OutputFormat::Csv => {
            return Err(CliError::Usage("CSV output is only available for count tables".into()))
        }
    };
    Ok(Outcome { text, passed: true })
}
