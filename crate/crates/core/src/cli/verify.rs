use std::f64::consts::PI;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::format::pretty;
use super::{CliError, Outcome, OutputFormat, Regime, RunConfig};
use crate::asmcount::{
    asm_total, brute_refined, ht_total, refined_asm_table, refined_ht_table, verify_ht_identity,
    SymmetryClass, DEFAULT_ASM_CAP, HT_BASE,
};
use crate::error::{Error, Result};
use crate::exactnum::{rat_to_f64, Coefficient, Cyclo};
use crate::icemodel::{
    homogeneous_limit, ik_determinant, kuperberg_companion, partition_bruteforce, vandermonde_v,
    vandermonde_z, ConfigSampler, Family, SpectralConfig, BRUTE_CAP_MAX, ETA_COMBINATORIAL,
    HOMOGENEOUS_SPREAD,
};
use crate::recur::{
    check_fg_recurrence, check_fg_recurrence_from, check_homogeneous_recurrence, f_poly,
    fg_inputs, g_poly, iterate_zv, refined_ratios_from_z, s_function, s_function_alt,
    z_from_refined, zv_product_check, FourierSupportSpec, TotalCounts,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Determinants,
    Fourier,
    Recurrences,
    Refined,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Determinants => "determinants",
            Suite::Fourier => "fourier",
            Suite::Recurrences => "recurrences",
            Suite::Refined => "refined",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Exceeds,
    #[serde(rename = "==")]
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub value: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Checks<'a> {
    suite: &'static str,
    cfg: &'a RunConfig,
    out: Vec<CheckRecord>,
}

impl<'a> Checks<'a> {
    fn push(&mut self, name: &'static str, order: Option<usize>, value: Result<f64>, relation: Relation, threshold: f64) {
        let (value, passed, detail) = match value {
            Ok(v) => {
                let passed = match relation {
                    Relation::AtMost => v <= threshold,
                    Relation::Exceeds => v > threshold,
                    Relation::Exact => v == 0.0,
                };
                (v, passed, None)
            }
            Err(e) => (f64::NAN, false, Some(e.to_string())),
        };
        self.out.push(CheckRecord {
            suite: self.suite,
            name,
            order,
            value,
            relation,
            threshold,
            passed,
            detail,
        });
    }

    /// Residual check whose threshold `--tol` may replace.
    fn at_most(&mut self, name: &'static str, order: usize, value: Result<f64>, default: f64) {
        let t = self.cfg.threshold(default);
        self.push(name, Some(order), value, Relation::AtMost, t);
    }

    /// Residual check with a threshold set by an approximation, not by
    /// rounding; `--tol` does not apply.
    fn at_most_fixed(&mut self, name: &'static str, order: usize, value: Result<f64>, threshold: f64) {
        self.push(name, Some(order), value, Relation::AtMost, threshold);
    }

    fn exceeds(&mut self, name: &'static str, order: usize, value: Result<f64>, threshold: f64) {
        self.push(name, Some(order), value, Relation::Exceeds, threshold);
    }

    /// Exact comparison; `Ok(false)` becomes a mismatch of 1.
    fn exact(&mut self, name: &'static str, order: Option<usize>, ok: Result<bool>) {
        self.push(name, order, ok.map(|b| if b { 0.0 } else { 1.0 }), Relation::Exact, 0.0);
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn weight_power(e: usize) -> f64 {
    (3f64.sqrt() / 2.0).powi(e as i32)
}

fn big_f64(n: &BigInt) -> f64 {
    rat_to_f64(&crate::exactnum::BigRat::from_integer(n.clone()))
}

fn orders(limit: Option<usize>, default: usize, hard: usize) -> std::ops::RangeInclusive<usize> {
    1..=limit.unwrap_or(default).min(hard)
}

// ---------------------------------------------------------------- determinants

fn oracle(n: usize, rng: &mut ChaCha8Rng, cap: usize) -> Result<f64> {
    let sampler = ConfigSampler::default();
    let mut worst = 0.0f64;
    for k in 0..20 {
        let eta = if k % 2 == 0 { ETA_COMBINATORIAL } else { rng.gen_range(0.6..2.4) };
        let cfg = sampler.config(n, eta, rng)?;
        worst = worst.max(rel(ik_determinant(&cfg)?, partition_bruteforce(&cfg, cap)?));
    }
    Ok(worst)
}

fn homogeneous_z(n: usize) -> Result<f64> {
    let z = homogeneous_limit(n, ETA_COMBINATORIAL, Family::Z, HOMOGENEOUS_SPREAD)?;
    Ok(rel(z, weight_power(n * n) * big_f64(&asm_total(n)?)))
}

fn homogeneous_zv(n: usize) -> Result<f64> {
    let z = homogeneous_limit(n, ETA_COMBINATORIAL, Family::Z, HOMOGENEOUS_SPREAD)?;
    let v = homogeneous_limit(n, ETA_COMBINATORIAL, Family::V, HOMOGENEOUS_SPREAD)?;
    Ok(rel(z * v, weight_power(2 * n * n) * big_f64(&ht_total(2 * n)?)))
}

/// Spread of `power form / determinant` over several configurations.
fn vandermonde_constancy(n: usize, family: Family, rng: &mut ChaCha8Rng, tol: f64) -> Result<f64> {
    let sampler = ConfigSampler::default();
    let mut ratios = Vec::new();
    for _ in 0..5 {
        let cfg = sampler.config(n, ETA_COMBINATORIAL, rng)?;
        ratios.push(match family {
            Family::Z => vandermonde_z(&cfg, tol)? / ik_determinant(&cfg)?,
            Family::V => vandermonde_v(&cfg, tol)? / kuperberg_companion(&cfg)?,
        });
    }
    Ok(ratios.iter().map(|r| rel(*r, ratios[0])).fold(0.0, f64::max))
}

fn symmetry(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let cfg = ConfigSampler::default().config(n, ETA_COMBINATORIAL, rng)?;
    let (z, v) = (ik_determinant(&cfg)?, kuperberg_companion(&cfg)?);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let i = rng.gen_range(0..2 * n);
        let j = (i + rng.gen_range(1..2 * n)) % (2 * n);
        let s = cfg.swapped(i, j);
        worst = worst.max(rel(ik_determinant(&s)?, z)).max(rel(kuperberg_companion(&s)?, v));
    }
    Ok(worst)
}

fn periodicity(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let cfg = ConfigSampler::default().config(n, ETA_COMBINATORIAL, rng)?;
    let shifted = cfg.with_first(cfg.u()[0] + PI);
    let sign_z = if n % 2 == 1 { 1.0 } else { -1.0 };
    let dz = rel(ik_determinant(&shifted)?, sign_z * ik_determinant(&cfg)?);
    let dv = rel(kuperberg_companion(&shifted)?, -sign_z * kuperberg_companion(&cfg)?);
    Ok(dz.max(dv))
}

/// `u_{2n+1} = u_{2n} − π/3` reduces order `n+1` to order `n`.
fn specialization(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut u = ConfigSampler::default().params(2 * n + 2, rng);
    u[2 * n + 1] = u[2 * n] - PI / 3.0;
    let big = SpectralConfig::new(ETA_COMBINATORIAL, u.clone())?;
    let small = SpectralConfig::new(ETA_COMBINATORIAL, u[..2 * n].to_vec())?;
    let factor: f64 = 3f64.sqrt() / 2.0
        * u[..2 * n].iter().map(|&ui| (PI / 3.0 + u[2 * n] - ui).sin()).product::<f64>();
    let dz = rel(ik_determinant(&big)?, factor * ik_determinant(&small)?);
    let dv = rel(kuperberg_companion(&big)?, factor * kuperberg_companion(&small)?);
    Ok(dz.max(dv))
}

/// The inversion relation with `y_{n+1} = x_{n+1} + shift`, checked by
/// enumeration since the determinant has a pole there.
fn inversion(n: usize, eta: f64, shift: f64, rng: &mut ChaCha8Rng, cap: usize) -> Result<f64> {
    let u = ConfigSampler::default().params(2 * n + 2, rng);
    let (x, y) = u.split_at(n + 1);
    let mut y = y.to_vec();
    y[n] = x[n] + shift;
    let lhs = partition_bruteforce(&SpectralConfig::from_xy(eta, x, &y)?, cap)?;
    let small = partition_bruteforce(&SpectralConfig::from_xy(eta, &x[..n], &y[..n])?, cap)?;
    let product: f64 = (0..n)
        .map(|i| (eta - x[n] + x[i]).sin() * (eta / 2.0 + x[n] - y[i]).sin())
        .product();
    Ok(rel(lhs, eta.sin() * small * product))
}

fn determinants(c: &mut Checks, n: Option<usize>) {
    let seed = c.cfg.seed;
    let cap = c.cfg.brute_cap.min(BRUTE_CAP_MAX);
    for k in orders(n, 5, cap) {
        c.at_most("oracle", k, oracle(k, &mut rng_for(seed, 100 + k as u64), cap), 1e-9);
    }
    for k in orders(n, 4, 4) {
        c.at_most_fixed("homogeneous-z", k, homogeneous_z(k), 1e-6);
    }
    for k in orders(n, 3, 3) {
        c.at_most_fixed("homogeneous-zv", k, homogeneous_zv(k), 1e-6);
    }
    for k in orders(n, 3, 4) {
        let t = c.cfg.threshold(1e-9);
        c.at_most("vandermonde-z", k, vandermonde_constancy(k, Family::Z, &mut rng_for(seed, 200 + k as u64), t), 1e-9);
        c.at_most("vandermonde-v", k, vandermonde_constancy(k, Family::V, &mut rng_for(seed, 300 + k as u64), t), 1e-9);
    }
    for k in orders(n, 4, 5) {
        c.at_most("symmetry", k, symmetry(k, &mut rng_for(seed, 400 + k as u64)), 1e-10);
    }
    for k in orders(n, 3, 5) {
        c.at_most("periodicity", k, periodicity(k, &mut rng_for(seed, 500 + k as u64)), 1e-10);
    }
    for k in orders(n, 3, 4) {
        c.at_most("specialization", k, specialization(k, &mut rng_for(seed, 600 + k as u64)), 1e-9);
    }
    for k in orders(n, 2, cap.saturating_sub(1).min(3)) {
        for (i, eta) in [ETA_COMBINATORIAL, 1.1].into_iter().enumerate() {
            let stream = 700 + 10 * k as u64 + i as u64;
            c.at_most("inversion", k, inversion(k, eta, -eta / 2.0, &mut rng_for(seed, stream), cap), 1e-9);
            c.exceeds("inversion-opposite-sign", k, inversion(k, eta, eta / 2.0, &mut rng_for(seed, stream), cap), 1e-3);
        }
    }
}

// ---------------------------------------------------------------- fourier

fn fourier(c: &mut Checks, n: Option<usize>) {
    let sampler = ConfigSampler::default();
    for k in orders(n, 4, 6) {
        let rest = sampler.params(2 * k - 1, &mut rng_for(c.cfg.seed, 800 + k as u64));
        for (name, roots, family) in [("f-support", "f-roots", Family::Z), ("g-support", "g-roots", Family::V)] {
            let poly = match family {
                Family::Z => f_poly(&rest, ETA_COMBINATORIAL),
                Family::V => g_poly(&rest, ETA_COMBINATORIAL),
            };
            let spec = FourierSupportSpec::new(k, family);
            c.at_most(name, k, poly.as_ref().map(|p| spec.excluded_ratio(p)).map_err(Clone::clone), 1e-9);
            let root_value = poly.map(|p| {
                rest.iter().map(|&r| p.eval_at(r).norm()).fold(0.0, f64::max) / p.max_magnitude()
            });
            c.at_most(roots, k, root_value, 1e-9);
        }
    }
}

// ---------------------------------------------------------------- recurrences

const S_PROBES: [f64; 5] = [0.7, 1.3, 1.9, 2.6, -1.1];

fn s_checks(n: usize, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let rest = ConfigSampler::default().params(2 * n - 1, rng);
    let alt = s_function_alt(&rest)?;
    let mut values = Vec::new();
    for a in S_PROBES {
        match s_function(&rest, a) {
            Ok(v) => values.push(v),
            Err(Error::ProbePole(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if values.len() < 2 {
        return Err(Error::ProbePole(S_PROBES[0]));
    }
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let min = values.iter().copied().fold(f64::MAX, f64::min);
    Ok(((max - min) / alt.abs(), rel(values[0], alt)))
}

fn zv_against_refined<C: Coefficient>(c: &mut Checks, upto: usize, tol: f64) {
    let pairs = match iterate_zv::<C>(upto, tol) {
        Ok(p) => p,
        Err(e) => {
            c.at_most("zv-step", upto, Err(e), tol);
            return;
        }
    };
    for p in &pairs {
        let z_diff = z_from_refined::<C>(p.n).map(|z| p.z.max_diff(&z));
        let ratio_diff = refined_ratios_from_z(&p.z, p.n, tol).and_then(|got| {
            let mut worst = 0.0f64;
            for (r, g) in got.into_iter().enumerate() {
                let want = C::from_rat(&crate::asmcount::refined_asm_ratio(p.n, r + 1)?);
                worst = worst.max((g - want).magnitude());
            }
            Ok(worst)
        });
        if C::EXACT {
            c.exact("zv-step", Some(p.n), z_diff.map(|d| d == 0.0));
            c.exact("ratios-read-back", Some(p.n), ratio_diff.map(|d| d == 0.0));
        } else {
            c.at_most("zv-step", p.n, z_diff, tol);
            c.at_most("ratios-read-back", p.n, ratio_diff, tol);
        }
    }
}

fn recurrences_in<C: Coefficient>(c: &mut Checks, n: Option<usize>) {
    let tol = c.cfg.threshold(1e-10);
    zv_against_refined::<C>(c, n.unwrap_or(10).clamp(1, 20), tol);
    let samples: Vec<f64> = (0..16).map(|k| -1.4 + 0.19 * k as f64).collect();
    for k in orders(n, 3, 8) {
        c.at_most("zv-product", k, zv_product_check::<C>(k, &samples, tol), 1e-10);
    }
    let totals = TotalCounts::closed_form(n.unwrap_or(3).clamp(3, 8) + 1);
    for k in orders(n, 3, 8) {
        let r = totals.clone().and_then(|t| check_homogeneous_recurrence::<C>(k, &t, tol));
        c.at_most("homogeneous-recurrence", k, r.map(|r| r.residual), 1e-10);
    }
    let corrupted = totals
        .map(|t| t.with_asm(4, BigInt::from(41)))
        .and_then(|t| check_homogeneous_recurrence::<C>(3, &t, tol));
    c.exceeds("homogeneous-recurrence-corrupted", 3, corrupted.map(|r| r.residual), 1e-3);
}

fn recurrences(c: &mut Checks, n: Option<usize>) {
    let seed = c.cfg.seed;
    let sampler = ConfigSampler::default();
    for k in orders(n, 3, 4) {
        let fixed = sampler.params(2 * k + 1, &mut rng_for(seed, 900 + k as u64));
        let r = check_fg_recurrence(&fixed, ETA_COMBINATORIAL, 16).map(|r| r.max_residual());
        c.at_most("fg-recurrence", k, r, 1e-8);
    }
    let fixed = sampler.params(5, &mut rng_for(seed, 902));
    let corrupted = fg_inputs(&fixed[..3], ETA_COMBINATORIAL).and_then(|mut inputs| {
        inputs.perturb_g(0.01);
        check_fg_recurrence_from(&inputs, &fixed, ETA_COMBINATORIAL, 16)
    });
    c.exceeds("fg-recurrence-perturbed", 2, corrupted.map(|r| r.residual_f), 1e-3);
    for k in orders(n, 3, 4) {
        let s = s_checks(k, &mut rng_for(seed, 1000 + k as u64));
        c.at_most("s-probe-spread", k, s.as_ref().map(|s| s.0).map_err(Clone::clone), 1e-8);
        c.at_most("s-forms-agree", k, s.map(|s| s.1), 1e-8);
    }
    match c.cfg.regime {
        Regime::Double => recurrences_in::<Complex64>(c, n),
        Regime::Exact => recurrences_in::<Cyclo>(c, n),
    }
}

// ---------------------------------------------------------------- refined

fn refined(c: &mut Checks, n: Option<usize>) {
    let cap = c.cfg.brute_cap;
    for k in orders(n, 6, cap.min(DEFAULT_ASM_CAP)) {
        let ok = brute_refined(k, SymmetryClass::Plain, cap)
            .and_then(|b| Ok(b == refined_asm_table(k)?));
        c.exact("plain-vs-closed", Some(k), ok);
    }
    let base = brute_refined(2, SymmetryClass::HalfTurn, 2)
        .map(|t| t.counts() == [BigInt::from(1), BigInt::from(1)] && t.total() == BigInt::from(HT_BASE));
    c.exact("half-turn-base", Some(2), base);
    let max_order = n.map_or(cap, |n| (2 * n).min(cap));
    for order in (4..=max_order).step_by(2) {
        let ok = brute_refined(order, SymmetryClass::HalfTurn, cap)
            .and_then(|b| Ok(b == refined_ht_table(order / 2)?));
        c.exact("half-turn-vs-closed", Some(order), ok);
    }
    let integral = (|| -> Result<bool> {
        for k in 1..=30 {
            let a = refined_asm_table(k)?;
            if !a.is_palindromic() || a.total() != asm_total(k)? {
                return Ok(false);
            }
            if k >= 2 {
                let h = refined_ht_table(k)?;
                if !h.is_palindromic() || h.total() != ht_total(2 * k)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    c.exact("integral-and-palindromic", Some(30), integral);
    for k in 2..=10 {
        c.exact("ht-identity", Some(k), verify_ht_identity(k).map(|r| r.holds()));
    }
}

/// Runs one suite (or all of them, in declaration order).
pub fn run_suite(suite: Suite, n: Option<usize>, cfg: &RunConfig) -> SuiteReport {
    let parts: &[Suite] = match suite {
        Suite::All => &[Suite::Determinants, Suite::Fourier, Suite::Recurrences, Suite::Refined],
        _ => std::slice::from_ref(&suite),
    };
    let mut checks = Vec::new();
    for &part in parts {
        let mut c = Checks {
            suite: part.name(),
            cfg,
            out: Vec::new(),
        };
        match part {
            Suite::Determinants => determinants(&mut c, n),
            Suite::Fourier => fourier(&mut c, n),
            Suite::Recurrences => recurrences(&mut c, n),
            Suite::Refined => refined(&mut c, n),
            Suite::All => unreachable!(),
        }
        checks.extend(c.out);
    }
    SuiteReport { suite, checks }
}

fn render_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let order = c.order.map(|n| format!(" n={n}")).unwrap_or_default();
        let rel = match c.relation {
            Relation::AtMost => "<=",
            Relation::Exceeds => ">",
            Relation::Exact => "==",
        };
        let line = match c.relation {
            Relation::Exact => format!(
                "{verdict} {}/{}{order} {}",
                c.suite,
                c.name,
                if c.passed { "exact match" } else { "mismatch" }
            ),
            _ => format!("{verdict} {}/{}{order} {:.3e} {rel} {:.1e}", c.suite, c.name, c.value, c.threshold),
        };
        s += &line;
        if let Some(d) = &c.detail {
            s += &format!(" ({d})");
        }
        s.push('\n');
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    s += &format!("{} checks, {failed} failed\n", report.checks.len());
    s
}

pub(crate) fn cmd_verify(suite: Suite, n: Option<usize>, cfg: &RunConfig) -> std::result::Result<Outcome, CliError> {
    if n == Some(0) {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let report = run_suite(suite, n, cfg);
    let text = match cfg.format {
        OutputFormat::Text => render_text(&report),
        OutputFormat::Json => pretty(&json!({
            "suite": suite.name(),
            "seed": cfg.seed,
            "regime": match cfg.regime { Regime::Double => "double", Regime::Exact => "exact" },
            "passed": report.passed(),
            "checks": report.checks,
        })),
        OutputFormat::Csv => {
            return Err(CliError::Usage("CSV output is only available for count tables".into()))
        }
    };
    Ok(Outcome {
        text,
        passed: report.passed(),
    })
}
