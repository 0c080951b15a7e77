//! Seeded property checks with a machine-readable report.

use std::f64::consts::TAU;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    bohr_path_integral, circle_path, group_closure_defect, isotropy_search, modulation_frequency,
    modulation_wavenumber, sample_times, track_front, FrontTarget, QuantizationResult,
};
use crate::error::{Error, Result};
use crate::kinematics::{doppler_pair, BoostParams};
use crate::rayconstruct::RayConstruction;
use crate::wavemodel::{boosted_closed_form, factorize, generalized_closed_form, Event};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Equivalence,
    Speeds,
    Detectability,
    Quantization,
    All,
}

impl Suite {
    pub const EACH: [Suite; 4] = [Suite::Equivalence, Suite::Speeds, Suite::Detectability, Suite::Quantization];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Equivalence => "equivalence",
            Suite::Speeds => "speeds",
            Suite::Detectability => "detectability",
            Suite::Quantization => "quantization",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            one => vec![one],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Which side of the tolerance a measurement must fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub expect: Expect,
    pub passed: bool,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, measured: f64, expect: Expect, tolerance: f64) -> Self {
        let passed = match expect {
            Expect::Below => measured < tolerance,
            Expect::Above => measured > tolerance,
        };
        Check {
            suite,
            name: name.into(),
            measured,
            tolerance,
            expect,
            passed,
        }
    }

    fn below(suite: Suite, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check::new(suite, name, measured, Expect::Below, tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are plain data")
    }
}

pub const EQUIVALENCE_BETAS: [f64; 5] = [0.1, 0.3, 0.6, 0.9, 0.99];
pub const SPEED_BETAS: [f64; 3] = [0.1, 0.5, 0.9];
pub const DETECTABILITY_EXPONENTS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

/// Uniform events in the box `[-half, half]⁴`.
pub fn random_events(seed: u64, count: usize, half: f64) -> Vec<Event> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut u = || rng.gen_range(-half..=half);
            Event::new(u(), u(), u(), u())
        })
        .collect()
}

fn max_abs_diff<F>(events: &[Event], f: F) -> Result<f64>
where
    F: Fn(Event) -> Result<(f64, f64)>,
{
    events.iter().try_fold(0.0f64, |m, &e| {
        let (a, b) = f(e)?;
        Ok(m.max((a - b).abs()))
    })
}

fn relative(measured: f64, expected: f64) -> f64 {
    ((measured - expected) / expected).abs()
}

fn equivalence(seed: u64) -> Result<Vec<Check>> {
    let suite = Suite::Equivalence;
    let events = random_events(seed, 1000, 10.0);
    let mut checks = Vec::new();
    for beta in EQUIVALENCE_BETAS {
        let params = BoostParams::new(beta);
        let rays = RayConstruction::new(&params, params.c)?;
        let dev = max_abs_diff(&events, |e| Ok((rays.interfere(e), boosted_closed_form(&params, e)?)))?;
        checks.push(Check::below(suite, format!("rays vs transform, beta {beta}"), dev, 1e-9));
    }

    let params = BoostParams::new(0.6);
    let factors = factorize(&params)?;
    let mut factor_dev = 0.0f64;
    for t in [0.0, 1.5, 3.0] {
        for iy in 0..100 {
            for ix in 0..100 {
                let e = Event::new(-10.0 + 0.2 * ix as f64, -10.0 + 0.2 * iy as f64, 0.0, t);
                let product = factors.carrier(e) * factors.modulation(e);
                factor_dev = factor_dev.max((product - boosted_closed_form(&params, e)?).abs());
            }
        }
    }
    checks.push(Check::below(suite, "carrier x modulation vs transform", factor_dev, 1e-12));

    let galilean = BoostParams::new(0.6).with_exponent(0.0);
    let rays = RayConstruction::new(&galilean, galilean.c)?;
    let dev = max_abs_diff(&events, |e| Ok((rays.interfere(e), generalized_closed_form(&galilean, e)?)))?;
    checks.push(Check::below(suite, "rays vs generalized form, a 0", dev, 1e-9));

    let rays = RayConstruction::new(&params, params.c)?;
    let residual = random_events(seed ^ 0x7E7A, 10_000, 10.0)
        .into_iter()
        .map(|e| {
            let (r1, r2) = rays.residuals(e, rays.retardation(e));
            r1.abs().max(r2.abs())
        })
        .fold(0.0, f64::max);
    checks.push(Check::below(suite, "retardation quadratic residual", residual, 1e-10));
    Ok(checks)
}

fn speeds() -> Result<Vec<Check>> {
    let suite = Suite::Speeds;
    let mut checks = Vec::new();
    for beta in SPEED_BETAS {
        let params = BoostParams::new(beta);
        let factors = factorize(&params)?;
        let v = params.velocity();
        let c2 = params.c * params.c;
        let span = 2.0 * factors.modulation_zero_spacing().unwrap_or(1.0).max(factors.carrier_node_spacing());
        let times = sample_times(0.0, 2.0, 21);
        let carrier = track_front(&factors, (-span, span), &times, FrontTarget::CarrierNode)?;
        let crest = track_front(&factors, (-span, span), &times, FrontTarget::ModulationCrest)?;
        checks.push(Check::below(suite, format!("carrier speed, beta {beta}"), relative(carrier.fitted_speed, v), 1e-6));
        checks.push(Check::below(
            suite,
            format!("modulation speed, beta {beta}"),
            relative(crest.fitted_speed, c2 / v),
            1e-6,
        ));
        checks.push(Check::below(
            suite,
            format!("speed product, beta {beta}"),
            relative(carrier.fitted_speed * crest.fitted_speed, c2),
            1e-5,
        ));
    }

    let params = BoostParams::new(0.6);
    let factors = factorize(&params)?;
    let gamma = params.gamma()?;
    let k = modulation_wavenumber(&factors, 0.0, (-40.0, 40.0))?;
    checks.push(Check::below(
        suite,
        "de Broglie wave number, beta 0.6",
        relative(k.angular_rate(), gamma * params.kappa0() * params.beta),
        1e-6,
    ));
    let w = modulation_frequency(&factors, 0.3, (0.0, 40.0))?;
    checks.push(Check::below(
        suite,
        "dilated frequency, beta 0.6",
        relative(w.angular_rate(), gamma * params.omega0),
        1e-6,
    ));
    Ok(checks)
}

fn detectability() -> Result<Vec<Check>> {
    let suite = Suite::Detectability;
    let mut checks = Vec::new();
    for a in DETECTABILITY_EXPONENTS {
        let defect = group_closure_defect(a, 0.5, 0.5)?;
        checks.push(if a == 1.0 {
            Check::below(suite, format!("closure defect, a {a}"), defect, 1e-12)
        } else {
            Check::new(suite, format!("closure defect, a {a}"), defect, Expect::Above, 1e-3)
        });
    }
    let mut worst = 0.0f64;
    for beta in [-0.9, -0.3, 0.0, 0.2, 0.6, 0.99] {
        let params = BoostParams::new(beta);
        let pair = doppler_pair(&params)?;
        let frame = isotropy_search(pair.omega1, pair.omega2, &params)?;
        worst = worst.max((frame.beta - beta).abs());
    }
    checks.push(Check::below(suite, "isotropy frame round trip, a 1", worst, 1e-10));
    Ok(checks)
}

fn quantization(seed: u64) -> Result<Vec<Check>> {
    let suite = Suite::Quantization;
    let (radius, kappa) = (1.7, 2.3);
    let path = circle_path(radius, 10_000);
    let kappas = vec![kappa; path.len()];
    let q = bohr_path_integral(&path, &kappas)?;
    let expected = kappa * TAU * radius;
    let mut checks = vec![Check::below(suite, "circle loop integral", relative(q.loop_phase, expected), 1e-8)];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mismatches = (0..10_000)
        .map(|_| rng.gen_range(-1e4..1e4))
        .filter(|&phase: &f64| QuantizationResult::from_loop_phase(phase).reconstruct() != phase)
        .count();
    checks.push(Check::below(suite, "turns and residual reconstruct exactly", mismatches as f64, 0.5));
    Ok(checks)
}

fn run_one(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    match suite {
        Suite::Equivalence => equivalence(seed),
        Suite::Speeds => speeds(),
        Suite::Detectability => detectability(),
        Suite::Quantization => quantization(seed),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// Runs `suite` (all four suites for [`Suite::All`]) with a fixed seed.
///
/// Suites run concurrently; checks are ordered by suite, then as each suite
/// emits them, so the report does not depend on scheduling.
pub fn verify(suite: Suite, seed: u64) -> Result<VerifyReport> {
    let members = suite.members();
    let mut results: Vec<(Suite, Vec<Check>)> = members
        .par_iter()
        .map(|&s| run_one(s, seed).map(|checks| (s, checks)))
        .collect::<Result<_>>()?;
    results.sort_by_key(|(s, _)| s.as_str());
    let checks: Vec<Check> = results.into_iter().flat_map(|(_, c)| c).collect();
    Ok(VerifyReport {
        suite,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::DEFAULT_SEED;

    #[test]
    fn suite_names() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn detectability_suite_passes() {
        let report = verify(Suite::Detectability, DEFAULT_SEED).unwrap();
        assert!(report.passed, "{}", report.to_json());
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn seeded_points_repeat() {
        assert_eq!(random_events(7, 5, 1.0), random_events(7, 5, 1.0));
        assert_ne!(random_events(7, 5, 1.0), random_events(8, 5, 1.0));
    }

    #[test]
    fn check_direction() {
        assert!(Check::new(Suite::Speeds, "x", 2.0, Expect::Above, 1.0).passed);
        assert!(!Check::below(Suite::Speeds, "x", 2.0, 1.0).passed);
        assert!(!Check::below(Suite::Speeds, "x", f64::NAN, 1.0).passed);
    }
}
