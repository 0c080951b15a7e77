//! Closed-form scalar wave fields.
//!
//! The particle at rest is the spherical standing wave `sin(κ₀r)·cos(ω₀t)`
//! (optionally with a `1/r` amplitude). In motion it becomes a travelling wave
//! with two factors, a carrier moving at `v` with ellipsoidal nodes and a
//! de Broglie modulation moving at `c²/v`:
//!
//! ```text
//! Ψ = sin(κ₀·√(γ²(x − vt)² + y² + z²)) · cos(γω₀(t − vx/c²))
//! ```
//!
//! For the `γ^a` family the same construction gives, with `s = γ^a`,
//!
//! ```text
//! Ψ = sin(κ₀·√(s²(x − vt)² + γ^(2a−2)(y² + z²))) · cos(sω₀(t − vx/c²))
//! ```
//!
//! which is written so that `a = 1` reproduces the Lorentz form bit for bit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{doppler_pair, BoostParams, PhaseSpeed};
use crate::rayconstruct::RayConstruction;

/// A space-time point in the laboratory frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Event {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl Event {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> Self {
        Event { x, y, z, t }
    }

    /// A point on the direction of motion (`y = z = 0`).
    pub fn on_axis(x: f64, t: f64) -> Self {
        Event { x, y: 0.0, z: 0.0, t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Rest,
    BoostedClosedForm,
    OneDTravelling,
    RayConstructed,
    GeneralizedClosedForm,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Rest => "rest",
            Provenance::BoostedClosedForm => "boosted-closed-form",
            Provenance::OneDTravelling => "one-d-travelling",
            Provenance::RayConstructed => "ray-constructed",
            Provenance::GeneralizedClosedForm => "generalized-closed-form",
        }
    }
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rest" => Provenance::Rest,
            "boosted-closed-form" => Provenance::BoostedClosedForm,
            "one-d-travelling" => Provenance::OneDTravelling,
            "ray-constructed" => Provenance::RayConstructed,
            "generalized-closed-form" => Provenance::GeneralizedClosedForm,
            other => return Err(Error::Config(format!("unknown provenance `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmplitudeMode {
    /// Amplitude omitted; the default for every moving field.
    #[default]
    Unit,
    /// `1/|r|` amplitude, rest frame only.
    InverseR,
}

impl AmplitudeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AmplitudeMode::Unit => "unit",
            AmplitudeMode::InverseR => "inverse-r",
        }
    }
}

/// Rest-frame standing wave `sin(κ₀|r|)·cos(ω₀t)`, scaled by `1/|r|` in inverse-r mode.
pub fn rest_amplitude(params: &BoostParams, e: Event, mode: AmplitudeMode) -> Result<f64> {
    params.validate()?;
    rest_kernel(params.kappa0(), params.omega0, e, mode)
}

fn rest_kernel(kappa0: f64, omega0: f64, e: Event, mode: AmplitudeMode) -> Result<f64> {
    let r = (e.x * e.x + (e.y * e.y + e.z * e.z)).sqrt();
    let psi = (kappa0 * r).sin() * (omega0 * e.t).cos();
    match mode {
        AmplitudeMode::Unit => Ok(psi),
        AmplitudeMode::InverseR if r == 0.0 => Err(Error::Singularity),
        AmplitudeMode::InverseR => Ok(psi / r),
    }
}

/// One-dimensional travelling wave in factored form,
/// `sin(sκ₀(x − vt))·cos(s(ω₀t − κ₀βx))` with `s = γ^a`.
pub fn one_d_travelling(params: &BoostParams, x: f64, t: f64) -> Result<f64> {
    params.validate()?;
    let s = params.scale()?;
    let k0 = params.kappa0();
    let v = params.velocity();
    Ok((s * k0 * (x - v * t)).sin() * (s * (params.omega0 * t - k0 * params.beta * x)).cos())
}

/// The same one-dimensional wave built by composing the Doppler-shifted ray pair
/// `[e^{i(ω₁t − κ₁x)} − e^{i(ω₂t + κ₂x)}]/2` and projecting onto the sin·cos form.
pub fn one_d_composed(params: &BoostParams, x: f64, t: f64) -> Result<f64> {
    let pair = doppler_pair(params)?;
    let forward = Complex64::cis(pair.omega1 * t - pair.kappa1 * x);
    let rearward = Complex64::cis(pair.omega2 * t + pair.kappa2 * x);
    let composed = (forward - rearward) / 2.0;
    Ok(-composed.im)
}

fn require_lorentz(params: &BoostParams) -> Result<()> {
    if params.exponent_a != 1.0 {
        return Err(Error::invalid(
            "exponent_a",
            format!("closed Lorentz form needs a = 1, got {}", params.exponent_a),
        ));
    }
    Ok(())
}

/// Full three-dimensional travelling wave of a particle moving at `v` along +x.
pub fn boosted_closed_form(params: &BoostParams, e: Event) -> Result<f64> {
    params.validate()?;
    require_lorentz(params)?;
    let g = params.gamma()?;
    Ok(boosted_kernel(g, params.velocity(), params.kappa0(), params.omega0, params.c, e))
}

fn boosted_kernel(g: f64, v: f64, k0: f64, w0: f64, c: f64, e: Event) -> f64 {
    let dx = e.x - v * e.t;
    let r = (g * g * dx * dx + (e.y * e.y + e.z * e.z)).sqrt();
    (k0 * r).sin() * (g * w0 * (e.t - v * e.x / (c * c))).cos()
}

/// Coefficients of the `γ^a` travelling wave; shared by the closed form and
/// its factorization so the two agree exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Generalized {
    v: f64,
    c: f64,
    kappa0: f64,
    omega0: f64,
    s: f64,
    transverse: f64,
}

impl Generalized {
    fn new(params: &BoostParams) -> Result<Self> {
        params.validate()?;
        let gamma = params.gamma()?;
        Ok(Generalized {
            v: params.velocity(),
            c: params.c,
            kappa0: params.kappa0(),
            omega0: params.omega0,
            s: gamma.powf(params.exponent_a),
            // s²(1 − β²) = γ^(2a − 2); exactly 1 at a = 1.
            transverse: gamma.powf(2.0 * (params.exponent_a - 1.0)),
        })
    }

    fn carrier_phase(&self, e: Event) -> f64 {
        let dx = e.x - self.v * e.t;
        let r = (self.s * self.s * dx * dx + self.transverse * (e.y * e.y + e.z * e.z)).sqrt();
        self.kappa0 * r
    }

    fn modulation_phase(&self, e: Event) -> f64 {
        self.s * self.omega0 * (e.t - self.v * e.x / (self.c * self.c))
    }

    fn eval(&self, e: Event) -> f64 {
        self.carrier_phase(e).sin() * self.modulation_phase(e).cos()
    }
}

/// Travelling wave for the transform family `γ^a`; equals
/// [`boosted_closed_form`] bit for bit at `a = 1`.
pub fn generalized_closed_form(params: &BoostParams, e: Event) -> Result<f64> {
    Ok(Generalized::new(params)?.eval(e))
}

/// Carrier and modulation factors of a moving particle wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorPair {
    inner: Generalized,
    pub beta: f64,
    pub carrier_speed: f64,
    pub modulation_speed: PhaseSpeed,
}

impl FactorPair {
    /// Carrier `sin(κ₀√(s²(x − vt)² + γ^(2a−2)(y² + z²)))`.
    pub fn carrier(&self, e: Event) -> f64 {
        self.inner.carrier_phase(e).sin()
    }

    /// Modulation `cos(sω₀(t − vx/c²))`.
    pub fn modulation(&self, e: Event) -> f64 {
        self.inner.modulation_phase(e).cos()
    }

    pub fn carrier_phase(&self, e: Event) -> f64 {
        self.inner.carrier_phase(e)
    }

    pub fn modulation_phase(&self, e: Event) -> f64 {
        self.inner.modulation_phase(e)
    }

    pub fn product(&self, e: Event) -> f64 {
        self.inner.eval(e)
    }

    /// Distance between successive carrier nodes along the axis of motion.
    pub fn carrier_node_spacing(&self) -> f64 {
        PI / (self.inner.s * self.inner.kappa0)
    }

    /// Distance between successive modulation zeros at equal time; `None` at rest.
    pub fn modulation_zero_spacing(&self) -> Option<f64> {
        let rate = self.inner.s * self.inner.omega0 * self.inner.v / (self.inner.c * self.inner.c);
        (rate != 0.0).then(|| PI / rate.abs())
    }

    /// Time between successive modulation zeros at a fixed point.
    pub fn modulation_half_period(&self) -> f64 {
        PI / (self.inner.s * self.inner.omega0)
    }
}

/// Splits the travelling wave into carrier and modulation.
pub fn factorize(params: &BoostParams) -> Result<FactorPair> {
    let inner = Generalized::new(params)?;
    let modulation_speed = if params.beta == 0.0 {
        PhaseSpeed::Divergent
    } else {
        PhaseSpeed::Finite(params.c / params.beta)
    };
    Ok(FactorPair {
        inner,
        beta: params.beta,
        carrier_speed: params.velocity(),
        modulation_speed,
    })
}

#[derive(Debug, Clone)]
enum Evaluator {
    Rest { kappa0: f64, omega0: f64 },
    Boosted { g: f64, v: f64, k0: f64, w0: f64, c: f64 },
    OneD { params: BoostParams },
    Ray(RayConstruction),
    Generalized(Generalized),
}

/// An evaluatable scalar field with a provenance tag.
///
/// Parameters are validated once at construction; evaluation is a pure
/// function of the event.
#[derive(Debug, Clone)]
pub struct WaveField {
    params: BoostParams,
    provenance: Provenance,
    amplitude_mode: AmplitudeMode,
    ray_speed: Option<f64>,
    eval: Evaluator,
}

impl WaveField {
    pub fn rest(params: BoostParams, amplitude_mode: AmplitudeMode) -> Result<Self> {
        params.validate()?;
        Ok(WaveField {
            params,
            provenance: Provenance::Rest,
            amplitude_mode,
            ray_speed: None,
            eval: Evaluator::Rest {
                kappa0: params.kappa0(),
                omega0: params.omega0,
            },
        })
    }

    pub fn boosted(params: BoostParams) -> Result<Self> {
        params.validate()?;
        require_lorentz(&params)?;
        Ok(WaveField {
            params,
            provenance: Provenance::BoostedClosedForm,
            amplitude_mode: AmplitudeMode::Unit,
            ray_speed: None,
            eval: Evaluator::Boosted {
                g: params.gamma()?,
                v: params.velocity(),
                k0: params.kappa0(),
                w0: params.omega0,
                c: params.c,
            },
        })
    }

    /// The one-dimensional travelling wave; `y` and `z` are ignored.
    pub fn one_d(params: BoostParams) -> Result<Self> {
        params.validate()?;
        Ok(WaveField {
            params,
            provenance: Provenance::OneDTravelling,
            amplitude_mode: AmplitudeMode::Unit,
            ray_speed: None,
            eval: Evaluator::OneD { params },
        })
    }

    pub fn ray_constructed(params: BoostParams, ray_speed: f64) -> Result<Self> {
        let construction = RayConstruction::new(&params, ray_speed)?;
        Ok(WaveField {
            params,
            provenance: Provenance::RayConstructed,
            amplitude_mode: AmplitudeMode::Unit,
            ray_speed: Some(ray_speed),
            eval: Evaluator::Ray(construction),
        })
    }

    pub fn generalized(params: BoostParams) -> Result<Self> {
        Ok(WaveField {
            params,
            provenance: Provenance::GeneralizedClosedForm,
            amplitude_mode: AmplitudeMode::Unit,
            ray_speed: None,
            eval: Evaluator::Generalized(Generalized::new(&params)?),
        })
    }

    pub fn params(&self) -> &BoostParams {
        &self.params
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn amplitude_mode(&self) -> AmplitudeMode {
        self.amplitude_mode
    }

    pub fn ray_speed(&self) -> Option<f64> {
        self.ray_speed
    }

    pub fn evaluate(&self, e: Event) -> Result<f64> {
        match &self.eval {
            Evaluator::Rest { kappa0, omega0 } => rest_kernel(*kappa0, *omega0, e, self.amplitude_mode),
            Evaluator::Boosted { g, v, k0, w0, c } => Ok(boosted_kernel(*g, *v, *k0, *w0, *c, e)),
            Evaluator::OneD { params } => one_d_travelling(params, e.x, e.t),
            Evaluator::Ray(ray) => Ok(ray.interfere(e)),
            Evaluator::Generalized(g) => Ok(g.eval(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p06() -> BoostParams {
        BoostParams::new(0.6)
    }

    #[test]
    fn rest_wave_zeros() {
        let params = BoostParams::new(0.0).with_omega0(2.0);
        let t = PI / (2.0 * params.omega0);
        for r in [0.1, 1.0, 3.7] {
            let v = rest_amplitude(&params, Event::new(r, 0.0, 0.0, t), AmplitudeMode::Unit).unwrap();
            assert!(v.abs() < 1e-15);
        }
        let node = PI / params.kappa0();
        for t in [0.0, 0.3, 5.0] {
            let v = rest_amplitude(&params, Event::new(0.0, node, 0.0, t), AmplitudeMode::Unit).unwrap();
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn rest_wave_rotational_symmetry() {
        let params = BoostParams::default();
        let a = rest_amplitude(&params, Event::new(1.0, 2.0, 2.0, 0.4), AmplitudeMode::InverseR).unwrap();
        let b = rest_amplitude(&params, Event::new(0.0, 3.0, 0.0, 0.4), AmplitudeMode::InverseR).unwrap();
        let c = rest_amplitude(&params, Event::new(-2.0, -1.0, 2.0, 0.4), AmplitudeMode::InverseR).unwrap();
        assert!((a - b).abs() < 1e-15 && (a - c).abs() < 1e-15);
    }

    #[test]
    fn inverse_r_singular_at_origin() {
        let err = rest_amplitude(&BoostParams::default(), Event::default(), AmplitudeMode::InverseR);
        assert!(matches!(err, Err(Error::Singularity)));
        assert_eq!(
            rest_amplitude(&BoostParams::default(), Event::default(), AmplitudeMode::Unit).unwrap(),
            0.0
        );
    }

    #[test]
    fn one_d_rest_limit_is_standing_wave() {
        let params = BoostParams::new(0.0);
        for &(x, t) in &[(0.3, 0.1), (-2.0, 4.0), (7.5, -1.2)] {
            let expected = f64::sin(x) * f64::cos(t);
            assert_eq!(one_d_travelling(&params, x, t).unwrap(), expected);
        }
    }

    #[test]
    fn one_d_first_factor_node_moves_at_v() {
        let params = p06();
        let g = params.gamma().unwrap();
        let v = params.velocity();
        for n in -2..=2 {
            for t in [0.0, 1.0, 2.5] {
                let x = v * t + n as f64 * PI / (g * params.kappa0());
                let carrier = (g * params.kappa0() * (x - v * t)).sin();
                assert!(carrier.abs() < 1e-14);
                assert!(one_d_travelling(&params, x, t).unwrap().abs() < 1e-14);
            }
        }
    }

    #[test]
    fn boosted_needs_lorentz_exponent() {
        let params = p06().with_exponent(0.0);
        assert!(boosted_closed_form(&params, Event::default()).is_err());
        assert!(WaveField::boosted(params).is_err());
        assert!(generalized_closed_form(&params, Event::default()).is_ok());
    }

    #[test]
    fn boosted_rest_limit_bitwise() {
        let params = BoostParams::new(0.0);
        for e in [Event::new(0.4, -1.3, 2.2, 0.7), Event::new(-5.0, 0.0, 1.0, -3.3)] {
            assert_eq!(
                boosted_closed_form(&params, e).unwrap(),
                rest_amplitude(&params, e, AmplitudeMode::Unit).unwrap()
            );
        }
    }

    #[test]
    fn lorentz_substitution_reproduces_closed_form() {
        // Rest wave evaluated at the primed coordinates of the event.
        let params = p06();
        let g = params.gamma().unwrap();
        let v = params.velocity();
        for e in [Event::new(1.0, 0.5, -0.2, 0.3), Event::new(-4.0, 2.0, 1.0, 6.0)] {
            let xp = g * (e.x - v * e.t);
            let tp = g * (e.t - v * e.x / (params.c * params.c));
            let rest = rest_amplitude(&params, Event::new(xp, e.y, e.z, tp), AmplitudeMode::Unit).unwrap();
            assert!((rest - boosted_closed_form(&params, e).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn factor_speeds() {
        let f = factorize(&p06()).unwrap();
        assert!((f.carrier_speed - 0.6).abs() < 1e-15);
        assert!((f.modulation_speed.finite().unwrap() - 5.0 / 3.0).abs() < 1e-15);

        let rest = factorize(&BoostParams::new(0.0)).unwrap();
        assert!(rest.modulation_speed.is_divergent());
        assert!(rest.modulation_zero_spacing().is_none());
        let m0 = rest.modulation(Event::new(0.0, 0.0, 0.0, 0.9));
        for x in [-3.0, 1.0, 8.0] {
            assert_eq!(rest.modulation(Event::new(x, 2.0, -1.0, 0.9)), m0);
        }
        assert_eq!(m0, 0.9f64.cos());
    }

    #[test]
    fn factor_product_matches_closed_form() {
        let params = p06();
        let f = factorize(&params).unwrap();
        for i in 0..50 {
            let e = Event::new(i as f64 * 0.37 - 9.0, 1.1 - i as f64 * 0.05, 0.3, i as f64 * 0.2);
            let closed = boosted_closed_form(&params, e).unwrap();
            assert!((f.carrier(e) * f.modulation(e) - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn generalized_reduces_bitwise() {
        let params = BoostParams::new(0.83).with_c(1.7).with_omega0(0.9);
        for i in 0..40 {
            let e = Event::new(i as f64 * 0.41 - 8.0, (i % 7) as f64 - 3.0, 0.25 * i as f64 - 5.0, 0.3 * i as f64);
            assert_eq!(
                generalized_closed_form(&params, e).unwrap(),
                boosted_closed_form(&params, e).unwrap()
            );
        }
    }

    #[test]
    fn generalized_envelope_node_spacing() {
        // Envelope zeros along x at y = z = 0 are π/(sκ₀) apart; across the
        // axis at x = vt they are πγ/(sκ₀) apart.
        let params = BoostParams::new(0.6).with_exponent(2.0).with_omega0(1.3);
        let f = factorize(&params).unwrap();
        let s = params.scale().unwrap();
        let g = params.gamma().unwrap();
        let k0 = params.kappa0();
        let t = 0.7;
        let centre = params.velocity() * t;
        for n in 1..4 {
            let along = Event::new(centre + n as f64 * PI / (s * k0), 0.0, 0.0, t);
            let across = Event::new(centre, n as f64 * PI * g / (s * k0), 0.0, t);
            assert!(f.carrier(along).abs() < 1e-13);
            assert!(f.carrier(across).abs() < 1e-13);
        }
    }

    #[test]
    fn modulation_dephasing_across_dx() {
        let params = p06();
        let f = factorize(&params).unwrap();
        let g = params.gamma().unwrap();
        let dx = 0.8;
        let lag = f.modulation_phase(Event::on_axis(1.0, 2.0)) - f.modulation_phase(Event::on_axis(1.0 + dx, 2.0));
        assert!((lag - g * params.omega0 * params.velocity() * dx).abs() < 1e-14);
    }

    #[test]
    fn wave_field_dispatch() {
        let params = p06();
        let e = Event::new(1.2, -0.4, 0.9, 2.1);
        let boosted = WaveField::boosted(params).unwrap();
        assert_eq!(boosted.provenance(), Provenance::BoostedClosedForm);
        assert_eq!(boosted.evaluate(e).unwrap(), boosted_closed_form(&params, e).unwrap());
        assert_eq!(
            WaveField::generalized(params).unwrap().evaluate(e).unwrap(),
            generalized_closed_form(&params, e).unwrap()
        );
        let ray = WaveField::ray_constructed(params, params.c).unwrap();
        assert!((ray.evaluate(e).unwrap() - boosted.evaluate(e).unwrap()).abs() < 1e-12);
        assert_eq!(
            WaveField::one_d(params).unwrap().evaluate(e).unwrap(),
            one_d_travelling(&params, e.x, e.t).unwrap()
        );
        assert_eq!(boosted.evaluate(e).unwrap(), boosted.evaluate(e).unwrap());
    }

    #[test]
    fn provenance_round_trips_through_str() {
        for p in [
            Provenance::Rest,
            Provenance::BoostedClosedForm,
            Provenance::OneDTravelling,
            Provenance::RayConstructed,
            Provenance::GeneralizedClosedForm,
        ] {
            assert_eq!(p.as_str().parse::<Provenance>().unwrap(), p);
        }
    }
}
