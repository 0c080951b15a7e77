//! Moving standing waves built two ways: by Lorentz-transforming a spherical
//! standing wave, and by interfering Doppler-shifted rays from a moving centre.
//!
//! ```
//! use wavekin::{boosted_closed_form, interfere, BoostParams, Event};
//!
//! let params = BoostParams::new(0.6);
//! let e = Event::new(1.0, 0.5, 0.0, 2.0);
//! let from_rays = interfere(&params, params.c, e).unwrap();
//! let from_transform = boosted_closed_form(&params, e).unwrap();
//! assert!((from_rays - from_transform).abs() < 1e-12);
//! ```

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod harness;
pub mod kinematics;
pub mod rayconstruct;
pub mod wavemodel;

pub use error::{Error, Result};
pub use kinematics::{
    compose_velocities, de_broglie, doppler_pair, lorentz_factor, scale_factor, BoostParams,
    DeBroglieQuantities, PhaseSpeed, RayPair,
};
pub use rayconstruct::{
    envelope_scales, interfere, retardation_times, EnvelopeScales, RayConstruction, RaySpeedConfig,
    RetardationTimes,
};
pub use wavemodel::{
    boosted_closed_form, factorize, generalized_closed_form, one_d_composed, one_d_travelling,
    rest_amplitude, AmplitudeMode, Event, FactorPair, Provenance, WaveField,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/moving-waves.md")]
    mod moving_waves {}
    #[doc = include_str!("../../../book/src/rays.md")]
    mod rays {}
    #[doc = include_str!("../../../book/src/fronts.md")]
    mod fronts {}
    #[doc = include_str!("../../../book/src/detectability.md")]
    mod detectability {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
