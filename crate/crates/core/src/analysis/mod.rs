//! Measurements on the wave fields and the claims they support.

mod detect;
mod front;
mod quantize;
pub mod roots;

pub use detect::{
    detectability, group_closure_defect, isotropy_search, DetectabilityReport, IsotropyFrame,
    ANISOTROPY_THRESHOLD,
};
pub use front::{
    dephasing, follow_front, modulation_frequency, modulation_wavenumber, sample_times, track_front,
    FrontTarget, FrontTrace, SpacingMeasurement,
};
pub use quantize::{bohr_path_integral, bohr_residual, circle_path, QuantizationResult, CLOSURE_TOLERANCE};
