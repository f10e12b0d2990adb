use serde::{Deserialize, Serialize};

/// Hardware envelope of the emulated neutral-atom machine. Angular units
/// throughout: rad/µs for frequencies, µs for times, µm for lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    /// Largest drive amplitude Ω.
    pub max_amp: f64,
    /// Largest |detuning| δ.
    pub max_det: f64,
    /// Longest total schedule duration.
    pub max_duration: f64,
    /// Van der Waals coefficient C₆ in rad·µs⁻¹·µm⁶.
    pub c6: f64,
}

impl Default for DeviceSpec {
    fn default() -> Self {
        Self {
            max_amp: 2.0 * std::f64::consts::PI * 12.0,
            max_det: 2.0 * std::f64::consts::PI * 12.0,
            max_duration: 3.0,
            c6: 5_420_158.53,
        }
    }
}

impl DeviceSpec {
    /// Distance at which the pair interaction equals the drive amplitude:
    /// `r_b = (C₆/Ω)^{1/6}`. Pairs closer than this are blockaded.
    pub fn blockade_radius(&self, omega: f64) -> f64 {
        (self.c6 / omega).powf(1.0 / 6.0)
    }

    /// Smallest blockade radius the device can realize — the radius at the
    /// amplitude cap. Driving softer only grows the radius.
    pub fn min_blockade_radius(&self) -> f64 {
        self.blockade_radius(self.max_amp)
    }
}
