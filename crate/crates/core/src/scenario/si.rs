//! Display-only conversion of natural-unit results to SI-style units.

use serde_json::{json, Value};

use super::{OutputRecord, ScenarioError};

/// `hbar c` in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.326_980_4;
/// `hbar` in MeV s.
pub const HBAR_MEV_S: f64 = 6.582_119_569e-22;

/// Unit conversion for a particle of rest energy `mass_mev` (MeV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiDisplay {
    pub mass_mev: f64,
}

impl SiDisplay {
    pub fn new(mass_mev: f64) -> Result<Self, ScenarioError> {
        if !(mass_mev.is_finite() && mass_mev > 0.0) {
            return Err(ScenarioError::Config {
                field: "si".into(),
                message: format!("mass in MeV must be positive, got {mass_mev}"),
            });
        }
        Ok(Self { mass_mev })
    }

    /// Seconds per natural time unit `hbar / (m c^2)`.
    pub fn time_unit_s(&self) -> f64 {
        HBAR_MEV_S / self.mass_mev
    }

    /// Femtometres per natural length unit `hbar / (m c)`.
    pub fn length_unit_fm(&self) -> f64 {
        HBAR_C_MEV_FM / self.mass_mev
    }

    pub fn energy_mev(&self, natural: f64) -> f64 {
        natural * self.mass_mev
    }

    /// Energies in MeV, times in seconds. The record's mass `m` is taken as
    /// the energy unit, so the physical rest energy is `m * mass_mev`.
    pub fn convert(&self, record: &OutputRecord) -> Value {
        let r = &record.results;
        let t = |x: Option<f64>| x.map(|v| v * self.time_unit_s());
        let c = &record.config;
        json!({
            "mass_MeV": self.mass_mev,
            "length_unit_fm": self.length_unit_fm(),
            "time_unit_s": self.time_unit_s(),
            "E_MeV": self.energy_mev(c.particle.energy),
            "m_MeV": self.energy_mev(c.particle.m),
            "V_MeV": self.energy_mev(c.field.v),
            "tau_T_s": t(r.tau_t),
            "tau_R_s": t(r.tau_r),
            "tau_L_s": t(r.tau_l),
            "tau_D_s": t(r.tau_d),
            "tau_free_s": t(r.tau_free),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neutron_units() {
        let si = SiDisplay::new(939.565_420_52).unwrap();
        assert!((si.time_unit_s() - 7.005e-25).abs() < 1e-27);
        assert!((si.length_unit_fm() - 0.210_019).abs() < 1e-5);
        assert!(SiDisplay::new(0.0).is_err());
    }
}
