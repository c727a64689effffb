//! Physical parameters of the dot, the impurity nucleus and the electrons.
//!
//! Orbital energies are measured in units of the confinement energy ħω₀ and
//! the magnetic field enters through the dimensionless ratio `x = ω_c/ω₀`.
//! Spin-sector energies are frequencies in MHz (energy divided by h).

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Bohr magneton in meV/T.
pub const BOHR_MAGNETON_MEV_PER_T: f64 = 5.788_381_806_0e-2;

/// Free-electron cyclotron energy ħe/m_e per Tesla, meV/T (equal to 2 μ_B).
pub const CYCLOTRON_MEV_PER_T: f64 = 2.0 * BOHR_MAGNETON_MEV_PER_T;

/// Planck constant expressed as meV per MHz.
pub const PLANCK_MEV_PER_MHZ: f64 = 4.135_667_696e-6;

/// Bohr magneton over h, MHz/T.
pub const BOHR_MAGNETON_MHZ_PER_T: f64 = BOHR_MAGNETON_MEV_PER_T / PLANCK_MEV_PER_MHZ;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DotConfig {
    /// Confinement energy ħω₀, meV.
    pub hbar_omega0: f64,
    /// Effective mass m*/m_e.
    pub mstar_ratio: f64,
    /// Electron g-factor.
    pub g_factor: f64,
    /// Nuclear gyromagnetic ratio, MHz/T.
    pub gamma_n: f64,
    /// Electron gyromagnetic ratio, MHz/T.
    pub gamma_e: f64,
    /// Contact hyperfine strength C/l₀², MHz.
    pub hyperfine_c: f64,
    /// Inverse-square repulsion (α/l₀²)/ħω₀.
    pub alpha_tilde: f64,
    /// Largest relative angular momentum |m| searched for the ground state.
    pub m_max: u32,
}

impl Default for DotConfig {
    fn default() -> Self {
        Self {
            hbar_omega0: 2.5,
            mstar_ratio: 0.19,
            g_factor: 2.0,
            gamma_n: 10.7084,
            gamma_e: 28024.95,
            hyperfine_c: 60.0,
            alpha_tilde: 3.0,
            m_max: 15,
        }
    }
}

fn finite(field: &'static str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::new(field, format!("must be finite, got {v}")))
    }
}

impl DotConfig {
    /// Checks every invariant and returns the config unchanged.
    ///
    /// Soft inconsistencies (see [`DotConfig::warnings`]) are logged, not rejected.
    pub fn validate(self) -> Result<Self, ConfigError> {
        if finite("hbar_omega0", self.hbar_omega0)? <= 0.0 {
            return Err(ConfigError::new("hbar_omega0", "must be > 0"));
        }
        if finite("mstar_ratio", self.mstar_ratio)? <= 0.0 {
            return Err(ConfigError::new("mstar_ratio", "must be > 0"));
        }
        finite("g_factor", self.g_factor)?;
        if finite("gamma_n", self.gamma_n)? <= 0.0 {
            return Err(ConfigError::new("gamma_n", "must be > 0"));
        }
        if finite("gamma_e", self.gamma_e)? <= self.gamma_n {
            return Err(ConfigError::new("gamma_e", "must exceed gamma_n"));
        }
        if finite("hyperfine_c", self.hyperfine_c)? < 0.0 {
            return Err(ConfigError::new("hyperfine_c", "must be >= 0"));
        }
        if finite("alpha_tilde", self.alpha_tilde)? < 0.0 {
            return Err(ConfigError::new("alpha_tilde", "must be >= 0"));
        }
        if self.m_max < 5 {
            return Err(ConfigError::new("m_max", format!("must be >= 5, got {}", self.m_max)));
        }
        for w in self.warnings() {
            log::warn!("{w}");
        }
        Ok(self)
    }

    /// Soft consistency problems that do not invalidate the config.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.gamma_e < 100.0 * self.gamma_n {
            out.push(format!(
                "gamma_e = {} MHz/T is less than 100·gamma_n; the NMR approximations assume gamma_e >> gamma_n",
                self.gamma_e
            ));
        }
        let from_g = self.g_factor * BOHR_MAGNETON_MHZ_PER_T;
        if from_g > 0.0 && ((self.gamma_e - from_g) / from_g).abs() > 1e-2 {
            out.push(format!(
                "gamma_e = {} MHz/T disagrees with g_factor = {} (expected {:.2} MHz/T)",
                self.gamma_e, self.g_factor, from_g
            ));
        }
        out
    }

    /// Magnetic field in Tesla for the cyclotron ratio `x = ω_c/ω₀`.
    pub fn b_field_from_ratio(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        x * self.hbar_omega0 * self.mstar_ratio / CYCLOTRON_MEV_PER_T
    }

    /// Inverse of [`DotConfig::b_field_from_ratio`].
    pub fn ratio_from_b_field(&self, b_tesla: f64) -> f64 {
        b_tesla * CYCLOTRON_MEV_PER_T / (self.hbar_omega0 * self.mstar_ratio)
    }

    /// Electron Zeeman energy g·μ_B·B over ħω₀.
    pub fn zeeman_ratio(&self, x: f64) -> f64 {
        0.5 * self.g_factor * self.mstar_ratio * x
    }

    pub fn field_point(&self, x: f64) -> FieldPoint {
        FieldPoint {
            x,
            b_tesla: self.b_field_from_ratio(x),
        }
    }
}

/// A point on the field axis in both representations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldPoint {
    pub x: f64,
    pub b_tesla: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn default_config_is_valid() {
        let cfg = DotConfig::default();
        assert_eq!(cfg.validate().unwrap(), cfg);
        assert_eq!(cfg.hyperfine_c, 60.0);
        assert_eq!(cfg.alpha_tilde, 3.0);
        assert!(cfg.warnings().is_empty());
    }

    #[test]
    fn rejects_bad_fields() {
        let cases: [(DotConfig, &str); 6] = [
            (
                DotConfig {
                    hbar_omega0: 0.0,
                    ..Default::default()
                },
                "hbar_omega0",
            ),
            (
                DotConfig {
                    gamma_n: -1.0,
                    ..Default::default()
                },
                "gamma_n",
            ),
            (
                DotConfig {
                    mstar_ratio: -0.1,
                    ..Default::default()
                },
                "mstar_ratio",
            ),
            (
                DotConfig {
                    gamma_e: 5.0,
                    ..Default::default()
                },
                "gamma_e",
            ),
            (
                DotConfig {
                    alpha_tilde: -0.5,
                    ..Default::default()
                },
                "alpha_tilde",
            ),
            (
                DotConfig {
                    m_max: 4,
                    ..Default::default()
                },
                "m_max",
            ),
        ];
        for (cfg, field) in cases {
            assert_eq!(cfg.validate().unwrap_err().field, field);
        }
        let nan = DotConfig {
            hyperfine_c: f64::NAN,
            ..Default::default()
        };
        assert_eq!(nan.validate().unwrap_err().field, "hyperfine_c");
    }

    #[test]
    fn weak_electron_ratio_warns() {
        let cfg = DotConfig {
            gamma_e: 50.0 * 10.7084,
            ..Default::default()
        };
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.warnings().len(), 2);
    }

    #[test]
    fn field_conversion() {
        let unit = DotConfig {
            hbar_omega0: 1.0,
            mstar_ratio: 1.0,
            ..Default::default()
        };
        assert_relative_eq!(unit.b_field_from_ratio(1.0), 8.637_992_737_136, max_relative = 1e-12);
        let cfg = DotConfig::default();
        assert_relative_eq!(cfg.b_field_from_ratio(0.39584), 1.624_149_946_4, max_relative = 1e-10);
        assert_eq!(cfg.b_field_from_ratio(0.0), 0.0);
        for x in [0.1, 0.7, 3.3] {
            assert_eq!(cfg.b_field_from_ratio(2.0 * x), 2.0 * cfg.b_field_from_ratio(x));
            assert_relative_eq!(
                cfg.ratio_from_b_field(cfg.b_field_from_ratio(x)),
                x,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn zeeman_ratio_values() {
        let cfg = DotConfig {
            g_factor: 2.0,
            mstar_ratio: 0.19,
            ..Default::default()
        };
        assert_relative_eq!(cfg.zeeman_ratio(1.0), 0.19, max_relative = 1e-15);
        let heavy = DotConfig {
            g_factor: 2.0,
            mstar_ratio: 1.0,
            ..Default::default()
        };
        assert_eq!(heavy.zeeman_ratio(2.0), 2.0);
        let zero = DotConfig {
            g_factor: 0.0,
            ..Default::default()
        };
        assert_eq!(zero.zeeman_ratio(4.2), 0.0);
    }

    #[test]
    fn zeeman_matches_gyromagnetic_energy() {
        for g in [1.0, 2.0, 2.0023] {
            let cfg = DotConfig {
                g_factor: g,
                gamma_e: g * BOHR_MAGNETON_MHZ_PER_T,
                ..Default::default()
            };
            for x in [0.3, 1.0, 4.0] {
                let lhs = cfg.zeeman_ratio(x) * cfg.hbar_omega0;
                let rhs = cfg.gamma_e * cfg.b_field_from_ratio(x) * PLANCK_MEV_PER_MHZ;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-3);
            }
        }
    }
}
