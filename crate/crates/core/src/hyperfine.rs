//! Contact hyperfine coupling between the electron pair and the central nucleus.
//!
//! Densities are reported in units of 1/l₀² (l₀ the oscillator length), so the
//! magnetic-length factor l₀²/l² = ω/ω₀ = sqrt(x² + 4) appears explicitly.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::DotConfig;
use crate::error::Result;
use crate::spectrum::{check_parity, effective_omega_ratio, mu_m};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingPoint {
    pub x: f64,
    pub m_abs: u32,
    /// Electron density at the nucleus, Δ·l₀²; zero for singlets.
    pub delta_l0sq: f64,
    /// A(m)/h in MHz.
    pub a_mhz: f64,
    pub ir_excited: bool,
}

/// Δ(m)·l₀² = sqrt(x² + 4) / (π·2^(1+μ_m)).
pub fn delta_m(cfg: &DotConfig, x: f64, m_abs: u32) -> f64 {
    let mu = mu_m(m_abs, cfg.alpha_tilde);
    effective_omega_ratio(x) / (PI * (1.0 + mu).exp2())
}

/// Center-of-mass renormalization (1 + μ_m)/2 applied under IR excitation.
pub fn cm_factor(cfg: &DotConfig, m_abs: u32) -> f64 {
    0.5 * (1.0 + mu_m(m_abs, cfg.alpha_tilde))
}

/// Density with the center of mass in its first excited state.
pub fn delta_cm(cfg: &DotConfig, x: f64, m_abs: u32) -> f64 {
    delta_m(cfg, x, m_abs) * cm_factor(cfg, m_abs)
}

/// Effective density seen by the nucleus: zero for a singlet pair.
pub fn effective_delta(cfg: &DotConfig, x: f64, m_abs: u32, s_total: u8, ir_excited: bool) -> Result<f64> {
    check_parity(m_abs, s_total)?;
    if s_total == 0 {
        return Ok(0.0);
    }
    Ok(if ir_excited {
        delta_cm(cfg, x, m_abs)
    } else {
        delta_m(cfg, x, m_abs)
    })
}

/// A(m)/h = ½·(C/l₀²)·Δ·l₀² in MHz; singlet electrons do not couple.
pub fn coupling_a(cfg: &DotConfig, x: f64, m_abs: u32, s_total: u8, ir_excited: bool) -> Result<f64> {
    Ok(0.5 * cfg.hyperfine_c * effective_delta(cfg, x, m_abs, s_total, ir_excited)?)
}

pub fn coupling_point(cfg: &DotConfig, x: f64, m_abs: u32, s_total: u8, ir_excited: bool) -> Result<CouplingPoint> {
    let delta_l0sq = effective_delta(cfg, x, m_abs, s_total, ir_excited)?;
    Ok(CouplingPoint {
        x,
        m_abs,
        delta_l0sq,
        a_mhz: 0.5 * cfg.hyperfine_c * delta_l0sq,
        ir_excited,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn non_interacting_gaussian_density() {
        let cfg = DotConfig {
            alpha_tilde: 0.0,
            ..Default::default()
        };
        assert_abs_diff_eq!(delta_m(&cfg, 0.0, 0), 1.0 / PI, epsilon = 1e-15);
    }

    #[test]
    fn default_onset_values() {
        let cfg = DotConfig::default();
        // sqrt(0.39584² + 4)/(8π)
        assert_relative_eq!(delta_m(&cfg, 0.39584, 1), 0.081_121_117_056_230, max_relative = 1e-12);
        assert_relative_eq!(
            coupling_a(&cfg, 0.39584, 1, 1, false).unwrap(),
            2.433_633_511_686_9,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            coupling_a(&cfg, 0.39584, 1, 1, true).unwrap(),
            3.650_450_267_530_4,
            max_relative = 1e-12
        );
    }

    #[test]
    fn jump_ratio() {
        let cfg = DotConfig::default();
        for x in [0.5, 2.1, 3.0] {
            assert_relative_eq!(
                delta_m(&cfg, x, 1) / delta_m(&cfg, x, 3),
                2.758_916_158_990_903,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn cm_factors() {
        let cfg = DotConfig::default();
        assert_eq!(cm_factor(&cfg, 1), 1.5);
        assert_abs_diff_eq!(cm_factor(&cfg, 3), 2.232_050_807_568_877, epsilon = 1e-15);
        let fixed = DotConfig {
            alpha_tilde: 0.0,
            ..Default::default()
        };
        assert_eq!(delta_cm(&fixed, 1.3, 1), delta_m(&fixed, 1.3, 1));
    }

    #[test]
    fn singlet_uncoupled() {
        let cfg = DotConfig::default();
        for x in [0.0, 0.2, 3.0] {
            assert_eq!(coupling_a(&cfg, x, 0, 0, false).unwrap(), 0.0);
            assert_eq!(coupling_a(&cfg, x, 2, 0, true).unwrap(), 0.0);
        }
        assert!(matches!(coupling_a(&cfg, 1.0, 1, 0, false), Err(Error::Parity { .. })));
        let p = coupling_point(&cfg, 1.0, 1, 1, false).unwrap();
        assert_eq!(p.a_mhz, 0.5 * cfg.hyperfine_c * p.delta_l0sq);
    }

    proptest! {
        #[test]
        fn geometric_factor_separates(x in 0.0f64..10.0, m in 0u32..12, alpha in 0.0f64..6.0) {
            let cfg = DotConfig { alpha_tilde: alpha, ..Default::default() };
            let scaled = delta_m(&cfg, x, m) * 2.0 / effective_omega_ratio(x);
            let at_zero = delta_m(&cfg, 0.0, m);
            prop_assert!((scaled - at_zero).abs() <= 1e-12 * at_zero);
        }

        #[test]
        fn drop_across_transition(x in 0.0f64..10.0, m in 0u32..10, dm in 1u32..4, alpha in 0.0f64..6.0) {
            let cfg = DotConfig { alpha_tilde: alpha, ..Default::default() };
            let m2 = m + dm;
            let ratio = delta_m(&cfg, x, m) / delta_m(&cfg, x, m2);
            let want = (mu_m(m2, alpha) - mu_m(m, alpha)).exp2();
            prop_assert!((ratio - want).abs() <= 1e-10 * want);
        }

        #[test]
        fn cm_never_below_ground_when_mu_ge_one(x in 0.0f64..10.0, m in 1u32..12, alpha in 0.0f64..6.0) {
            let cfg = DotConfig { alpha_tilde: alpha, ..Default::default() };
            prop_assert!(delta_cm(&cfg, x, m) >= delta_m(&cfg, x, m));
        }
    }
}
