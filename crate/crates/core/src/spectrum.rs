//! Two-electron orbital spectrum in a perpendicular field.
//!
//! The Hamiltonian separates into center-of-mass and relative motion. With an
//! inverse-square repulsion the relative problem stays solvable: the ground
//! Landau level (n = 0) with relative angular momentum m has
//!
//! ```text
//! E_rel / ħω₀ = ½·sqrt(x² + 4)·(1 + μ_m) − |m|·x/2,   μ_m = sqrt(m² + α̃)
//! ```
//!
//! Spatial antisymmetry ties the spin to the parity of m: even m is a singlet,
//! odd m a triplet whose S_z = −1 member is lowered by the Zeeman energy. The
//! center-of-mass ground energy is common to all (m, S) and is left out.

use std::fmt;

use serde::Serialize;

use crate::config::DotConfig;
use crate::error::{Error, Result};
use crate::numerics::bracket_roots;

/// Grid spacing in x used to detect ground-state changes before refinement.
const SCAN_STEP: f64 = 1e-3;

/// Orbital ground-state label (|m|, S).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitalLabel {
    pub m_abs: u32,
    pub s_total: u8,
}

impl OrbitalLabel {
    /// The label allowed by the parity rule for a given |m|.
    pub fn for_m(m_abs: u32) -> Self {
        Self {
            m_abs,
            s_total: (m_abs % 2) as u8,
        }
    }

    pub fn new(m_abs: u32, s_total: u8) -> Result<Self> {
        check_parity(m_abs, s_total)?;
        Ok(Self { m_abs, s_total })
    }

    pub fn is_triplet(&self) -> bool {
        self.s_total == 1
    }
}

impl fmt::Display for OrbitalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m_abs, self.s_total)
    }
}

pub(crate) fn check_parity(m_abs: u32, s_total: u8) -> Result<()> {
    if s_total > 1 || u32::from(s_total) != m_abs % 2 {
        return Err(Error::Parity { m_abs, s_total });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitalGround {
    pub x: f64,
    pub m_abs: u32,
    pub s_total: u8,
    /// E/ħω₀ without the center-of-mass constant.
    pub energy: f64,
    /// Set when the minimum sits at `m_max`, i.e. the search window may be too small.
    pub at_boundary: bool,
}

impl OrbitalGround {
    pub fn label(&self) -> OrbitalLabel {
        OrbitalLabel {
            m_abs: self.m_abs,
            s_total: self.s_total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionPoint {
    pub x_star: f64,
    pub from: OrbitalLabel,
    pub to: OrbitalLabel,
}

pub fn mu_m(m_abs: u32, alpha_tilde: f64) -> f64 {
    let m = f64::from(m_abs);
    (m * m + alpha_tilde).sqrt()
}

/// ω/ω₀ = sqrt(x² + 4), the effective frequency of the confined cyclotron motion.
pub fn effective_omega_ratio(x: f64) -> f64 {
    (x * x + 4.0).sqrt()
}

pub fn rel_ground_energy(m_abs: u32, alpha_tilde: f64, x: f64) -> f64 {
    0.5 * effective_omega_ratio(x) * (1.0 + mu_m(m_abs, alpha_tilde)) - 0.5 * f64::from(m_abs) * x
}

pub fn total_ground_energy(m_abs: u32, s_total: u8, cfg: &DotConfig, x: f64) -> Result<f64> {
    check_parity(m_abs, s_total)?;
    Ok(label_energy(OrbitalLabel { m_abs, s_total }, cfg, x))
}

fn label_energy(label: OrbitalLabel, cfg: &DotConfig, x: f64) -> f64 {
    let spin = if label.is_triplet() { -cfg.zeeman_ratio(x) } else { 0.0 };
    rel_ground_energy(label.m_abs, cfg.alpha_tilde, x) + spin
}

/// Lowest (|m|, S) over |m| ∈ [0, m_max]; ties go to the smaller |m|.
pub fn ground_state_at(cfg: &DotConfig, x: f64) -> OrbitalGround {
    debug_assert!(x >= 0.0);
    let mut best = OrbitalLabel::for_m(0);
    let mut best_e = label_energy(best, cfg, x);
    for m in 1..=cfg.m_max {
        let label = OrbitalLabel::for_m(m);
        let e = label_energy(label, cfg, x);
        if e < best_e {
            best = label;
            best_e = e;
        }
    }
    let at_boundary = best.m_abs == cfg.m_max;
    if at_boundary {
        log::warn!("ground state at x = {x} sits at m_max = {}; increase m_max", cfg.m_max);
    }
    OrbitalGround {
        x,
        m_abs: best.m_abs,
        s_total: best.s_total,
        energy: best_e,
        at_boundary,
    }
}

/// All ground-state changes in `[x_lo, x_hi]`, ascending in x.
///
/// Changes are detected on a 1e-3 grid and each crossing is refined by
/// bisection on the energy difference of the two competing labels.
pub fn magic_transitions(cfg: &DotConfig, x_lo: f64, x_hi: f64) -> Result<Vec<TransitionPoint>> {
    if !(x_lo >= 0.0 && x_lo < x_hi && x_hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "transition window needs 0 <= x_lo < x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    let n = (((x_hi - x_lo) / SCAN_STEP).ceil() as usize).max(1) + 1;
    let step = (x_hi - x_lo) / (n - 1) as f64;
    let at = |i: usize| if i == n - 1 { x_hi } else { x_lo + step * i as f64 };

    let mut out = Vec::new();
    let mut a = x_lo;
    let mut la = ground_state_at(cfg, a).label();
    for i in 1..n {
        let b = at(i);
        let lb = ground_state_at(cfg, b).label();
        if lb != la {
            locate(cfg, a, b, la, lb, &mut out, 0);
        }
        a = b;
        la = lb;
    }
    Ok(out)
}

fn locate(
    cfg: &DotConfig,
    a: f64,
    b: f64,
    from: OrbitalLabel,
    to: OrbitalLabel,
    out: &mut Vec<TransitionPoint>,
    depth: usize,
) {
    let diff = |x: f64| label_energy(from, cfg, x) - label_energy(to, cfg, x);
    let roots = bracket_roots(diff, a, b, 2);
    let Some(&x_star) = roots.first() else {
        // crossing of non-adjacent labels without a sign change: split the cell
        if depth < 40 {
            let mid = 0.5 * (a + b);
            let lm = ground_state_at(cfg, mid).label();
            if lm != from {
                locate(cfg, a, mid, from, lm, out, depth + 1);
            }
            if lm != to {
                locate(cfg, mid, b, lm, to, out, depth + 1);
            }
        }
        return;
    };
    let here = ground_state_at(cfg, x_star).label();
    if here != from && here != to && depth < 40 {
        // a third label undercuts both at the crossing
        locate(cfg, a, x_star, from, here, out, depth + 1);
        locate(cfg, x_star, b, here, to, out, depth + 1);
        return;
    }
    debug_assert!(to.m_abs > from.m_abs);
    out.push(TransitionPoint { x_star, from, to });
}
