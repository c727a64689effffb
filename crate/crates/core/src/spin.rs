//! Nuclear ⊗ electron-pair spin Hamiltonian for a fixed orbital ground state
//! and the resulting nuclear resonance frequency.
//!
//! In frequency units (MHz):
//!
//! ```text
//! H = A·[(I₊S₋ + I₋S₊) + 2·I_z·S_z] − γ_n·B·I_z + γ_e·B·S_z
//! ```
//!
//! H conserves F_z = I_z + S_z. The nuclear line observed for a triplet pair is
//! the F_z = −3/2 → F_z = −½ transition between |−;1,−1⟩ and the mixed state
//! c₁|+;1,−1⟩ + c₂|−;1,0⟩.

use std::fmt;

use serde::Serialize;

use crate::config::DotConfig;
use crate::error::{Error, Result};
use crate::hyperfine::coupling_a;
use crate::numerics::{hermitian_eig, CMatrix, HermitianMatrix};
use crate::spectrum::ground_state_at;

const SELECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NuclearSpin {
    Up,
    Down,
}

impl NuclearSpin {
    pub fn i_z(self) -> f64 {
        match self {
            NuclearSpin::Up => 0.5,
            NuclearSpin::Down => -0.5,
        }
    }
}

/// Basis label |I_z; S, S_z⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SpinBasisLabel {
    pub nucleus: NuclearSpin,
    pub s_total: u8,
    pub s_z: i8,
}

impl SpinBasisLabel {
    pub fn new(nucleus: NuclearSpin, s_total: u8, s_z: i8) -> Result<Self> {
        if s_total > 1 || s_z.unsigned_abs() > s_total {
            return Err(Error::InvalidArgument(format!(
                "illegal spin label S = {s_total}, S_z = {s_z}"
            )));
        }
        Ok(Self { nucleus, s_total, s_z })
    }

    pub fn i_z(&self) -> f64 {
        self.nucleus.i_z()
    }

    pub fn f_z(&self) -> f64 {
        self.i_z() + f64::from(self.s_z)
    }

    /// Basis of one electron multiplet, ordered by descending F_z then descending I_z.
    pub fn basis(s_total: u8) -> Vec<SpinBasisLabel> {
        let s = s_total as i8;
        let mut out: Vec<SpinBasisLabel> = (-s..=s)
            .flat_map(|s_z| {
                [NuclearSpin::Up, NuclearSpin::Down].map(|nucleus| SpinBasisLabel { nucleus, s_total, s_z })
            })
            .collect();
        out.sort_by(|a, b| b.f_z().total_cmp(&a.f_z()).then(b.i_z().total_cmp(&a.i_z())));
        out
    }
}

impl fmt::Display for SpinBasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self.nucleus {
            NuclearSpin::Up => '+',
            NuclearSpin::Down => '-',
        };
        write!(f, "|{n};{},{:+}>", self.s_total, self.s_z)
    }
}

/// Spin Hamiltonian with its basis labels.
#[derive(Debug, Clone)]
pub struct SpinMatrix {
    pub matrix: HermitianMatrix,
    pub labels: Vec<SpinBasisLabel>,
}

impl SpinMatrix {
    pub fn index_of(&self, label: SpinBasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn element(&self, bra: SpinBasisLabel, ket: SpinBasisLabel) -> Option<f64> {
        let (i, j) = (self.index_of(bra)?, self.index_of(ket)?);
        Some(self.matrix[(i, j)].re)
    }
}

/// ⟨S, S_z ± 1| S_± |S, S_z⟩.
fn ladder(s_total: u8, s_z: i8, raise: bool) -> f64 {
    let s = f64::from(s_total);
    let m = f64::from(s_z);
    let shifted = if raise { m + 1.0 } else { m - 1.0 };
    (s * (s + 1.0) - m * shifted).max(0.0).sqrt()
}

fn matrix_element(bra: &SpinBasisLabel, ket: &SpinBasisLabel, a_mhz: f64, b_tesla: f64, cfg: &DotConfig) -> f64 {
    if bra.s_total != ket.s_total {
        return 0.0;
    }
    if bra == ket {
        let (iz, sz) = (ket.i_z(), f64::from(ket.s_z));
        return a_mhz * 2.0 * iz * sz - cfg.gamma_n * b_tesla * iz + cfg.gamma_e * b_tesla * sz;
    }
    // I₊S₋: nucleus down→up, electron S_z lowered
    if ket.nucleus == NuclearSpin::Down && bra.nucleus == NuclearSpin::Up && bra.s_z == ket.s_z - 1 {
        return a_mhz * ladder(ket.s_total, ket.s_z, false);
    }
    // I₋S₊
    if ket.nucleus == NuclearSpin::Up && bra.nucleus == NuclearSpin::Down && bra.s_z == ket.s_z + 1 {
        return a_mhz * ladder(ket.s_total, ket.s_z, true);
    }
    0.0
}

/// Builds the spin Hamiltonian (MHz) for coupling `a_mhz` and field `b_tesla`.
///
/// A triplet gives a 6×6 matrix; a singlet gives the 2×2 nuclear Zeeman block
/// because singlet electrons do not couple to the nucleus.
pub fn build_spin_matrix(a_mhz: f64, b_tesla: f64, cfg: &DotConfig, s_total: u8) -> Result<SpinMatrix> {
    if !(a_mhz >= 0.0 && b_tesla >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "spin Hamiltonian needs A >= 0 and B >= 0, got A = {a_mhz}, B = {b_tesla}"
        )));
    }
    if s_total > 1 {
        return Err(Error::InvalidArgument(format!(
            "total electron spin must be 0 or 1, got {s_total}"
        )));
    }
    let a = if s_total == 0 { 0.0 } else { a_mhz };
    let labels = SpinBasisLabel::basis(s_total);
    let n = labels.len();
    let mut m = CMatrix::zeros(n);
    for (i, bra) in labels.iter().enumerate() {
        for (j, ket) in labels.iter().enumerate() {
            m[(i, j)].re = matrix_element(bra, ket, a, b_tesla, cfg);
        }
    }
    Ok(SpinMatrix {
        matrix: HermitianMatrix::new(m)?,
        labels,
    })
}

/// hν_NMR = 3A/2 + ½(γ_n − γ_e)B + ½·sqrt([A + (γ_n + γ_e)B]² + 8A²).
pub fn nmr_closed_form(a_mhz: f64, b_tesla: f64, cfg: &DotConfig) -> f64 {
    let a = a_mhz;
    let sum = a + (cfg.gamma_n + cfg.gamma_e) * b_tesla;
    1.5 * a + 0.5 * (cfg.gamma_n - cfg.gamma_e) * b_tesla + 0.5 * (sum * sum + 8.0 * a * a).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NmrResult {
    /// From diagonalizing the 6×6 Hamiltonian, MHz.
    pub f_nmr: f64,
    /// Closed form, MHz.
    pub f_closed: f64,
    /// Amplitude on |+;1,−1⟩.
    pub c1: f64,
    /// Amplitude on |−;1,0⟩.
    pub c2: f64,
    /// Bare Larmor frequency γ_n·B, MHz.
    pub f0: f64,
}

/// Diagonalizes the triplet Hamiltonian and extracts the nuclear line.
///
/// The mixed state is the F_z = −½ eigenvector with the larger weight on
/// |+;1,−1⟩, which stays well defined as the level order flips near B = 0.
/// The frequency is E(|−;1,−1⟩) − E(mixed).
pub fn nmr_numeric(a_mhz: f64, b_tesla: f64, cfg: &DotConfig) -> Result<NmrResult> {
    let sm = build_spin_matrix(a_mhz, b_tesla, cfg, 1)?;
    let es = hermitian_eig(&sm.matrix)?;
    let lbl = |nucleus, s_z| SpinBasisLabel {
        nucleus,
        s_total: 1,
        s_z,
    };
    let idx = |l| sm.index_of(l).expect("triplet basis label");
    let bottom = idx(lbl(NuclearSpin::Down, -1));
    let up_m1 = idx(lbl(NuclearSpin::Up, -1));
    let down_0 = idx(lbl(NuclearSpin::Down, 0));

    let n = es.dim();
    let weight = |k: usize, i: usize| es.vectors[(i, k)].norm_sqr();
    let k_bottom = (0..n)
        .max_by(|&p, &q| weight(p, bottom).total_cmp(&weight(q, bottom)))
        .expect("non-empty spectrum");

    let mut block: Vec<usize> = (0..n)
        .filter(|&k| k != k_bottom && weight(k, up_m1) + weight(k, down_0) > 0.5)
        .collect();
    block.sort_by(|&p, &q| weight(q, up_m1).total_cmp(&weight(p, up_m1)));
    let (k_psi, runner_up) = match block.as_slice() {
        [first, second, ..] => (*first, Some(*second)),
        [first] => (*first, None),
        [] => return Err(Error::DegenerateSelection),
    };
    if let Some(r) = runner_up {
        if (weight(k_psi, up_m1) - weight(r, up_m1)).abs() <= SELECTION_TOL {
            return Err(Error::DegenerateSelection);
        }
    }

    Ok(NmrResult {
        f_nmr: es.values[k_bottom] - es.values[k_psi],
        f_closed: nmr_closed_form(a_mhz, b_tesla, cfg),
        c1: es.vectors[(up_m1, k_psi)].re,
        c2: es.vectors[(down_0, k_psi)].re,
        f0: cfg.gamma_n * b_tesla,
    })
}

/// NMR frequency of the nucleus for the orbital ground state at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NmrAtField {
    pub x: f64,
    pub b_tesla: f64,
    pub m_abs: u32,
    pub s_total: u8,
    pub a_mhz: f64,
    pub f0: f64,
    pub f_nmr: f64,
    /// (f_nmr − f0)/f0, exactly 0 for a singlet ground state.
    pub shift: f64,
    /// Mixing amplitudes; (1, 0) for a singlet.
    pub c1: f64,
    pub c2: f64,
}

pub fn nmr_at_field(cfg: &DotConfig, x: f64, ir_excited: bool) -> Result<NmrAtField> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "relative NMR shift needs x > 0 (B = 0 leaves the bare line undefined), got {x}"
        )));
    }
    let b = cfg.b_field_from_ratio(x);
    let ground = ground_state_at(cfg, x);
    let f0 = cfg.gamma_n * b;
    if ground.s_total == 0 {
        return Ok(NmrAtField {
            x,
            b_tesla: b,
            m_abs: ground.m_abs,
            s_total: 0,
            a_mhz: 0.0,
            f0,
            f_nmr: f0,
            shift: 0.0,
            c1: 1.0,
            c2: 0.0,
        });
    }
    let a = coupling_a(cfg, x, ground.m_abs, ground.s_total, ir_excited)?;
    let r = nmr_numeric(a, b, cfg)?;
    Ok(NmrAtField {
        x,
        b_tesla: b,
        m_abs: ground.m_abs,
        s_total: ground.s_total,
        a_mhz: a,
        f0,
        f_nmr: r.f_nmr,
        shift: (r.f_nmr - f0) / f0,
        c1: r.c1,
        c2: r.c2,
    })
}

/// Relative NMR shift (ν_NMR − γ_nB)/γ_nB at cyclotron ratio `x`.
pub fn relative_shift(cfg: &DotConfig, x: f64, ir_excited: bool) -> Result<f64> {
    Ok(nmr_at_field(cfg, x, ir_excited)?.shift)
}
