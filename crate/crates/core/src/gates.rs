//! Radio-frequency control of nuclear qubits.
//!
//! Qubit convention: |0⟩ is spin up (σ_z = +1). A qubit with Larmor frequency
//! f driven at `carrier` with Rabi frequency Ω and phase φ has, in the frame
//! rotating at the carrier and keeping only the co-rotating drive term,
//!
//! ```text
//! H_rot = ½(f − carrier)·σ_z + ½Ω·(cos φ·σ_x + sin φ·σ_y)      [MHz]
//! ```
//!
//! Two-qubit conditionality is a stand-in model: the resonance of one qubit
//! moves by −J or +J when the other qubit is |0⟩ or |1⟩. The shift J is a free
//! parameter, not derived from dot geometry.
//!
//! Register ordering is |q₀ q₁⟩ with q₀ the most significant bit.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{evolve, CMatrix, HermitianMatrix, Ket};

const UNITARY_TOL: f64 = 1e-9;
const AXIS_TOL: f64 = 1e-12;

/// Default state-dependent resonance shift, MHz (1 kHz).
pub const DEFAULT_J_MHZ: f64 = 1e-3;

/// Coarse Z-phase grid per axis before golden-section refinement.
const PHASE_GRID: usize = 256;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_rows(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_diag(&[1.0, -1.0])
}

/// CNOT with qubit 0 as control and qubit 1 as target.
pub fn cnot() -> CMatrix {
    CMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// Rectangular RF pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseSpec {
    /// Carrier frequency, MHz.
    pub carrier: f64,
    /// Rabi frequency Ω/2π, MHz.
    pub rabi: f64,
    /// Drive phase, rad.
    pub phase: f64,
    /// Duration, µs.
    pub duration: f64,
}

impl PulseSpec {
    pub fn new(carrier: f64, rabi: f64, phase: f64, duration: f64) -> Result<Self> {
        if !(rabi > 0.0 && rabi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "Rabi frequency must be > 0, got {rabi}"
            )));
        }
        if !(duration >= 0.0 && duration.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "pulse duration must be >= 0, got {duration}"
            )));
        }
        Ok(Self {
            carrier,
            rabi,
            phase,
            duration,
        })
    }

    /// Resonant π pulse: duration 1/(2Ω).
    pub fn pi_pulse(carrier: f64, rabi: f64) -> Result<Self> {
        Self::new(carrier, rabi, 0.0, 0.5 / rabi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitModel {
    pub f_a: f64,
    pub f_b: f64,
    /// State-dependent resonance shift, MHz.
    pub j_coupling: f64,
}

impl TwoQubitModel {
    pub fn new(f_a: f64, f_b: f64, j_coupling: f64) -> Result<Self> {
        if !(f_a > 0.0 && f_b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Larmor frequencies must be > 0, got {f_a}, {f_b}"
            )));
        }
        if j_coupling.is_nan() || j_coupling.abs() >= f_a.min(f_b) / 10.0 {
            return Err(Error::InvalidArgument(format!(
                "|J| = {} must stay below a tenth of the smaller Larmor frequency",
                j_coupling.abs()
            )));
        }
        Ok(Self { f_a, f_b, j_coupling })
    }

    fn larmor(&self, qubit: usize) -> f64 {
        if qubit == 0 {
            self.f_a
        } else {
            self.f_b
        }
    }

    /// Target resonance when the other qubit is in `other_state`.
    pub fn branch_frequency(&self, target: usize, other_state: usize) -> f64 {
        let f = self.larmor(target);
        if other_state == 0 {
            f - self.j_coupling
        } else {
            f + self.j_coupling
        }
    }
}

/// What a pulse acts on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Register {
    Single { larmor: f64 },
    Pair(TwoQubitModel),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateReport {
    /// Average gate fidelity after Z-phase correction.
    pub fidelity: f64,
    /// Fidelity of the bare pulse.
    pub uncorrected_fidelity: f64,
    /// Probability that the target flips while the control is |0⟩.
    pub residual_offresonant_population: f64,
    pub corrected: bool,
    /// Z-rotation angles applied after the pulse to control and target, rad.
    pub control_phase: f64,
    pub target_phase: f64,
}

/// exp(−i·angle·n·σ/2).
pub fn rotate_qubit(axis: [f64; 3], angle: f64) -> Result<CMatrix> {
    let norm = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > AXIS_TOL {
        return Err(Error::NonUnitAxis { norm });
    }
    let (s, co) = (0.5 * angle).sin_cos();
    let [nx, ny, nz] = axis;
    Ok(CMatrix::from_rows(&[
        [c(co, -s * nz), c(-s * ny, -s * nx)],
        [c(s * ny, -s * nx), c(co, s * nz)],
    ]))
}

/// Hadamard gate with no global phase: |0⟩ → (|0⟩+|1⟩)/√2, |1⟩ → (|0⟩−|1⟩)/√2.
///
/// Equals `i·rotate_qubit((x+z)/√2, π)`.
pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_real_rows(&[[h, h], [h, -h]])
}

/// Rotating-frame propagator of one driven two-level system.
///
/// Generalized Rabi precession at Ω' = sqrt(δ² + Ω²) about (Ω cos φ, Ω sin φ, δ)/Ω'.
pub fn rwa_two_level(larmor: f64, pulse: &PulseSpec) -> CMatrix {
    let delta = larmor - pulse.carrier;
    let omega = (delta * delta + pulse.rabi * pulse.rabi).sqrt();
    let axis = [
        pulse.rabi * pulse.phase.cos() / omega,
        pulse.rabi * pulse.phase.sin() / omega,
        delta / omega,
    ];
    let (s, co) = (PI * omega * pulse.duration).sin_cos();
    let [nx, ny, nz] = axis;
    CMatrix::from_rows(&[
        [c(co, -s * nz), c(-s * ny, -s * nx)],
        [c(s * ny, -s * nx), c(co, s * nz)],
    ])
}

/// Register propagator of a pulse addressed at qubit `target`.
///
/// Each state of the other qubit sees its own detuning, so the result is
/// block diagonal in that qubit.
pub fn rwa_pulse(register: &Register, pulse: &PulseSpec, target: usize) -> Result<CMatrix> {
    match register {
        Register::Single { larmor } => {
            if target != 0 {
                return Err(Error::InvalidArgument(format!(
                    "single-qubit register has no qubit {target}"
                )));
            }
            Ok(rwa_two_level(*larmor, pulse))
        }
        Register::Pair(model) => {
            if target > 1 {
                return Err(Error::InvalidArgument(format!(
                    "two-qubit register has no qubit {target}"
                )));
            }
            let mut u = CMatrix::zeros(4);
            for other in 0..2 {
                let block = rwa_two_level(model.branch_frequency(target, other), pulse);
                for i in 0..2 {
                    for j in 0..2 {
                        let (row, col) = if target == 1 {
                            (2 * other + i, 2 * other + j)
                        } else {
                            (2 * i + other, 2 * j + other)
                        };
                        u[(row, col)] = block[(i, j)];
                    }
                }
            }
            Ok(u)
        }
    }
}

/// Average gate fidelity (|Tr(U_ideal†·U)|² + d)/(d² + d).
pub fn gate_fidelity(u_actual: &CMatrix, u_ideal: &CMatrix) -> Result<f64> {
    if u_actual.dim() != u_ideal.dim() {
        return Err(Error::DimensionMismatch {
            expected: u_ideal.dim(),
            got: u_actual.dim(),
        });
    }
    for u in [u_actual, u_ideal] {
        let deviation = u.unitarity_error();
        if deviation > UNITARY_TOL {
            return Err(Error::NonUnitary { deviation });
        }
    }
    let d = u_ideal.dim() as f64;
    let tr = (&u_ideal.adjoint() * u_actual).trace();
    Ok((tr.norm_sqr() + d) / (d * d + d))
}

/// Selective π pulse on qubit b at its control-|1⟩ resonance, compared with CNOT(a → b).
///
/// The pulse leaves deterministic Z phases on both qubits; these are removed by
/// post-pulse Z rotations chosen to maximize the fidelity (256² grid, then
/// alternating golden-section searches).
pub fn cnot_conditional(model: &TwoQubitModel, rabi_over_j: f64) -> Result<GateReport> {
    if model.j_coupling == 0.0 {
        return Err(Error::DegenerateModel(
            "J = 0 makes the target resonance independent of the control".into(),
        ));
    }
    if !(rabi_over_j > 0.0 && rabi_over_j <= 2.0) {
        return Err(Error::InvalidArgument(format!(
            "rabi/J must lie in (0, 2], got {rabi_over_j}"
        )));
    }
    let rabi = rabi_over_j * model.j_coupling.abs();
    let pulse = PulseSpec::pi_pulse(model.branch_frequency(1, 1), rabi)?;
    let u = rwa_pulse(&Register::Pair(*model), &pulse, 1)?;
    let ideal = cnot();
    let uncorrected_fidelity = gate_fidelity(&u, &ideal)?;

    // Tr(C†·(Rz_a ⊗ Rz_b)·U) = Σ_i diag(U·C†)_i · e^{−i(γ·s_a + β·s_b)/2}
    let uc = &u * &ideal.adjoint();
    let diag: Vec<C64> = (0..4).map(|i| uc[(i, i)]).collect();
    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    let score = |g: f64, b: f64| -> f64 {
        diag.iter()
            .zip(signs)
            .map(|(d, (sa, sb))| d * C64::from_polar(1.0, -0.5 * (g * sa + b * sb)))
            .sum::<C64>()
            .norm_sqr()
    };

    let cell = TAU / PHASE_GRID as f64;
    let (mut g, mut b, mut best) = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..PHASE_GRID {
        for j in 0..PHASE_GRID {
            let (gi, bj) = (cell * i as f64, cell * j as f64);
            let s = score(gi, bj);
            if s > best {
                (g, b, best) = (gi, bj, s);
            }
        }
    }
    for _ in 0..8 {
        g = golden_max(|t| score(t, b), g - cell, g + cell);
        b = golden_max(|t| score(g, t), b - cell, b + cell);
    }
    let best = score(g, b).max(best);

    Ok(GateReport {
        fidelity: ((best + 4.0) / 20.0).min(1.0),
        uncorrected_fidelity,
        residual_offresonant_population: 0.5 * (u[(1, 0)].norm_sqr() + u[(0, 1)].norm_sqr()),
        corrected: true,
        control_phase: g.rem_euclid(TAU),
        target_phase: b.rem_euclid(TAU),
    })
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Slice density for lab-frame checks: 100 slices per carrier cycle at carrier/Ω = 10³.
pub const LAB_SLICES_PER_RABI_PERIOD: usize = 100_000;

/// Lab-frame evolution of |0⟩ under H(t) = ½f·σ_z + Ω·cos(2π·carrier·t + φ)·σ_x,
/// integrated as piecewise-constant slices (midpoint samples) with
/// `slices_per_rabi_period` slices per 1/Ω. Used to check the rotating-wave propagator.
pub fn lab_frame_evolution(larmor: f64, pulse: &PulseSpec, slices_per_rabi_period: usize) -> Result<Ket> {
    let n = ((pulse.duration * pulse.rabi * slices_per_rabi_period as f64).ceil() as usize).max(1);
    let dt = pulse.duration / n as f64;
    let mut psi = Ket::basis(2, 0);
    for k in 0..n {
        let t_mid = (k as f64 + 0.5) * dt;
        let drive = pulse.rabi * (TAU * pulse.carrier * t_mid + pulse.phase).cos();
        let h = HermitianMatrix::from_real_rows(&[[0.5 * larmor, drive], [drive, -0.5 * larmor]])?;
        psi = evolve(&h, &psi, dt)?;
    }
    Ok(psi)
}
