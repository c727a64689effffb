use num_complex::Complex64 as C64;

use super::eigen::hermitian_eig;
use super::matrix::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

const KET_NORM_TOL: f64 = 1e-9;

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(Vec<C64>);

impl Ket {
    /// Wraps `amplitudes`, rejecting vectors whose norm is not 1 within 1e-9.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = norm(&amplitudes);
        if amplitudes.is_empty() || (norm - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::InvalidArgument(format!("ket norm is {norm}, expected 1")));
        }
        Ok(Self(amplitudes))
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let norm = norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self(amplitudes))
    }

    /// Computational basis state |index⟩ of a `dim`-level system.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[index] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn population(&self, index: usize) -> f64 {
        self.0[index].norm_sqr()
    }

    pub fn overlap(&self, other: &Ket) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies `u` without renormalizing.
    pub fn apply(&self, u: &CMatrix) -> Result<Ket> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                got: self.dim(),
            });
        }
        Ok(Ket(u.mul_vec(&self.0)))
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Propagator exp(-i·2π·H·t), H in MHz, t in µs.
pub fn propagator(h: &HermitianMatrix, t: f64) -> Result<CMatrix> {
    Ok(hermitian_eig(h)?.propagator(t))
}

/// ψ(t) = V·exp(-i·2π·λ·t)·V†·ψ(0) for a time-independent H.
pub fn evolve(h: &HermitianMatrix, psi: &Ket, t: f64) -> Result<Ket> {
    if h.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: psi.dim(),
        });
    }
    psi.apply(&propagator(h, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_ket(rng: &mut ChaCha8Rng, n: usize) -> Ket {
        Ket::normalized(
            (0..n)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    fn random_h(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(rng.gen_range(-3.0..3.0), 0.0);
            for j in (i + 1)..n {
                let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn zero_hamiltonian_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = random_ket(&mut rng, 5);
        let h = HermitianMatrix::new(CMatrix::zeros(5)).unwrap();
        assert_eq!(evolve(&h, &psi, 3.7).unwrap(), psi);
    }

    #[test]
    fn resonant_pi_pulse_transfers_population() {
        let rabi = 0.25;
        let h = HermitianMatrix::from_real_rows(&[[0.0, rabi / 2.0], [rabi / 2.0, 0.0]]).unwrap();
        let out = evolve(&h, &Ket::basis(2, 0), 1.0 / (2.0 * rabi)).unwrap();
        assert!(out.population(1) >= 1.0 - 1e-9);
    }

    #[test]
    fn energy_and_norm_conserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random_h(&mut rng, 6);
        let psi = random_ket(&mut rng, 6);
        let e0 = h.expectation(psi.amplitudes());
        for t in [0.01, 0.3, 2.5, 17.0] {
            let out = evolve(&h, &psi, t).unwrap();
            assert_abs_diff_eq!(out.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(h.expectation(out.amplitudes()), e0, epsilon = 1e-10);
        }
    }

    #[test]
    fn group_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_h(&mut rng, 4);
        let psi = random_ket(&mut rng, 4);
        let (t1, t2) = (0.37, 1.91);
        let direct = evolve(&h, &psi, t1 + t2).unwrap();
        let stepped = evolve(&h, &evolve(&h, &psi, t1).unwrap(), t2).unwrap();
        for (a, b) in direct.amplitudes().iter().zip(stepped.amplitudes()) {
            assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let h = HermitianMatrix::new(CMatrix::identity(3)).unwrap();
        assert!(matches!(
            evolve(&h, &Ket::basis(2, 0), 1.0),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn ket_validation() {
        assert!(Ket::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).is_err());
        assert!(Ket::normalized(vec![C64::new(0.0, 0.0)]).is_err());
    }
}
