//! Cyclic complex Jacobi eigensolver for small Hermitian matrices.

use num_complex::Complex64 as C64;

use super::matrix::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Iteration cap, in full cyclic sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal convergence threshold relative to the Frobenius norm of H.
const OFF_DIAG_REL_TOL: f64 = 1e-14;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
///
/// Each eigenvector's largest-magnitude component is real and positive.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// V·diag(λ)·V†.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                    .sum();
            }
        }
        out
    }

    /// exp(-i·2π·H·t) for H in MHz and t in µs.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let n = self.dim();
        let phases: Vec<C64> = self
            .values
            .iter()
            .map(|&l| C64::from_polar(1.0, -std::f64::consts::TAU * l * t))
            .collect();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| self.vectors[(i, k)] * phases[k] * self.vectors[(j, k)].conj())
                    .sum();
            }
        }
        out
    }
}

fn frobenius(m: &CMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal(m: &CMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes `h` by cyclic Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair (p, q). The 2×2 block
/// `[[a, b], [b*, d]]` with `b = |b|e^{iφ}` equals `D·R·D†`-conjugated real
/// block, `D = diag(1, e^{-iφ})`, so the complex rotation is `D·R` with the
/// usual real Jacobi angle `tan 2θ = 2|b|/(d - a)`, `|θ| ≤ π/4`.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<EigenSystem> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = CMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }

    let tol = OFF_DIAG_REL_TOL * frobenius(&a);
    let skip = tol / n as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let b_abs = b.norm();
                if b_abs <= skip {
                    continue;
                }
                let phase = b / b_abs;
                let diff = a[(q, q)].re - a[(p, p)].re;
                let theta = if diff == 0.0 {
                    std::f64::consts::FRAC_PI_4
                } else {
                    0.5 * (2.0 * b_abs / diff).atan()
                };
                let (s, c) = theta.sin_cos();
                // J restricted to (p, q): [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]
                let ph = phase.conj();
                let j_pp = C64::new(c, 0.0);
                let j_pq = C64::new(s, 0.0);
                let j_qp = -ph * s;
                let j_qq = ph * c;
                rotate(&mut a, &mut v, p, q, [j_pp, j_pq, j_qp, j_qq]);
            }
        }
    }
    if !converged && off_diagonal(&a) > tol {
        return Err(Error::Convergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        let mut best = 0;
        let mut best_abs = -1.0;
        for i in 0..n {
            let m = v[(i, k)].norm();
            if m > best_abs * (1.0 + 1e-12) {
                best = i;
                best_abs = m;
            }
        }
        let fix = v[(best, k)].conj() / best_abs;
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * fix;
        }
        vectors[(best, col)] = C64::new(best_abs, 0.0);
    }
    Ok(EigenSystem { values, vectors })
}

/// A ← J†·A·J and V ← V·J for the plane rotation J acting on (p, q).
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, j: [C64; 4]) {
    let [j_pp, j_pq, j_qp, j_qq] = j;
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(rng.gen_range(-5.0..5.0), 0.0);
            for j in (i + 1)..n {
                let z = C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        HermitianMatrix::new(m).unwrap()
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let h = HermitianMatrix::new(CMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap();
        let es = hermitian_eig(&h).unwrap();
        assert_eq!(es.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(es.vector(0)[1], C64::new(1.0, 0.0));
    }

    #[test]
    fn symmetric_two_by_two() {
        let a = 0.7;
        let h = HermitianMatrix::from_real_rows(&[[0.0, a], [a, 0.0]]).unwrap();
        let es = hermitian_eig(&h).unwrap();
        assert_abs_diff_eq!(es.values[0], -a, epsilon = 1e-15);
        assert_abs_diff_eq!(es.values[1], a, epsilon = 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let h = HermitianMatrix::new(CMatrix::zeros(4)).unwrap();
        let es = hermitian_eig(&h).unwrap();
        assert_eq!(es.values, vec![0.0; 4]);
        assert_eq!(es.vectors, CMatrix::identity(4));
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=16 {
            let h = random_hermitian(&mut rng, n);
            let es = hermitian_eig(&h).unwrap();
            let scale = h.matrix().max_abs().max(1.0);
            assert!((&es.reconstruct() - h.matrix()).max_abs() <= 1e-12 * scale, "n = {n}");
            assert!(es.vectors.unitarity_error() <= 1e-12, "n = {n}");
            assert!(es.values.windows(2).all(|w| w[0] <= w[1]));
            let tr = h.matrix().trace().re;
            let sum: f64 = es.values.iter().sum();
            assert!((sum - tr).abs() <= 1e-10 * tr.abs().max(1.0));
        }
    }

    #[test]
    fn phase_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(&mut rng, 6);
        let es = hermitian_eig(&h).unwrap();
        for k in 0..6 {
            let col = es.vector(k);
            let (imax, zmax) = col
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .unwrap();
            assert_eq!(zmax.im, 0.0, "column {k} index {imax}");
            assert!(zmax.re > 0.0);
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // two-fold degenerate eigenvalue 1 with a rotated basis
        let s = 0.5f64.sqrt();
        let u = CMatrix::from_real_rows(&[[s, s, 0.0], [s, -s, 0.0], [0.0, 0.0, 1.0]]);
        let d = CMatrix::from_diag(&[1.0, 1.0, 4.0]);
        let h = HermitianMatrix::new(&(&u * &d) * &u.adjoint()).unwrap();
        let es = hermitian_eig(&h).unwrap();
        assert_abs_diff_eq!(es.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(es.values[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(es.values[2], 4.0, epsilon = 1e-14);
    }
}
